#pragma once

// Integer linear systems A c = b via column-style Hermite normal form.
//
// A U = H with U unimodular and H in column echelon form (column j has its
// first nonzero entry, positive, at pivot_rows[j]; columns past the rank are
// zero). Solving is forward substitution on H followed by c = U y. The
// trailing columns of U form a Z-basis of the integer kernel of A.

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace vansum::lattice {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

/// Dense matrix stored column-major: columns[j][i] is entry (i, j).
struct ColumnMatrix {
  std::size_t rows = 0;
  std::vector<Vector> columns;

  std::size_t cols() const { return columns.size(); }
};

class HermiteSolver {
 public:
  explicit HermiteSolver(ColumnMatrix a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return h_.size(); }
  std::size_t rank() const { return pivot_rows_.size(); }

  /// Some integer solution of A c = b, or nullopt if none exists.
  std::optional<Vector> solve(const Vector& b) const;

  /// Z-basis of {c : A c = 0}, as columns of length cols().
  std::vector<Vector> kernel_basis() const;

  const std::vector<Vector>& echelon() const { return h_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

 private:
  std::size_t rows_;
  std::vector<Vector> h_;  // columns of H
  std::vector<Vector> u_;  // columns of U
  std::vector<std::size_t> pivot_rows_;
};

/// A * v for a column-major matrix.
Vector multiply(const ColumnMatrix& a, const Vector& v);

}  // namespace vansum::lattice
