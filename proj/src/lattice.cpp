#include "vansum/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace vansum::lattice {

namespace {

// col_dst -= q * col_src on both H and U.
void column_axpy(Vector& dst, const Vector& src, const Integer& q) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (sgn(src[i]) != 0) dst[i] -= q * src[i];
}

// Nearest-integer quotient, keeps remainders in (-|d|/2, |d|/2].
Integer round_div(const Integer& n, const Integer& d) {
  Integer q;
  Integer twice_n = 2 * n + d;
  Integer twice_d = 2 * d;
  mpz_fdiv_q(q.get_mpz_t(), twice_n.get_mpz_t(), twice_d.get_mpz_t());
  return q;
}

}  // namespace

HermiteSolver::HermiteSolver(ColumnMatrix a) : rows_(a.rows), h_(std::move(a.columns)) {
  const std::size_t n = h_.size();
  for (const auto& c : h_)
    if (c.size() != rows_) throw std::invalid_argument("HermiteSolver: ragged column");
  u_.assign(n, Vector(n, 0));
  for (std::size_t j = 0; j < n; ++j) u_[j][j] = 1;

  std::size_t k = 0;
  for (std::size_t i = 0; i < rows_ && k < n; ++i) {
    bool have_pivot = false;
    for (;;) {
      // Smallest nonzero magnitude among the free columns becomes the pivot.
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j) {
        if (sgn(h_[j][i]) == 0) continue;
        if (best == n || mpz_cmpabs(h_[j][i].get_mpz_t(), h_[best][i].get_mpz_t()) < 0) best = j;
      }
      if (best == n) break;
      have_pivot = true;
      if (best != k) {
        std::swap(h_[best], h_[k]);
        std::swap(u_[best], u_[k]);
      }
      bool remaining = false;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sgn(h_[j][i]) == 0) continue;
        const Integer q = round_div(h_[j][i], h_[k][i]);
        column_axpy(h_[j], h_[k], q);
        column_axpy(u_[j], u_[k], q);
        if (sgn(h_[j][i]) != 0) remaining = true;
      }
      if (!remaining) break;
    }
    if (!have_pivot) continue;
    if (sgn(h_[k][i]) < 0) {
      for (auto& v : h_[k]) v = -v;
      for (auto& v : u_[k]) v = -v;
    }
    // Reduce earlier pivot columns in this row into [0, pivot).
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(h_[l][i]) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h_[l][i].get_mpz_t(), h_[k][i].get_mpz_t());
      if (sgn(q) == 0) continue;
      column_axpy(h_[l], h_[k], q);
      column_axpy(u_[l], u_[k], q);
    }
    pivot_rows_.push_back(i);
    ++k;
  }
}

std::optional<Vector> HermiteSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("HermiteSolver::solve: right-hand side has wrong length");
  Vector residual = b;
  Vector y(rank());
  std::size_t next = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t p = pivot_rows_[j];
    for (; next < p; ++next)
      if (sgn(residual[next]) != 0) return std::nullopt;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), h_[j][p].get_mpz_t())) return std::nullopt;
    y[j] = residual[p] / h_[j][p];
    column_axpy(residual, h_[j], y[j]);
    next = p + 1;
  }
  for (; next < rows_; ++next)
    if (sgn(residual[next]) != 0) return std::nullopt;

  Vector c(cols(), 0);
  for (std::size_t j = 0; j < rank(); ++j) {
    if (sgn(y[j]) == 0) continue;
    for (std::size_t t = 0; t < c.size(); ++t)
      if (sgn(u_[j][t]) != 0) c[t] += y[j] * u_[j][t];
  }
  return c;
}

std::vector<Vector> HermiteSolver::kernel_basis() const {
  return {u_.begin() + static_cast<std::ptrdiff_t>(rank()), u_.end()};
}

Vector multiply(const ColumnMatrix& a, const Vector& v) {
  if (v.size() != a.cols()) throw std::invalid_argument("multiply: dimension mismatch");
  Vector out(a.rows, 0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < a.rows; ++i)
      if (sgn(a.columns[j][i]) != 0) out[i] += a.columns[j][i] * v[j];
  }
  return out;
}

}  // namespace vansum::lattice
