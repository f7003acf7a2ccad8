#pragma once

// Integer group ring ZG of the cyclic group G = <z> of order m.
//
// Elements are stored densely: coeffs[k] is the coefficient of z^k. All
// coefficient arithmetic is overflow-checked (see checked.hpp).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vansum/checked.hpp"

namespace vansum {

class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch(int a, int b);
};

/// Prime factorization m = p_1^a_1 ... p_r^a_r with p_1 < ... < p_r.
struct Factorization {
  std::int64_t m = 1;
  std::vector<std::int64_t> primes;
  std::vector<int> exponents;

  std::size_t size() const { return primes.size(); }
  /// Product of the distinct primes (1 for m = 1).
  std::int64_t radical() const;
  bool square_free() const { return radical() == m; }
};

/// Trial division. Throws std::invalid_argument for m < 1.
Factorization factorize(std::int64_t m);

class GroupRingElement {
 public:
  /// Zero element of Z[Z/m].
  explicit GroupRingElement(int modulus);
  GroupRingElement(int modulus, std::vector<Coeff> coeffs);

  static GroupRingElement monomial(int modulus, std::int64_t exponent, Coeff c = 1);
  static GroupRingElement one(int modulus) { return monomial(modulus, 0); }

  int modulus() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff operator[](std::size_t k) const { return coeffs_[k]; }
  bool is_zero() const;

  /// Exponents k with coeffs[k] != 0, ascending.
  std::vector<int> support() const;

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::vector<Coeff> coeffs_;
};

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement sub(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement neg(const GroupRingElement& x);
GroupRingElement scale(const GroupRingElement& x, Coeff c);
/// Cyclic convolution: coeffs[k] = sum_{i+j = k mod m} x_i y_j.
GroupRingElement mul(const GroupRingElement& x, const GroupRingElement& y);

inline GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) { return add(x, y); }
inline GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) { return sub(x, y); }
inline GroupRingElement operator-(const GroupRingElement& x) { return neg(x); }
inline GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) { return mul(x, y); }
inline GroupRingElement operator*(Coeff c, const GroupRingElement& x) { return scale(x, c); }

/// epsilon(x): sum of the coefficients.
Coeff augmentation(const GroupRingElement& x);
/// epsilon_0(x): number of nonzero coefficients.
int support_size(const GroupRingElement& x);

/// z^k * x; k is reduced mod m (negative k allowed).
GroupRingElement rotate(const GroupRingElement& x, std::int64_t k);

/// sigma(H) for the unique subgroup H of order d. Requires d | m.
GroupRingElement sigma_subgroup(int m, int d);

/// Partial order: y >= x iff every coefficient of y - x is nonnegative.
bool geq(const GroupRingElement& y, const GroupRingElement& x);
bool is_nonnegative(const GroupRingElement& x);

struct CanonicalRotation {
  int shift = 0;
  GroupRingElement canon;
};

/// Rotation representative: canon = rotate(x, shift) is the lexicographically
/// largest coefficient sequence among the m rotations of x. For nonzero x the
/// canon always has exponent 0 in its support. Ties (rotation-invariant x)
/// resolve to the smallest shift.
CanonicalRotation canonical_rotation(const GroupRingElement& x);

/// Same ordering on a raw coefficient span; returns the shift only.
int canonical_shift(std::span<const Coeff> coeffs);

/// Lexicographic comparison of coefficient sequences (same modulus).
bool lex_less(const GroupRingElement& a, const GroupRingElement& b);

// ---------------------------------------------------------------------------
// Text and JSON forms.
//
//   text:  term (('+'|'-') term)*      term := [c '*'] 'z^' k
//   e.g.   z^5 + z^6 + 2*z^12
// A leading '-' on the first term and the literal "0" are also accepted so
// that every element of ZG, not only of NG, has a printable form.
//   json:  {"m": 30, "coeffs": {"5": 1, "6": 1}}

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::string token);
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

GroupRingElement parse_element(std::string_view text, int modulus);
std::string to_string(const GroupRingElement& x);

nlohmann::json to_json(const GroupRingElement& x);
GroupRingElement element_from_json(const nlohmann::json& j);

}  // namespace vansum
