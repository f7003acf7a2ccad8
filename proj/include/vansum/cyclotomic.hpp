#pragma once

// The map phi: ZG -> Z[zeta_m], z |-> zeta_m, cyclotomic polynomials, kernel
// membership and the constructive kernel decompositions.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vansum/checked.hpp"
#include "vansum/groupring.hpp"

namespace vansum {

/// Integer polynomial, lowest degree first, no trailing zeros (the zero
/// polynomial has no coefficients).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Coeff> coeffs);

  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Coeff leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  Coeff operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Coeff> coeffs_;
};

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);

/// Division by a monic divisor: {quotient, remainder}.
std::pair<IntPolynomial, IntPolynomial> poly_divmod_monic(const IntPolynomial& a, const IntPolynomial& monic);

/// Ascending text form, e.g. "1 - X + X^3 - X^4 + X^5 - X^7 + X^8".
std::string to_string(const IntPolynomial& p);
nlohmann::json to_json(const IntPolynomial& p);

std::int64_t euler_totient(std::int64_t m);

/// Phi_m, monic of degree euler_totient(m). Cached per m; thread-safe.
const IntPolynomial& cyclotomic_poly(int m);

/// Coordinates of phi(x) in the power basis 1, zeta, ..., zeta^{totient-1}.
struct CyclotomicInteger {
  int m = 1;
  std::vector<Coeff> coords;

  bool is_zero() const;
  friend bool operator==(const CyclotomicInteger&, const CyclotomicInteger&) = default;
};

std::string to_string(const CyclotomicInteger& v);

CyclotomicInteger phi_map(const GroupRingElement& x);
bool in_kernel(const GroupRingElement& x);

/// Rows X^k mod Phi_m for 0 <= k < m, narrowed to int32 for the SIMD kernels.
/// phi_map(x) = sum_k x_k * row(k).
class ResidueTable {
 public:
  explicit ResidueTable(int m);

  int modulus() const { return m_; }
  std::size_t width() const { return width_; }
  std::span<const std::int32_t> row(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * width_, width_};
  }
  /// Largest |entry| over all rows.
  std::int32_t max_abs_entry() const { return max_abs_; }

 private:
  int m_;
  std::size_t width_;
  std::int32_t max_abs_ = 0;
  std::vector<std::int32_t> data_;
};

/// Cached per m; thread-safe.
const ResidueTable& residue_table(int m);

// ---------------------------------------------------------------------------
// Kernel certificates.

class NotInKernel : public std::invalid_argument {
 public:
  explicit NotInKernel(CyclotomicInteger witness);
  const CyclotomicInteger& witness() const { return witness_; }

 private:
  CyclotomicInteger witness_;
};

/// x = sum_i parts[i] * sigma(P_i), P_i the subgroup of order primes[i].
struct KernelCertificate {
  int m = 1;
  std::vector<std::int64_t> primes;
  std::vector<GroupRingElement> parts;

  GroupRingElement recombine() const;
};

nlohmann::json to_json(const KernelCertificate& cert);

/// Some certificate for x in ker(phi). Throws NotInKernel otherwise, and
/// std::invalid_argument for m = 1.
KernelCertificate kernel_decompose(const GroupRingElement& x);

struct CosetPart {
  int coset_exponent = 0;
  /// Supported on G0 (multiples of m / rad(m)); nonnegative, in ker(phi).
  GroupRingElement part;
};

/// Splits x in NG ∩ ker(phi) along the cosets z^j G0, G0 the subgroup of
/// order rad(m), 0 <= j < m / rad(m). Only cosets meeting the support are
/// returned, ordered by j. x = sum_j rotate(part_j, j).
std::vector<CosetPart> coset_split(const GroupRingElement& x);

struct SquarefreeReduction {
  int shift = 0;
  /// Element over modulus rad(m).
  GroupRingElement reduced;
};

/// For x supported on a single coset of G0 (in particular for minimal x):
/// rotate(x, shift) lies in G0, collapsed to modulus rad(m) via
/// k -> k / (m / rad(m)).
SquarefreeReduction squarefree_reduce(const GroupRingElement& x);

/// Embeds an element over m0 into modulus m (m0 | m) via k -> k * (m / m0).
GroupRingElement embed(const GroupRingElement& x, int m);

struct TwoPrimeDecomposition {
  /// x = a * sigma(P_2) + b * sigma(P_1) (r = 2), or x = a * sigma(P_1),
  /// b = 0 (r = 1). a, b are nonnegative; for square-free m, a is supported
  /// on P_1 and b on P_2. In general both are supported on T * P_1 and
  /// T * P_2 with T = {z^j : 0 <= j < m / rad(m)}.
  GroupRingElement a;
  GroupRingElement b;
};

TwoPrimeDecomposition two_prime_decompose(const GroupRingElement& x);

enum class ConstrainedVerdict { feasible, infeasible };

struct ConstrainedResult {
  ConstrainedVerdict verdict = ConstrainedVerdict::infeasible;
  /// Present iff feasible; every part has augmentation >= 0.
  std::optional<KernelCertificate> certificate;
  /// Augmentation vectors (e_1, ..., e_r) >= 0 with sum e_i p_i = eps(x)
  /// that were examined.
  std::vector<std::vector<std::int64_t>> candidates;
};

/// Decides whether x in NG ∩ ker(phi) admits a certificate with all
/// eps(z_i) >= 0, and produces one when it does.
ConstrainedResult constrained_decompose(const GroupRingElement& x);

// ---------------------------------------------------------------------------
// Numeric oracle.

struct ComplexApprox {
  double re = 0;
  double im = 0;
  double abs = 0;
  /// |true value - (re + i im)| <= error_bound, and likewise for abs.
  double error_bound = 0;
  int precision_bits = 0;
  std::string re_text;
  std::string im_text;

  bool certainly_nonzero() const { return abs > error_bound; }
};

/// sum_k x_k exp(2 pi i k / m) in MPFR at the given precision (>= 64).
ComplexApprox complex_eval(const GroupRingElement& x, int precision_bits = 128);

}  // namespace vansum
