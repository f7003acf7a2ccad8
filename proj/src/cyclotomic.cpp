#include "vansum/cyclotomic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include <nlohmann/json.hpp>

#include "detail/cache.hpp"

namespace vansum {

IntPolynomial::IntPolynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Coeff> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] = checked_add(c[i + j], checked_mul(a[i], b[j]));
  return IntPolynomial(std::move(c));
}

std::pair<IntPolynomial, IntPolynomial> poly_divmod_monic(const IntPolynomial& a, const IntPolynomial& monic) {
  if (monic.is_zero() || monic.leading() != 1) throw std::invalid_argument("poly_divmod_monic: divisor must be monic");
  const int db = monic.degree();
  std::vector<Coeff> rem = a.coeffs();
  if (a.degree() < db) return {IntPolynomial{}, a};
  std::vector<Coeff> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int k = a.degree(); k >= db; --k) {
    const Coeff lead = rem[static_cast<std::size_t>(k)];
    if (lead == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = lead;
    for (int i = 0; i <= db; ++i) {
      auto& slot = rem[static_cast<std::size_t>(k - db + i)];
      slot = checked_sub(slot, checked_mul(lead, monic[static_cast<std::size_t>(i)]));
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Coeff c = p[k];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    if (k == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += k == 1 ? std::string("X") : "X^" + std::to_string(k);
  }
  return out;
}

nlohmann::json to_json(const IntPolynomial& p) { return p.coeffs(); }

std::int64_t euler_totient(std::int64_t m) {
  const auto f = factorize(m);
  std::int64_t t = m;
  for (auto p : f.primes) t = t / p * (p - 1);
  return t;
}

namespace {

IntPolynomial compute_cyclotomic(int m) {
  std::vector<Coeff> c(static_cast<std::size_t>(m) + 1, 0);
  c[0] = -1;
  c[static_cast<std::size_t>(m)] = 1;
  IntPolynomial p(std::move(c));
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = poly_divmod_monic(p, cyclotomic_poly(d));
    if (!r.is_zero()) throw std::logic_error("cyclotomic_poly: inexact division");
    p = std::move(q);
  }
  return p;
}

}  // namespace

const IntPolynomial& cyclotomic_poly(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_poly: m must be positive");
  static std::map<int, std::unique_ptr<IntPolynomial>> cache;
  static std::mutex mu;
  return detail::cached(cache, mu, m, [m] { return compute_cyclotomic(m); });
}

bool CyclotomicInteger::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Coeff c) { return c == 0; });
}

std::string to_string(const CyclotomicInteger& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.coords.size(); ++k) {
    if (k != 0) out += ", ";
    out += std::to_string(v.coords[k]);
  }
  return out + ")";
}

CyclotomicInteger phi_map(const GroupRingElement& x) {
  const int m = x.modulus();
  const auto& cyc = cyclotomic_poly(m);
  auto [q, r] = poly_divmod_monic(IntPolynomial(x.coeffs()), cyc);
  std::vector<Coeff> coords = r.coeffs();
  coords.resize(static_cast<std::size_t>(cyc.degree()), 0);
  return {m, std::move(coords)};
}

bool in_kernel(const GroupRingElement& x) { return phi_map(x).is_zero(); }

ResidueTable::ResidueTable(int m) : m_(m) {
  const auto& cyc = cyclotomic_poly(m);
  const int d = cyc.degree();
  width_ = static_cast<std::size_t>(d);
  data_.assign(width_ * static_cast<std::size_t>(m), 0);
  if (d == 0) throw std::logic_error("ResidueTable: degenerate cyclotomic polynomial");
  std::vector<Coeff> cur(width_, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < width_; ++i) {
      if (cur[i] > std::numeric_limits<std::int32_t>::max() || cur[i] < -std::numeric_limits<std::int32_t>::max())
        throw OverflowError("ResidueTable: residue entry exceeds int32");
      const auto v = static_cast<std::int32_t>(cur[i]);
      data_[static_cast<std::size_t>(k) * width_ + i] = v;
      max_abs_ = std::max(max_abs_, v < 0 ? -v : v);
    }
    // cur <- X * cur mod Phi_m
    const Coeff top = cur[width_ - 1];
    for (std::size_t i = width_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < width_; ++i) cur[i] = checked_sub(cur[i], checked_mul(top, cyc[i]));
  }
}

const ResidueTable& residue_table(int m) {
  if (m < 1) throw std::invalid_argument("residue_table: m must be positive");
  static std::map<int, std::unique_ptr<ResidueTable>> cache;
  static std::mutex mu;
  return detail::cached(cache, mu, m, [m] { return ResidueTable(m); });
}

}  // namespace vansum
