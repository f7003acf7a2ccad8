// Constructive kernel decompositions: integer certificates over the
// generators z^a sigma(P_i), coset splitting, square-free reduction, the
// two-prime nonnegative decomposition and the sign-constrained search.

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include <nlohmann/json.hpp>

#include "detail/cache.hpp"
#include "vansum/cyclotomic.hpp"
#include "vansum/lattice.hpp"

namespace vansum {

namespace {

using lattice::Integer;
using lattice::Vector;

void require_kernel(const GroupRingElement& x) {
  auto image = phi_map(x);
  if (!image.is_zero()) throw NotInKernel(std::move(image));
}

void require_nonnegative_kernel(const GroupRingElement& x, const char* op) {
  if (!is_nonnegative(x)) throw std::invalid_argument(std::string(op) + ": element has a negative coefficient");
  require_kernel(x);
}

Coeff to_coeff(const Integer& v) {
  if (!v.fits_slong_p()) throw OverflowError("certificate coefficient exceeds 64 bits");
  return static_cast<Coeff>(v.get_si());
}

// Generator matrix for ker(phi): column i*m + a is z^a sigma(P_i). Also
// holds the integer kernel of that matrix and its image under the
// augmentation map, for the sign-constrained search.
struct KernelSystem {
  explicit KernelSystem(int m);

  int m;
  Factorization factors;
  lattice::HermiteSolver generators;
  std::vector<Vector> relations;            // integer kernel of the generator matrix
  lattice::ColumnMatrix relation_augmentation;  // r x |relations|
  lattice::HermiteSolver augmentation_solver;

  KernelCertificate certificate(const Vector& c) const;
  std::vector<std::int64_t> augmentations(const Vector& c) const;

 private:
  static lattice::ColumnMatrix build(int m, const Factorization& f);
};

lattice::ColumnMatrix KernelSystem::build(int m, const Factorization& f) {
  lattice::ColumnMatrix a;
  a.rows = static_cast<std::size_t>(m);
  for (auto p : f.primes) {
    const auto sigma = sigma_subgroup(m, static_cast<int>(p));
    for (int shift = 0; shift < m; ++shift) {
      const auto col = rotate(sigma, shift);
      Vector v(a.rows);
      for (std::size_t k = 0; k < a.rows; ++k) v[k] = col[k];
      a.columns.push_back(std::move(v));
    }
  }
  return a;
}

KernelSystem::KernelSystem(int modulus)
    : m(modulus),
      factors(factorize(modulus)),
      generators(build(modulus, factors)),
      relations(generators.kernel_basis()),
      relation_augmentation([&] {
        lattice::ColumnMatrix a;
        a.rows = factors.size();
        for (const auto& rel : relations) {
          Vector v(a.rows, 0);
          for (std::size_t i = 0; i < a.rows; ++i)
            for (int s = 0; s < m; ++s) v[i] += rel[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(s)];
          a.columns.push_back(std::move(v));
        }
        return a;
      }()),
      augmentation_solver(relation_augmentation) {}

KernelCertificate KernelSystem::certificate(const Vector& c) const {
  KernelCertificate cert;
  cert.m = m;
  cert.primes = factors.primes;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<Coeff> coeffs(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s)
      coeffs[static_cast<std::size_t>(s)] = to_coeff(c[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(s)]);
    cert.parts.emplace_back(m, std::move(coeffs));
  }
  return cert;
}

std::vector<std::int64_t> KernelSystem::augmentations(const Vector& c) const {
  std::vector<std::int64_t> e;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Integer s = 0;
    for (int k = 0; k < m; ++k) s += c[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)];
    e.push_back(to_coeff(s));
  }
  return e;
}

const KernelSystem& kernel_system(int m) {
  static std::map<int, std::unique_ptr<KernelSystem>> cache;
  static std::mutex mu;
  return detail::cached(cache, mu, m, [m] { return KernelSystem(m); });
}

Vector to_vector(const GroupRingElement& x) {
  Vector b(x.coeffs().size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = x[k];
  return b;
}

// Collapse an element supported on G0 = <z^step> to modulus m / step.
GroupRingElement collapse(const GroupRingElement& x, int step) {
  const int m0 = x.modulus() / step;
  std::vector<Coeff> c(static_cast<std::size_t>(m0), 0);
  for (int k = 0; k < x.modulus(); ++k) {
    const Coeff v = x[static_cast<std::size_t>(k)];
    if (v == 0) continue;
    if (k % step != 0) throw std::logic_error("collapse: element not supported on the subgroup");
    c[static_cast<std::size_t>(k / step)] = v;
  }
  return {m0, std::move(c)};
}

void enumerate_augmentations(const std::vector<std::int64_t>& primes, std::size_t i, std::int64_t remaining,
                             std::vector<std::int64_t>& current, std::vector<std::vector<std::int64_t>>& out) {
  if (i + 1 == primes.size()) {
    if (remaining % primes[i] != 0) return;
    current[i] = remaining / primes[i];
    out.push_back(current);
    return;
  }
  for (std::int64_t e = 0; e * primes[i] <= remaining; ++e) {
    current[i] = e;
    enumerate_augmentations(primes, i + 1, remaining - e * primes[i], current, out);
  }
}

}  // namespace

NotInKernel::NotInKernel(CyclotomicInteger witness)
    : std::invalid_argument("element is not in ker(phi): phi(x) = " + to_string(witness)), witness_(std::move(witness)) {}

GroupRingElement KernelCertificate::recombine() const {
  GroupRingElement x(m);
  for (std::size_t i = 0; i < parts.size(); ++i)
    x = add(x, mul(parts[i], sigma_subgroup(m, static_cast<int>(primes[i]))));
  return x;
}

nlohmann::json to_json(const KernelCertificate& cert) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.parts.size(); ++i) {
    auto j = to_json(cert.parts[i]);
    j["prime"] = cert.primes[i];
    out.push_back(std::move(j));
  }
  return out;
}

KernelCertificate kernel_decompose(const GroupRingElement& x) {
  if (x.modulus() < 2) throw std::invalid_argument("kernel_decompose: modulus must be > 1");
  require_kernel(x);
  const auto& sys = kernel_system(x.modulus());
  auto c = sys.generators.solve(to_vector(x));
  if (!c) throw std::logic_error("kernel_decompose: kernel element outside the span of sigma(P_i)");
  auto cert = sys.certificate(*c);
  if (cert.recombine() != x) throw std::logic_error("kernel_decompose: certificate does not recombine");
  return cert;
}

std::vector<CosetPart> coset_split(const GroupRingElement& x) {
  require_nonnegative_kernel(x, "coset_split");
  const int m = x.modulus();
  const int step = m / static_cast<int>(factorize(m).radical());
  std::vector<CosetPart> parts;
  for (int j = 0; j < step; ++j) {
    std::vector<Coeff> c(static_cast<std::size_t>(m), 0);
    bool any = false;
    for (int k = j; k < m; k += step) {
      c[static_cast<std::size_t>(k - j)] = x[static_cast<std::size_t>(k)];
      any = any || x[static_cast<std::size_t>(k)] != 0;
    }
    if (!any) continue;
    GroupRingElement part(m, std::move(c));
    if (!in_kernel(part)) throw std::logic_error("coset_split: coset part left the kernel");
    parts.push_back({j, std::move(part)});
  }
  return parts;
}

SquarefreeReduction squarefree_reduce(const GroupRingElement& x) {
  const auto parts = coset_split(x);
  if (parts.size() != 1)
    throw std::invalid_argument("squarefree_reduce: element meets " + std::to_string(parts.size()) +
                                " cosets of G0; a minimal element meets exactly one");
  const int m = x.modulus();
  const int step = m / static_cast<int>(factorize(m).radical());
  const int shift = (m - parts.front().coset_exponent) % m;
  return {shift, collapse(parts.front().part, step)};
}

GroupRingElement embed(const GroupRingElement& x, int m) {
  const int m0 = x.modulus();
  if (m < 1 || m % m0 != 0)
    throw std::invalid_argument("embed: " + std::to_string(m0) + " does not divide " + std::to_string(m));
  const int step = m / m0;
  std::vector<Coeff> c(static_cast<std::size_t>(m), 0);
  for (int k = 0; k < m0; ++k) c[static_cast<std::size_t>(k * step)] = x[static_cast<std::size_t>(k)];
  return {m, std::move(c)};
}

TwoPrimeDecomposition two_prime_decompose(const GroupRingElement& x) {
  const int m = x.modulus();
  const auto f = factorize(m);
  if (f.size() == 0) throw std::invalid_argument("two_prime_decompose: modulus must be > 1");
  if (f.size() > 2)
    throw std::domain_error("two_prime_decompose: unsupported for " + std::to_string(f.size()) + " distinct primes");
  require_nonnegative_kernel(x, "two_prime_decompose");

  const int m0 = static_cast<int>(f.radical());
  const int step = m / m0;
  GroupRingElement a(m);
  GroupRingElement b(m);
  for (const auto& [j, part] : coset_split(x)) {
    const auto q = collapse(part, step);
    GroupRingElement a0(m0);
    GroupRingElement b0(m0);
    if (f.size() == 1) {
      // N(Z/p) ∩ ker(phi) = N sigma(Z/p): all coefficients agree.
      const Coeff c = q[0];
      if (q != scale(sigma_subgroup(m0, m0), c)) throw std::logic_error("two_prime_decompose: r = 1 part not constant");
      a0 = GroupRingElement::monomial(m0, 0, c);
    } else {
      const int p1 = static_cast<int>(f.primes[0]);
      const int p2 = static_cast<int>(f.primes[1]);
      // u = t*p2 + i*p1 with t*p2 in P_1 and i*p1 in P_2; x_i in N P_1.
      std::vector<std::vector<Coeff>> rows(static_cast<std::size_t>(p2), std::vector<Coeff>(static_cast<std::size_t>(p1)));
      std::vector<Coeff> aug(static_cast<std::size_t>(p2), 0);
      for (int i = 0; i < p2; ++i)
        for (int t = 0; t < p1; ++t) {
          const Coeff v = q[static_cast<std::size_t>((t * p2 + i * p1) % m0)];
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = v;
          aug[static_cast<std::size_t>(i)] = checked_add(aug[static_cast<std::size_t>(i)], v);
        }
      const auto base = static_cast<std::size_t>(std::min_element(aug.begin(), aug.end()) - aug.begin());
      std::vector<Coeff> ac(static_cast<std::size_t>(m0), 0);
      std::vector<Coeff> bc(static_cast<std::size_t>(m0), 0);
      for (int t = 0; t < p1; ++t) ac[static_cast<std::size_t>(t * p2)] = rows[base][static_cast<std::size_t>(t)];
      for (int i = 0; i < p2; ++i) {
        // x_i - x_base = z_i sigma(P_1) with z_i = (eps(x_i) - eps(x_base)) / p1 >= 0.
        const Coeff diff = checked_sub(aug[static_cast<std::size_t>(i)], aug[base]);
        if (diff % p1 != 0) throw std::logic_error("two_prime_decompose: augmentation gap not divisible by p1");
        const Coeff zi = diff / p1;
        for (int t = 0; t < p1; ++t)
          if (checked_sub(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                          rows[base][static_cast<std::size_t>(t)]) != zi)
            throw std::logic_error("two_prime_decompose: rows differ by more than a multiple of sigma(P_1)");
        bc[static_cast<std::size_t>(i * p1)] = zi;
      }
      a0 = GroupRingElement(m0, std::move(ac));
      b0 = GroupRingElement(m0, std::move(bc));
    }
    a = add(a, rotate(embed(a0, m), j));
    b = add(b, rotate(embed(b0, m), j));
  }

  const auto s1 = sigma_subgroup(m, static_cast<int>(f.primes[0]));
  const auto rebuilt = f.size() == 1 ? mul(a, s1)
                                     : add(mul(a, sigma_subgroup(m, static_cast<int>(f.primes[1]))), mul(b, s1));
  if (rebuilt != x) throw std::logic_error("two_prime_decompose: decomposition does not recombine");
  return {std::move(a), std::move(b)};
}

ConstrainedResult constrained_decompose(const GroupRingElement& x) {
  if (x.modulus() < 2) throw std::invalid_argument("constrained_decompose: modulus must be > 1");
  require_nonnegative_kernel(x, "constrained_decompose");
  const auto& sys = kernel_system(x.modulus());
  const auto base = sys.generators.solve(to_vector(x));
  if (!base) throw std::logic_error("constrained_decompose: kernel element outside the span of sigma(P_i)");

  // Every certificate is base + sum_k w_k relations[k]; its augmentation
  // vector ranges over A(base) + span_Z(A(relations)). A certificate with
  // prescribed nonnegative augmentations e exists iff e - A(base) lies in
  // that lattice; sum_i e_i p_i = eps(x) leaves finitely many e to test.
  ConstrainedResult result;
  std::vector<std::int64_t> current(sys.factors.size());
  enumerate_augmentations(sys.factors.primes, 0, augmentation(x), current, result.candidates);
  const auto base_aug = sys.augmentations(*base);
  for (const auto& e : result.candidates) {
    Vector rhs(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) rhs[i] = Integer(static_cast<long>(e[i] - base_aug[i]));
    auto w = sys.augmentation_solver.solve(rhs);
    if (!w) continue;
    Vector c = *base;
    for (std::size_t k = 0; k < w->size(); ++k) {
      if (sgn((*w)[k]) == 0) continue;
      for (std::size_t t = 0; t < c.size(); ++t) c[t] += (*w)[k] * sys.relations[k][t];
    }
    auto cert = sys.certificate(c);
    if (cert.recombine() != x) throw std::logic_error("constrained_decompose: certificate does not recombine");
    for (std::size_t i = 0; i < cert.parts.size(); ++i)
      if (augmentation(cert.parts[i]) != e[i]) throw std::logic_error("constrained_decompose: augmentation mismatch");
    result.verdict = ConstrainedVerdict::feasible;
    result.certificate = std::move(cert);
    return result;
  }
  result.verdict = ConstrainedVerdict::infeasible;
  return result;
}

}  // namespace vansum
