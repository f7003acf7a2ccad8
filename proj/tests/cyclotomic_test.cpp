#include <gtest/gtest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "support/oracles.hpp"
#include "vansum/cyclotomic.hpp"

namespace vansum {
namespace {

GroupRingElement from(const std::vector<std::int64_t>& v) { return {static_cast<int>(v.size()), v}; }

GroupRingElement random_element(int m, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Coeff> c(static_cast<std::size_t>(m));
  for (auto& v : c) v = d(rng);
  return {m, std::move(c)};
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic_poly(1).coeffs(), (std::vector<Coeff>{-1, 1}));
  EXPECT_EQ(cyclotomic_poly(5).coeffs(), (std::vector<Coeff>{1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic_poly(15).coeffs(), (std::vector<Coeff>{1, -1, 0, 1, -1, 1, 0, -1, 1}));
  EXPECT_EQ(to_string(cyclotomic_poly(15)), "1 - X + X^3 - X^4 + X^5 - X^7 + X^8");
  EXPECT_EQ(to_string(cyclotomic_poly(1)), "-1 + X");
  EXPECT_THROW(cyclotomic_poly(0), std::invalid_argument);
}

TEST(Cyclotomic, MatchesMoebiusProduct) {
  for (int m = 1; m <= 120; ++m) EXPECT_EQ(cyclotomic_poly(m).coeffs(), oracle::cyclotomic_mobius(m)) << "m=" << m;
}

TEST(Cyclotomic, DivisorProductIsXmMinusOne) {
  for (int m = 1; m <= 200; ++m) {
    IntPolynomial prod({1});
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) prod = poly_mul(prod, cyclotomic_poly(d));
    std::vector<Coeff> expect(static_cast<std::size_t>(m) + 1, 0);
    expect[0] = -1;
    expect[static_cast<std::size_t>(m)] = 1;
    EXPECT_EQ(prod.coeffs(), expect) << "m=" << m;
    EXPECT_EQ(cyclotomic_poly(m).degree(), euler_totient(m));
  }
}

TEST(PhiMap, Examples) {
  EXPECT_TRUE(phi_map(parse_element("z^0 + z^2", 4)).is_zero());
  for (int m : {6, 12, 30, 60})
    for (auto p : factorize(m).primes) EXPECT_TRUE(in_kernel(sigma_subgroup(m, static_cast<int>(p))));
  EXPECT_EQ(phi_map(GroupRingElement::monomial(5, 1)).coords, (std::vector<Coeff>{0, 1, 0, 0}));
  EXPECT_FALSE(in_kernel(GroupRingElement::one(30)));
  EXPECT_TRUE(in_kernel(parse_element("z^5 + z^6 + z^12 + z^18 + z^24 + z^25", 30)));
  EXPECT_EQ(phi_map(GroupRingElement::monomial(7, 0)).coords, (std::vector<Coeff>{1, 0, 0, 0, 0, 0}));
}

TEST(PhiMapProperty, RingHomomorphismAndOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 60);
    const auto x = random_element(m, 8, rng);
    const auto y = random_element(m, 8, rng);
    const auto px = phi_map(x);
    const auto py = phi_map(y);
    const auto sum = phi_map(add(x, y));
    for (std::size_t i = 0; i < sum.coords.size(); ++i) EXPECT_EQ(sum.coords[i], px.coords[i] + py.coords[i]);
    // phi(xy) = phi(x) phi(y) mod Phi_m.
    const auto prod = poly_mul(IntPolynomial(px.coords), IntPolynomial(py.coords));
    const auto rem = poly_divmod_monic(prod, cyclotomic_poly(m)).second;
    std::vector<Coeff> expect(static_cast<std::size_t>(euler_totient(m)), 0);
    for (std::size_t i = 0; i < rem.coeffs().size(); ++i) expect[i] = rem.coeffs()[i];
    EXPECT_EQ(phi_map(mul(x, y)).coords, expect);
    EXPECT_EQ(px.coords, oracle::reduce(x.coeffs(), m));
    const auto k = static_cast<std::int64_t>(rng() % 200);
    EXPECT_EQ(in_kernel(x), in_kernel(rotate(x, k)));
  }
}

TEST(ResidueTable, RowsMatchPhiMap) {
  for (int m = 1; m <= 60; ++m) {
    const auto& t = residue_table(m);
    ASSERT_EQ(t.width(), static_cast<std::size_t>(euler_totient(m)));
    for (int k = 0; k < m; ++k) {
      const auto row = t.row(k);
      const auto expect = phi_map(GroupRingElement::monomial(m, k)).coords;
      ASSERT_EQ(std::vector<Coeff>(row.begin(), row.end()), expect) << "m=" << m << " k=" << k;
    }
  }
}

TEST(KernelDecompose, Examples) {
  const auto s = sigma_subgroup(30, 2);
  const auto cert = kernel_decompose(s);
  EXPECT_EQ(cert.recombine(), s);
  EXPECT_EQ(cert.primes, (std::vector<std::int64_t>{2, 3, 5}));
  const auto r = rotate(sigma_subgroup(30, 3), 7);
  EXPECT_EQ(kernel_decompose(r).recombine(), r);
  const auto xg = parse_element("z^5 + z^6 + z^12 + z^18 + z^24 + z^25", 30);
  EXPECT_EQ(kernel_decompose(xg).recombine(), xg);
  EXPECT_THROW(kernel_decompose(GroupRingElement::one(30)), NotInKernel);
  const auto j = to_json(cert);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["prime"], 2);
}

TEST(KernelDecomposeProperty, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 59);
    const auto x = from(oracle::random_kernel_element(m, 3, rng));
    ASSERT_TRUE(in_kernel(x));
    const auto cert = kernel_decompose(x);
    ASSERT_EQ(cert.recombine(), x) << "m=" << m;
  }
}

TEST(CosetSplit, Examples) {
  auto parts = coset_split(parse_element("z^0 + z^2", 4));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].coset_exponent, 0);
  EXPECT_EQ(parts[0].part, parse_element("z^0 + z^2", 4));

  parts = coset_split(parse_element("z^1 + z^7", 12));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].coset_exponent, 1);
  EXPECT_EQ(parts[0].part, parse_element("z^0 + z^6", 12));

  const auto x = parse_element("z^0 + z^6 + z^1 + z^7", 12);
  parts = coset_split(x);
  ASSERT_EQ(parts.size(), 2u);
  GroupRingElement sum(12);
  for (const auto& p : parts) {
    EXPECT_TRUE(in_kernel(p.part));
    EXPECT_TRUE(is_nonnegative(p.part));
    sum = add(sum, rotate(p.part, p.coset_exponent));
  }
  EXPECT_EQ(sum, x);
  EXPECT_THROW(coset_split(GroupRingElement::one(12)), NotInKernel);
}

TEST(CosetSplitProperty, RecombinesOnSumsOfRotatedGenerators) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 70);
    const auto primes = factorize(m).primes;
    GroupRingElement x(m);
    for (int i = 0; i < 4; ++i)
      x = add(x, rotate(sigma_subgroup(m, static_cast<int>(primes[rng() % primes.size()])), static_cast<std::int64_t>(rng() % m)));
    GroupRingElement sum(m);
    for (const auto& p : coset_split(x)) {
      EXPECT_TRUE(in_kernel(p.part));
      EXPECT_TRUE(is_nonnegative(p.part));
      sum = add(sum, rotate(p.part, p.coset_exponent));
    }
    EXPECT_EQ(sum, x);
  }
}

TEST(SquarefreeReduce, Examples) {
  auto r = squarefree_reduce(parse_element("z^0 + z^2", 4));
  EXPECT_EQ(r.shift, 0);
  EXPECT_EQ(r.reduced, parse_element("z^0 + z^1", 2));

  r = squarefree_reduce(parse_element("z^1 + z^7", 12));
  EXPECT_EQ(r.shift, 11);
  EXPECT_EQ(r.reduced, sigma_subgroup(6, 2));

  const auto x = rotate(sigma_subgroup(18, 3), 1);
  r = squarefree_reduce(x);
  EXPECT_EQ(r.reduced, sigma_subgroup(6, 3));
  EXPECT_TRUE(in_kernel(r.reduced));
  EXPECT_EQ(rotate(embed(r.reduced, 18), -r.shift), x);
}

TEST(TwoPrime, Examples) {
  auto d = two_prime_decompose(sigma_subgroup(6, 6));
  const auto s1 = sigma_subgroup(6, 2);
  const auto s2 = sigma_subgroup(6, 3);
  EXPECT_EQ(add(mul(d.a, s2), mul(d.b, s1)), sigma_subgroup(6, 6));
  const bool first = d.a == s1 && d.b.is_zero();
  const bool second = d.a.is_zero() && d.b == s2;
  EXPECT_TRUE(first || second);

  const auto x4 = parse_element("2*z^0 + 2*z^2", 4);
  d = two_prime_decompose(x4);
  EXPECT_EQ(d.a, GroupRingElement::monomial(4, 0, 2));
  EXPECT_TRUE(d.b.is_zero());

  const auto x12 = parse_element("z^0 + z^6 + z^4 + z^10", 12);
  d = two_prime_decompose(x12);
  EXPECT_EQ(add(mul(d.a, sigma_subgroup(12, 3)), mul(d.b, sigma_subgroup(12, 2))), x12);
  EXPECT_TRUE(is_nonnegative(d.a));
  EXPECT_TRUE(is_nonnegative(d.b));
  EXPECT_THROW(two_prime_decompose(sigma_subgroup(30, 2)), std::domain_error);
}

TEST(TwoPrimeProperty, SupportsAndRecombination) {
  std::mt19937_64 rng(3);
  const std::vector<int> moduli{6, 10, 14, 15, 21, 35, 12, 18, 20, 36, 45, 8, 9, 25};
  for (int trial = 0; trial < 300; ++trial) {
    const int m = moduli[rng() % moduli.size()];
    const auto f = factorize(m);
    GroupRingElement x(m);
    const int pieces = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < pieces; ++i)
      x = add(x, rotate(sigma_subgroup(m, static_cast<int>(f.primes[rng() % f.size()])), static_cast<std::int64_t>(rng() % m)));
    const auto d = two_prime_decompose(x);
    ASSERT_TRUE(is_nonnegative(d.a));
    ASSERT_TRUE(is_nonnegative(d.b));
    if (f.size() == 1) {
      EXPECT_EQ(mul(d.a, sigma_subgroup(m, static_cast<int>(f.primes[0]))), x);
      continue;
    }
    EXPECT_EQ(add(mul(d.a, sigma_subgroup(m, static_cast<int>(f.primes[1]))),
                  mul(d.b, sigma_subgroup(m, static_cast<int>(f.primes[0])))),
              x);
    // Supports lie in T P_1 and T P_2, with T = {z^j : j < m / rad(m)}.
    const int t = m / static_cast<int>(f.radical());
    const int step1 = m / static_cast<int>(f.primes[0]);
    const int step2 = m / static_cast<int>(f.primes[1]);
    for (int k : d.a.support()) EXPECT_LT(k % step1, t) << "a support " << k << " m=" << m;
    for (int k : d.b.support()) EXPECT_LT(k % step2, t) << "b support " << k << " m=" << m;
  }
}

TEST(Constrained, Examples) {
  const auto x = add(sigma_subgroup(30, 2), sigma_subgroup(30, 3));
  auto r = constrained_decompose(x);
  ASSERT_EQ(r.verdict, ConstrainedVerdict::feasible);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->recombine(), x);
  for (const auto& z : r.certificate->parts) EXPECT_GE(augmentation(z), 0);

  r = constrained_decompose(GroupRingElement(30));
  ASSERT_EQ(r.verdict, ConstrainedVerdict::feasible);
  for (const auto& z : r.certificate->parts) EXPECT_TRUE(z.is_zero());

  EXPECT_THROW(constrained_decompose(GroupRingElement::one(30)), NotInKernel);
  EXPECT_THROW(constrained_decompose(parse_element("-z^0 - z^15", 30)), std::invalid_argument);
}

TEST(Constrained, CandidateAugmentationsForTheWeightSixElement) {
  const auto x = parse_element("z^5 + z^6 + z^12 + z^18 + z^24 + z^25", 30);
  const auto r = constrained_decompose(x);
  auto c = r.candidates;
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<std::vector<std::int64_t>>{{0, 2, 0}, {3, 0, 0}}));
  if (r.certificate) {
    EXPECT_EQ(r.certificate->recombine(), x);
    for (const auto& z : r.certificate->parts) EXPECT_GE(augmentation(z), 0);
  }
}

TEST(ComplexEval, Examples) {
  auto v = complex_eval(sigma_subgroup(6, 2));
  EXPECT_LE(v.abs, v.error_bound);
  for (int m : {1, 7, 30}) {
    v = complex_eval(GroupRingElement::one(m));
    EXPECT_NEAR(v.re, 1.0, v.error_bound);
    EXPECT_NEAR(v.im, 0.0, v.error_bound);
  }
  v = complex_eval(parse_element("z^5 + z^6 + z^12 + z^18 + z^24 + z^25", 30));
  EXPECT_LE(v.abs, v.error_bound);
  EXPECT_FALSE(v.certainly_nonzero());
  EXPECT_THROW(complex_eval(GroupRingElement::one(5), 32), std::invalid_argument);
}

TEST(ComplexEvalProperty, AgreesWithExactKernelTest) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coeff(-10, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 60);
    GroupRingElement x(m);
    if (trial % 2 == 0 && m > 1) {
      x = from(oracle::random_kernel_element(m, 1, rng));
    } else {
      const int terms = 1 + static_cast<int>(rng() % 12);
      for (int i = 0; i < terms; ++i)
        x = add(x, GroupRingElement::monomial(m, static_cast<std::int64_t>(rng() % m), coeff(rng)));
    }
    const auto v = complex_eval(x, 128);
    if (in_kernel(x))
      EXPECT_LE(v.abs, v.error_bound) << to_string(x);
    else
      EXPECT_GT(v.abs, 2 * v.error_bound) << to_string(x);
  }
}

}  // namespace
}  // namespace vansum
