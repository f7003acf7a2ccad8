#include <gtest/gtest.h>

#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "support/oracles.hpp"
#include "vansum/census.hpp"
#include "vansum/cyclotomic.hpp"
#include "vansum/weights.hpp"

namespace vansum {
namespace {

const char* kXG30 = "z^5 + z^6 + z^12 + z^18 + z^24 + z^25";

std::set<std::vector<std::int64_t>> canon_set(const std::vector<CensusRecord>& records) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& r : records) out.insert(r.canon.coeffs());
  return out;
}

TEST(IsMinimal, Examples) {
  EXPECT_TRUE(is_minimal(sigma_subgroup(30, 5)).minimal);
  const auto twice = scale(sigma_subgroup(30, 2), 2);
  const auto w = is_minimal(twice);
  EXPECT_FALSE(w.minimal);
  ASSERT_TRUE(w.subsum);
  EXPECT_EQ(*w.subsum, sigma_subgroup(30, 2));
  EXPECT_TRUE(is_minimal(parse_element(kXG30, 30)).minimal);
  EXPECT_THROW(is_minimal(GroupRingElement::one(30)), std::invalid_argument);
  EXPECT_THROW(is_minimal(GroupRingElement(30)), std::invalid_argument);
  EXPECT_THROW(is_minimal(sigma_subgroup(17, 17)), std::invalid_argument);
  EXPECT_TRUE(is_minimal(sigma_subgroup(17, 17), true).minimal);
}

TEST(IsMinimalProperty, WitnessIsAProperKernelSubsum) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 40);
    const auto ps = factorize(m).primes;
    GroupRingElement x(m);
    const int pieces = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < pieces; ++i)
      x = add(x, rotate(sigma_subgroup(m, static_cast<int>(ps[rng() % ps.size()])), static_cast<std::int64_t>(rng() % m)));
    if (augmentation(x) > kMaxCensusWeight) {
      EXPECT_THROW(is_minimal(x), std::invalid_argument);
      continue;
    }
    const auto w = is_minimal(x);
    EXPECT_EQ(w.minimal, oracle::minimal(x.coeffs(), m));
    if (!w.minimal) {
      ASSERT_TRUE(w.subsum);
      EXPECT_TRUE(in_kernel(*w.subsum));
      EXPECT_TRUE(geq(x, *w.subsum));
      EXPECT_FALSE(w.subsum->is_zero());
      EXPECT_NE(*w.subsum, x);
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(rotate(sigma_subgroup(30, 3), 11)), Symmetry::symmetric);
  EXPECT_EQ(classify(parse_element(kXG30, 30)), Symmetry::asymmetric);
  EXPECT_EQ(classify(sigma_subgroup(4, 2)), Symmetry::symmetric);
  EXPECT_THROW(classify(scale(sigma_subgroup(4, 2), 2)), std::invalid_argument);
}

TEST(Census, Examples) {
  auto r = enumerate_minimal(12, 12);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].canon, sigma_subgroup(12, 2));
  EXPECT_EQ(r[0].weight, 2);
  EXPECT_EQ(r[1].canon, sigma_subgroup(12, 3));
  EXPECT_EQ(r[1].weight, 3);

  r = enumerate_minimal(30, 6);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].canon, sigma_subgroup(30, 2));
  EXPECT_EQ(r[1].canon, sigma_subgroup(30, 3));
  EXPECT_EQ(r[2].canon, sigma_subgroup(30, 5));
  EXPECT_EQ(r[3].canon, canonical_rotation(parse_element(kXG30, 30)).canon);
  EXPECT_EQ(r[3].classification, Symmetry::asymmetric);
  EXPECT_EQ(r[3].weight, 6);
  EXPECT_EQ(r[3].support, 6);

  r = enumerate_minimal(2, 12);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].canon, parse_element("z^0 + z^1", 2));

  EXPECT_THROW(enumerate_minimal(30, 15), std::invalid_argument);
  EXPECT_TRUE(enumerate_minimal(1, 4).empty());
  EXPECT_THROW(enumerate_minimal(0, 4), std::invalid_argument);
}

TEST(CensusProperty, RecordInvariants) {
  for (int m : {6, 10, 12, 15, 18, 20, 21, 30, 36, 42}) {
    const auto records = enumerate_minimal(m, 8);
    const auto w = weight_set(m);
    const auto f = factorize(m);
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      EXPECT_TRUE(in_kernel(r.canon));
      EXPECT_TRUE(is_nonnegative(r.canon));
      EXPECT_TRUE(is_minimal(r.canon).minimal);
      EXPECT_TRUE(w.contains(r.weight));
      EXPECT_EQ(canonical_rotation(r.canon).canon, r.canon);
      EXPECT_EQ(r.weight, augmentation(r.canon));
      EXPECT_EQ(r.support, support_size(r.canon));
      EXPECT_EQ(r.classification, classify(r.canon));
      EXPECT_TRUE(seen.insert(r.canon.coeffs()).second);
      if (i > 0) {
        const auto& q = records[i - 1];
        EXPECT_TRUE(q.weight < r.weight || (q.weight == r.weight && q.support <= r.support));
      }
      if (r.classification == Symmetry::asymmetric) {
        ASSERT_GE(f.size(), 3u);
        EXPECT_GE(r.support, asymmetric_support_bound(m));
        EXPECT_GT(r.support, f.primes[2]);
      }
    }
  }
}

TEST(CensusProperty, MatchesNaiveEnumerator) {
  for (int m = 2; m <= 12; ++m) {
    EXPECT_EQ(canon_set(enumerate_minimal(m, 6)), oracle::naive_census(m, 6)) << "m=" << m;
  }
}

TEST(CensusProperty, PruningAndWorkersDoNotChangeOutput) {
  for (int m : {12, 30, 42}) {
    const auto base = enumerate_minimal(m, 8);
    const auto unpruned = enumerate_minimal(m, 8, CensusOptions{1, false, false});
    const auto parallel = enumerate_minimal(m, 8, CensusOptions{3, true, false});
    ASSERT_EQ(base.size(), unpruned.size());
    ASSERT_EQ(base.size(), parallel.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_EQ(base[i].canon, unpruned[i].canon);
      EXPECT_EQ(base[i].canon, parallel[i].canon);
    }
  }
}

TEST(CensusProperty, SquarefreeReductionLandsInRadicalCensus) {
  for (int m : {12, 18, 20, 36, 60}) {
    const int m0 = static_cast<int>(factorize(m).radical());
    const auto reduced_census = canon_set(enumerate_minimal(m0, 8));
    for (const auto& r : enumerate_minimal(m, 8)) {
      const auto red = squarefree_reduce(r.canon);
      EXPECT_TRUE(reduced_census.count(canonical_rotation(red.reduced).canon.coeffs())) << to_string(r.canon);
    }
  }
}

TEST(CensusRecord, JsonRoundTrip) {
  for (const auto& r : enumerate_minimal(30, 7)) {
    const auto j = nlohmann::json::parse(to_json(r).dump());
    const auto back = census_record_from_json(j);
    EXPECT_EQ(back.canon, r.canon);
    EXPECT_EQ(back.weight, r.weight);
    EXPECT_EQ(back.support, r.support);
    EXPECT_EQ(back.classification, r.classification);
  }
}

TEST(AsymmetricSeed, Examples) {
  const auto x = asymmetric_seed(30);
  EXPECT_EQ(x, parse_element(kXG30, 30));
  EXPECT_EQ(augmentation(x), 6);

  const auto y = asymmetric_seed(42);
  EXPECT_EQ(augmentation(y), 8);
  EXPECT_TRUE(in_kernel(y));
  EXPECT_TRUE(is_minimal(y).minimal);
  EXPECT_EQ(classify(y), Symmetry::asymmetric);

  const auto z = asymmetric_seed(105);
  EXPECT_EQ(augmentation(z), 14);
  EXPECT_EQ(support_size(z), 14);
  EXPECT_TRUE(in_kernel(z));
  EXPECT_TRUE(is_minimal(z).minimal);

  EXPECT_THROW(asymmetric_seed(12), std::invalid_argument);
}

TEST(WeightPlusOne, Examples) {
  const auto x = weight_plus_one_form(30);
  EXPECT_EQ(x, parse_element("z^25 + z^5 + z^7 + z^17 + z^24 + z^6 + z^18", 30));
  EXPECT_EQ(augmentation(x), 7);
  EXPECT_TRUE(in_kernel(x));
  EXPECT_TRUE(is_minimal(x).minimal);
  EXPECT_TRUE(matches_weight_plus_one_template(x));
  EXPECT_FALSE(matches_weight_plus_one_template(asymmetric_seed(30)));
  EXPECT_THROW(weight_plus_one_form(15), std::invalid_argument);
  EXPECT_THROW(weight_plus_one_form(105), std::invalid_argument);
  for (int k = 1; k < 5; ++k) EXPECT_TRUE(in_kernel(weight_plus_one_template(30, k)));
}

TEST(Transfer, Examples) {
  const auto one = GroupRingElement::one(15);
  const auto y = mul(sub(sigma_subgroup(15, 3), one), sub(sigma_subgroup(15, 5), one));
  auto rep = check_transfer(one, y);
  EXPECT_EQ(rep.outcome, TransferCase::b_equality);
  EXPECT_EQ(rep.support_bound, 8);
  EXPECT_TRUE(rep.structure_checked);
  EXPECT_TRUE(rep.structure_confirmed);
  EXPECT_EQ(rep.structure_multiplier, 1);

  const auto s = sigma_subgroup(15, 3);
  EXPECT_EQ(check_transfer(s, s).outcome, TransferCase::a);

  rep = check_transfer(scale(one, 2), scale(y, 2));
  EXPECT_EQ(rep.outcome, TransferCase::b_equality);
  EXPECT_TRUE(rep.structure_confirmed);
  EXPECT_EQ(rep.structure_multiplier, 2);

  EXPECT_THROW(check_transfer(one, GroupRingElement(15)), std::invalid_argument);
  EXPECT_THROW(check_transfer(sigma_subgroup(15, 5), sigma_subgroup(15, 3)), std::invalid_argument);
  EXPECT_THROW(check_transfer(GroupRingElement::one(12), GroupRingElement::one(12)), std::invalid_argument);
}

// Exhaustive over y with small coefficients: every y with phi(y) = phi(x)
// falls into case A or B, and equality in B comes with the stated structure.
TEST(TransferProperty, DichotomyIsExhaustive) {
  struct Case {
    int m;
    int max_coeff;
  };
  for (auto [m, max_coeff] : {Case{6, 2}, Case{10, 1}, Case{15, 1}}) {
    const auto f = factorize(m);
    const int p1 = static_cast<int>(f.primes[0]);
    std::vector<GroupRingElement> xs;
    for (int k = 0; k < m; ++k)
      for (Coeff c = 1; c <= 2; ++c) xs.push_back(GroupRingElement::monomial(m, k, c));
    if (p1 >= 3)
      for (int k = 1; k < m; ++k) xs.push_back(add(GroupRingElement::one(m), GroupRingElement::monomial(m, k)));
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(max_coeff + 1);
    std::vector<CyclotomicInteger> images;
    std::vector<GroupRingElement> ys;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Coeff> c(static_cast<std::size_t>(m));
      std::size_t v = code;
      for (auto& e : c) {
        e = static_cast<Coeff>(v % static_cast<std::size_t>(max_coeff + 1));
        v /= static_cast<std::size_t>(max_coeff + 1);
      }
      ys.emplace_back(m, std::move(c));
      images.push_back(phi_map(ys.back()));
    }
    for (const auto& x : xs) {
      ASSERT_LE(support_size(x), p1 - 1);
      const auto px = phi_map(x);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        if (images[i] != px) continue;
        const auto rep = check_transfer(x, ys[i]);
        ASSERT_NE(rep.outcome, TransferCase::violated) << to_string(x) << " / " << to_string(ys[i]);
        if (rep.outcome == TransferCase::b_equality)
          EXPECT_TRUE(rep.structure_confirmed) << to_string(x) << " / " << to_string(ys[i]);
      }
    }
  }
}

TEST(SymmetricDecomposition, Basics) {
  const auto x = add(rotate(sigma_subgroup(30, 3), 4), rotate(sigma_subgroup(30, 5), 1));
  const auto d = symmetric_decomposition(x);
  ASSERT_TRUE(d);
  GroupRingElement sum(30);
  for (auto [p, k] : *d) sum = add(sum, rotate(sigma_subgroup(30, static_cast<int>(p)), k));
  EXPECT_EQ(sum, x);
  EXPECT_FALSE(symmetric_decomposition(asymmetric_seed(30)));
}

TEST(Verify, LowerBound) {
  auto rep = verify_lower_bound(12, 12);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.asymmetric_records, 0u);

  rep = verify_lower_bound(30, 7);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.asymmetric_weights, (std::vector<std::int64_t>{6, 7}));

  rep = verify_lower_bound(42, 8);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.min_asymmetric_support, 8);
}

TEST(Verify, Uniqueness) {
  auto rep = verify_uniqueness(30);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.skipped);
  EXPECT_THROW(verify_uniqueness(12), std::invalid_argument);
  rep = verify_uniqueness(105);
  EXPECT_TRUE(rep.skipped);
  EXPECT_FALSE(rep.notes.empty());
}

}  // namespace
}  // namespace vansum
