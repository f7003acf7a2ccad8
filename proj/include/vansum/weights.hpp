#pragma once

// Weight sets W(m) = N p_1 + ... + N p_r as numerical semigroups, and the
// characteristic-zero character-value check built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vansum {

struct WeightSet {
  std::int64_t m = 0;
  std::vector<std::int64_t> primes;
  /// Smallest c with every n >= c a member; nullopt when r = 1 (the set is
  /// p_1 N and has no conductor).
  std::optional<std::int64_t> conductor;
  /// Non-members below the conductor, ascending. Empty when r = 1.
  std::vector<std::int64_t> gaps;

  /// r = 1: membership is divisibility by primes[0].
  bool periodic() const { return primes.size() == 1; }
  bool contains(std::int64_t n) const;
};

WeightSet weight_set(std::int64_t m);
bool is_weight(std::int64_t m, std::int64_t n);

nlohmann::json to_json(const WeightSet& w);
std::string to_string(const WeightSet& w);

/// Numerical semigroup membership for arbitrary generators (0 always a member).
bool in_semigroup(std::int64_t n, const std::vector<std::int64_t>& generators);

/// Counts k_i >= 0 with sum k_i * generators[i] = n, if any.
std::optional<std::vector<std::int64_t>> semigroup_witness(std::int64_t n, const std::vector<std::int64_t>& generators);

/// (p - 1)(q - 1) for coprime p, q >= 1.
std::int64_t frobenius_bound(std::int64_t p, std::int64_t q);

/// p_1, the smallest prime divisor of m.
std::int64_t smallest_positive_weight(std::int64_t m);

struct CharCheckInput {
  std::int64_t degree = 1;  // chi(1)
  std::int64_t value = 0;   // chi(g)
  std::int64_t order = 1;   // order of g
};

enum class CharRule {
  nonpositive_value,   // chi(g) <= 0: t must lie in sum N p_i
  positive_odd,        // chi(g) > 0, t odd: t >= smallest odd prime of the order
  no_constraint,       // chi(g) > 0, t even: nothing to check
};

struct CharVerdict {
  bool pass = false;
  CharRule rule = CharRule::no_constraint;
  std::int64_t t = 0;
  std::string detail;
};

std::string_view to_string(CharRule rule);

/// Necessary conditions on (chi(1), chi(g)) for an element g of the given
/// order, valid over fields of characteristic 0 only. Throws
/// std::invalid_argument for degree < 1, order < 1 or |value| > degree.
CharVerdict char_constraint_check(const CharCheckInput& input);

}  // namespace vansum
