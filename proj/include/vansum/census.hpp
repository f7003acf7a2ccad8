#pragma once

// Minimal elements of NG ∩ ker(phi): minimality tests, the exhaustive
// rotation-class census, the extremal constructions, and the verification
// drivers that check the structure theorems against the census.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vansum/groupring.hpp"

namespace vansum {

enum class Symmetry { symmetric, asymmetric };

std::string_view to_string(Symmetry s);

struct CensusRecord {
  GroupRingElement canon;
  std::int64_t weight = 0;
  int support = 0;
  Symmetry classification = Symmetry::symmetric;
  bool minimality_checked = false;
};

/// JSON-lines record: {"m","weight","support","class","coeffs"}.
nlohmann::json to_json(const CensusRecord& r);
CensusRecord census_record_from_json(const nlohmann::json& j);

inline constexpr int kMaxCensusWeight = 14;

struct MinimalityWitness {
  bool minimal = false;
  /// Present iff not minimal: 0 != subsum != x, subsum <= x, in ker(phi).
  std::optional<GroupRingElement> subsum;
};

/// Scans every y with 0 <= y <= x for a proper nonzero kernel element.
/// Requires x in NG ∩ ker(phi), x != 0, and eps(x) <= kMaxCensusWeight
/// unless allow_large is set (the scan is exponential in eps0(x)).
MinimalityWitness is_minimal(const GroupRingElement& x, bool allow_large = false);

/// Requires x minimal; symmetric iff x is a rotation of some sigma(P_i).
Symmetry classify(const GroupRingElement& x, bool allow_large = false);

struct CensusOptions {
  int workers = 1;
  bool numeric_prune = true;
  /// Permit max_weight above kMaxCensusWeight.
  bool allow_large = false;
};

/// One record per rotation class of minimal elements of NG ∩ ker(phi) with
/// weight <= max_weight, ordered by (weight, support, coefficient sequence).
std::vector<CensusRecord> enumerate_minimal(int m, int max_weight, const CensusOptions& options = {});

/// x(G) = sigma(P_1*) sigma(P_2*) + sigma(P_3*) from the three smallest primes.
GroupRingElement asymmetric_seed(int m);

/// t(h + h^2)(1 + d) + d^2 + ... + d^(p_3 - 1) with t = z^(m/2),
/// h = z^(m/3) and d = z^(d_power * m / p_3). Requires 6 | m, r >= 3 and
/// 1 <= d_power < p_3.
GroupRingElement weight_plus_one_template(int m, int d_power);

/// The template with d = g^2, g = z^(m/p_3).
GroupRingElement weight_plus_one_form(int m);

/// True iff x is a rotation of weight_plus_one_template(m, k) for some k.
bool matches_weight_plus_one_template(const GroupRingElement& x);

enum class TransferCase { a, b, b_equality, violated };

std::string_view to_string(TransferCase c);

struct TransferReport {
  TransferCase outcome = TransferCase::violated;
  std::int64_t support_bound = 0;       // (p_1 - eps0(x)) (p_2 - 1)
  std::int64_t augmentation_bound = 0;  // (p_1 - eps(x)) (p_2 - 1)
  bool augmentation_variant_holds = false;
  /// Set when B holds with equality and A fails.
  bool structure_checked = false;
  bool structure_confirmed = false;
  int structure_rotation = 0;
  Coeff structure_multiplier = 0;
};

/// For square-free m with r >= 2, x, y in NG and phi(x) = phi(y): reports
/// whether y >= x (A) or the support bound (B). Outside case A, requires
/// eps0(x) <= p_1 - 1.
TransferReport check_transfer(const GroupRingElement& x, const GroupRingElement& y);

/// A list of (prime, rotation) pairs with x = sum rotate(sigma(P_prime), k),
/// if one exists.
std::optional<std::vector<std::pair<std::int64_t, int>>> symmetric_decomposition(const GroupRingElement& x);

struct VerifyOptions {
  int workers = 1;
  std::uint64_t seed = 1;
  int random_samples = 200;
  /// Census node estimate above which verify_uniqueness skips the weight
  /// (bound + 1) stage.
  double node_budget = 2.0e9;
};

struct VerificationReport {
  bool pass = true;
  bool skipped = false;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  std::size_t records = 0;
  std::size_t asymmetric_records = 0;
  std::optional<int> min_asymmetric_support;
  std::vector<std::int64_t> asymmetric_weights;

  void fail(std::string message) {
    pass = false;
    failures.push_back(std::move(message));
  }
};

/// (p_1 - 1)(p_2 - 1) + (p_3 - 1) from the three smallest primes of m.
std::int64_t asymmetric_support_bound(int m);

VerificationReport verify_lower_bound(int m, int max_weight, const VerifyOptions& options = {});
VerificationReport verify_uniqueness(int m, const VerifyOptions& options = {});

/// Rough node count of the census search tree over rad(m).
double census_node_estimate(int m, int max_weight);

}  // namespace vansum
