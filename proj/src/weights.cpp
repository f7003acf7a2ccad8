#include "vansum/weights.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vansum/groupring.hpp"

namespace vansum {

namespace {

// reachable[n] for 0 <= n <= limit.
std::vector<char> reachable_table(std::int64_t limit, const std::vector<std::int64_t>& generators) {
  std::vector<char> ok(static_cast<std::size_t>(limit) + 1, 0);
  ok[0] = 1;
  for (std::int64_t n = 1; n <= limit; ++n)
    for (auto g : generators)
      if (g <= n && ok[static_cast<std::size_t>(n - g)]) {
        ok[static_cast<std::size_t>(n)] = 1;
        break;
      }
  return ok;
}

}  // namespace

bool WeightSet::contains(std::int64_t n) const {
  if (n < 0) return false;
  if (periodic()) return n % primes.front() == 0;
  if (n >= *conductor) return true;
  return !std::binary_search(gaps.begin(), gaps.end(), n);
}

WeightSet weight_set(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("weight_set: m must be >= 2, got " + std::to_string(m));
  WeightSet w;
  w.m = m;
  w.primes = factorize(m).primes;
  if (w.periodic()) return w;

  // N p_1 + N p_2 is already contained in W(m), so every n >= (p_1-1)(p_2-1)
  // is a member and the scan can stop there.
  const std::int64_t ceiling = frobenius_bound(w.primes[0], w.primes[1]);
  const auto ok = reachable_table(ceiling, w.primes);
  for (std::int64_t n = 0; n < ceiling; ++n)
    if (!ok[static_cast<std::size_t>(n)]) w.gaps.push_back(n);
  w.conductor = w.gaps.empty() ? 0 : w.gaps.back() + 1;
  return w;
}

bool is_weight(std::int64_t m, std::int64_t n) { return weight_set(m).contains(n); }

nlohmann::json to_json(const WeightSet& w) {
  nlohmann::json j{{"m", w.m}, {"primes", w.primes}};
  if (w.conductor) {
    j["conductor"] = *w.conductor;
  } else {
    j["conductor"] = nullptr;
    j["period"] = w.primes.front();
  }
  j["gaps"] = w.gaps;
  return j;
}

std::string to_string(const WeightSet& w) {
  std::string out = "W(" + std::to_string(w.m) + ") = ";
  for (std::size_t i = 0; i < w.primes.size(); ++i) {
    if (i != 0) out += " + ";
    out += "N*" + std::to_string(w.primes[i]);
  }
  if (w.periodic()) return out + "; multiples of " + std::to_string(w.primes.front()) + ", no conductor";
  out += "; conductor " + std::to_string(*w.conductor) + "; gaps {";
  for (std::size_t i = 0; i < w.gaps.size(); ++i) out += (i ? ", " : "") + std::to_string(w.gaps[i]);
  return out + "}";
}

bool in_semigroup(std::int64_t n, const std::vector<std::int64_t>& generators) {
  return semigroup_witness(n, generators).has_value();
}

std::optional<std::vector<std::int64_t>> semigroup_witness(std::int64_t n, const std::vector<std::int64_t>& generators) {
  if (n < 0) return std::nullopt;
  std::vector<std::int64_t> counts(generators.size(), 0);
  if (n == 0) return counts;
  for (auto g : generators)
    if (g < 1) throw std::invalid_argument("semigroup generators must be positive");
  // last[k]: index of the generator used to reach k, -1 if unreachable.
  std::vector<int> last(static_cast<std::size_t>(n) + 1, -1);
  last[0] = static_cast<int>(generators.size());
  for (std::int64_t k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] <= k && last[static_cast<std::size_t>(k - generators[i])] >= 0) {
        last[static_cast<std::size_t>(k)] = static_cast<int>(i);
        break;
      }
  if (last[static_cast<std::size_t>(n)] < 0) return std::nullopt;
  for (std::int64_t k = n; k > 0;) {
    const auto i = static_cast<std::size_t>(last[static_cast<std::size_t>(k)]);
    ++counts[i];
    k -= generators[i];
  }
  return counts;
}

std::int64_t frobenius_bound(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw std::invalid_argument("frobenius_bound: arguments must be positive");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("frobenius_bound: " + std::to_string(p) + " and " + std::to_string(q) + " are not coprime");
  return (p - 1) * (q - 1);
}

std::int64_t smallest_positive_weight(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("smallest_positive_weight: m must be >= 2");
  return factorize(m).primes.front();
}

std::string_view to_string(CharRule rule) {
  switch (rule) {
    case CharRule::nonpositive_value:
      return "nonpositive-value";
    case CharRule::positive_odd:
      return "positive-value-odd-t";
    case CharRule::no_constraint:
      return "no-constraint-applicable";
  }
  return "?";
}

CharVerdict char_constraint_check(const CharCheckInput& in) {
  if (in.degree < 1) throw std::invalid_argument("charcheck: degree must be >= 1");
  if (in.order < 1) throw std::invalid_argument("charcheck: order must be >= 1");
  if (in.value > in.degree || in.value < -in.degree)
    throw std::invalid_argument("charcheck: |chi(g)| cannot exceed chi(1)");

  const auto primes = factorize(in.order).primes;
  CharVerdict v;
  v.t = in.degree + (in.value < 0 ? -in.value : in.value);
  if (in.value <= 0) {
    v.rule = CharRule::nonpositive_value;
    if (auto witness = semigroup_witness(v.t, primes)) {
      v.pass = true;
      std::string combo;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if ((*witness)[i] == 0) continue;
        if (!combo.empty()) combo += " + ";
        combo += std::to_string((*witness)[i]) + "*" + std::to_string(primes[i]);
      }
      v.detail = "t = " + std::to_string(v.t) + " = " + combo;
    } else {
      v.detail = "t = " + std::to_string(v.t) + " is not an N-combination of the primes of " + std::to_string(in.order);
    }
    return v;
  }
  if (v.t % 2 == 0) {
    v.rule = CharRule::no_constraint;
    v.pass = true;
    v.detail = "t = " + std::to_string(v.t) + " is even; no constraint applies";
    return v;
  }
  v.rule = CharRule::positive_odd;
  auto odd = std::find_if(primes.begin(), primes.end(), [](std::int64_t p) { return p % 2 == 1; });
  if (odd == primes.end()) {
    v.detail = "t = " + std::to_string(v.t) + " is odd but " + std::to_string(in.order) + " has no odd prime divisor";
    return v;
  }
  v.pass = v.t >= *odd;
  v.detail = "t = " + std::to_string(v.t) + (v.pass ? " >= " : " < ") + std::to_string(*odd) +
             " (smallest odd prime divisor of " + std::to_string(in.order) + ")";
  return v;
}

}  // namespace vansum
