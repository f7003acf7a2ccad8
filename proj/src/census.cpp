#include "vansum/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "vansum/cyclotomic.hpp"
#include "vansum/simd.hpp"
#include "vansum/weights.hpp"

namespace vansum {

namespace {

constexpr std::int64_t kInt32Max = std::numeric_limits<std::int32_t>::max();

void require_int32_headroom(const ResidueTable& table, std::int64_t weight) {
  if (static_cast<std::int64_t>(table.max_abs_entry()) * weight >= kInt32Max)
    throw OverflowError("residue accumulator would exceed int32 for weight " + std::to_string(weight));
}

// First proper nonzero kernel sub-element of the multiset given by `counts`
// (over the modulus of `table`), scanning all 0 <= y <= counts in mixed radix.
std::optional<std::vector<Coeff>> find_kernel_subsum(std::span<const Coeff> counts, const ResidueTable& table) {
  const auto& k = simd::kernels();
  std::vector<int> support;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) support.push_back(static_cast<int>(i));
  std::vector<Coeff> digits(support.size(), 0);
  std::vector<std::int32_t> acc(table.width(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < support.size() && digits[i] == counts[static_cast<std::size_t>(support[i])]) {
      k.axpy_i32(acc, -static_cast<std::int32_t>(digits[i]), table.row(support[i]));
      digits[i] = 0;
      ++i;
    }
    if (i == support.size()) return std::nullopt;
    ++digits[i];
    k.add_i32(acc, table.row(support[i]));
    if (!k.all_zero_i32(acc)) continue;
    bool full = true;
    for (std::size_t t = 0; t < support.size() && full; ++t)
      full = digits[t] == counts[static_cast<std::size_t>(support[t])];
    if (full) continue;
    std::vector<Coeff> y(counts.size(), 0);
    for (std::size_t t = 0; t < support.size(); ++t) y[static_cast<std::size_t>(support[t])] = digits[t];
    return y;
  }
}

Symmetry symmetry_of(const GroupRingElement& canon) {
  const int m = canon.modulus();
  for (auto p : factorize(m).primes)
    if (canonical_rotation(sigma_subgroup(m, static_cast<int>(p))).canon == canon) return Symmetry::symmetric;
  return Symmetry::asymmetric;
}

bool record_less(const CensusRecord& a, const CensusRecord& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.support != b.support) return a.support < b.support;
  return a.canon.coeffs() < b.canon.coeffs();
}

// Depth-first search over nondecreasing exponent sequences starting at 0.
class CensusSearch {
 public:
  CensusSearch(int m0, int max_weight, bool numeric_prune)
      : m0_(m0), max_weight_(max_weight), prune_(numeric_prune), table_(residue_table(m0)), kernels_(simd::kernels()) {
    require_int32_headroom(table_, max_weight);
    roots_re_.resize(static_cast<std::size_t>(m0));
    roots_im_.resize(static_cast<std::size_t>(m0));
    for (int k = 0; k < m0; ++k) {
      const auto v = complex_eval(GroupRingElement::monomial(m0, k), 128);
      roots_re_[static_cast<std::size_t>(k)] = v.re;
      roots_im_[static_cast<std::size_t>(k)] = v.im;
    }
  }

  // Subtree rooted at the multiset {0, second}.
  void run_task(int second, std::vector<std::vector<Coeff>>& found) {
    counts_.assign(static_cast<std::size_t>(m0_), 0);
    acc_.assign(table_.width(), 0);
    re_ = 0;
    im_ = 0;
    found_ = &found;
    push(0);
    if (max_weight_ >= 2) {
      push(second);
      visit(second, 2);
      pop(second);
    }
    pop(0);
  }

  int modulus() const { return m0_; }

 private:
  void push(int e) {
    ++counts_[static_cast<std::size_t>(e)];
    kernels_.add_i32(acc_, table_.row(e));
    re_ += roots_re_[static_cast<std::size_t>(e)];
    im_ += roots_im_[static_cast<std::size_t>(e)];
  }

  void pop(int e) {
    --counts_[static_cast<std::size_t>(e)];
    kernels_.sub_i32(acc_, table_.row(e));
    re_ -= roots_re_[static_cast<std::size_t>(e)];
    im_ -= roots_im_[static_cast<std::size_t>(e)];
  }

  void visit(int last, int weight) {
    if (kernels_.all_zero_i32(acc_)) {
      // Any extension contains this kernel element, so only this node can
      // be minimal.
      if (canonical_shift(counts_) == 0 && !find_kernel_subsum(counts_, table_)) found_->push_back(counts_);
      return;
    }
    if (weight == max_weight_) return;
    if (prune_) {
      // Each remaining root has modulus 1, so completion needs
      // |partial sum| <= remaining weight.
      const double slack = static_cast<double>(max_weight_ - weight) + kTolerance;
      if (re_ * re_ + im_ * im_ > slack * slack) return;
    }
    for (int e = last; e < m0_; ++e) {
      push(e);
      visit(e, weight + 1);
      pop(e);
    }
  }

  // Double-precision partial sums of at most 14 roots, each rounded from a
  // 128-bit evaluation, stay within ~1e-14 of the true value.
  static constexpr double kTolerance = 1e-9;

  int m0_;
  int max_weight_;
  bool prune_;
  const ResidueTable& table_;
  simd::KernelTable kernels_;
  std::vector<double> roots_re_;
  std::vector<double> roots_im_;

  std::vector<Coeff> counts_;
  std::vector<std::int32_t> acc_;
  double re_ = 0;
  double im_ = 0;
  std::vector<std::vector<Coeff>>* found_ = nullptr;
};

std::int64_t third_prime_bound(const Factorization& f) {
  return (f.primes[0] - 1) * (f.primes[1] - 1) + (f.primes[2] - 1);
}

}  // namespace

std::string_view to_string(Symmetry s) { return s == Symmetry::symmetric ? "symmetric" : "asymmetric"; }

nlohmann::json to_json(const CensusRecord& r) {
  auto element = to_json(r.canon);
  return {{"m", r.canon.modulus()},
          {"weight", r.weight},
          {"support", r.support},
          {"class", std::string(to_string(r.classification))},
          {"coeffs", element["coeffs"]}};
}

CensusRecord census_record_from_json(const nlohmann::json& j) {
  CensusRecord r{element_from_json(j), 0, 0, Symmetry::symmetric, false};
  r.weight = j.at("weight").get<std::int64_t>();
  r.support = j.at("support").get<int>();
  const auto cls = j.at("class").get<std::string>();
  if (cls != "symmetric" && cls != "asymmetric") throw ParseError("unknown census class", cls);
  r.classification = cls == "symmetric" ? Symmetry::symmetric : Symmetry::asymmetric;
  return r;
}

MinimalityWitness is_minimal(const GroupRingElement& x, bool allow_large) {
  if (x.is_zero()) throw std::invalid_argument("is_minimal: element is zero");
  if (!is_nonnegative(x)) throw std::invalid_argument("is_minimal: element has a negative coefficient");
  if (augmentation(x) > kMaxCensusWeight && !allow_large)
    throw std::invalid_argument("is_minimal: weight " + std::to_string(augmentation(x)) + " exceeds the guard of " +
                                std::to_string(kMaxCensusWeight) + "; pass allow_large to override");
  if (!in_kernel(x)) throw std::invalid_argument("is_minimal: element is not in ker(phi)");
  const auto& table = residue_table(x.modulus());
  require_int32_headroom(table, augmentation(x));
  auto y = find_kernel_subsum(x.coeffs(), table);
  if (!y) return {true, std::nullopt};
  return {false, GroupRingElement(x.modulus(), std::move(*y))};
}

Symmetry classify(const GroupRingElement& x, bool allow_large) {
  if (!is_minimal(x, allow_large).minimal) throw std::invalid_argument("classify: element is not minimal");
  return symmetry_of(canonical_rotation(x).canon);
}

std::vector<CensusRecord> enumerate_minimal(int m, int max_weight, const CensusOptions& options) {
  if (m < 1) throw std::invalid_argument("enumerate_minimal: m must be positive");
  if (max_weight < 0) throw std::invalid_argument("enumerate_minimal: max_weight must be nonnegative");
  if (max_weight > kMaxCensusWeight && !options.allow_large)
    throw std::invalid_argument("enumerate_minimal: max_weight " + std::to_string(max_weight) + " exceeds the guard of " +
                                std::to_string(kMaxCensusWeight) + "; pass allow_large to override");
  // For m = 1, phi is the identity on Z and NG ∩ ker(phi) = {0}.
  if (max_weight < 1 || m == 1) return {};

  // Every minimal element is a rotation of one supported on G0, so the
  // search runs over rad(m) and the classes are embedded back.
  const int m0 = static_cast<int>(factorize(m).radical());
  CensusSearch prototype(m0, max_weight, options.numeric_prune);

  const int workers = std::max(1, options.workers);
  std::atomic<int> next{0};
  std::vector<std::vector<std::vector<Coeff>>> found(static_cast<std::size_t>(workers));
  auto work = [&](int id) {
    CensusSearch search = prototype;
    for (int task = next.fetch_add(1); task < m0; task = next.fetch_add(1))
      search.run_task(task, found[static_cast<std::size_t>(id)]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }

  std::vector<CensusRecord> records;
  for (auto& list : found)
    for (auto& counts : list) {
      GroupRingElement y(m0, std::move(counts));
      auto canon = canonical_rotation(m0 == m ? y : embed(y, m)).canon;
      CensusRecord r{canon, augmentation(canon), support_size(canon), symmetry_of(canon), true};
      records.push_back(std::move(r));
    }
  std::sort(records.begin(), records.end(), record_less);
  records.erase(std::unique(records.begin(), records.end(),
                            [](const CensusRecord& a, const CensusRecord& b) { return a.canon == b.canon; }),
                records.end());
  return records;
}

GroupRingElement asymmetric_seed(int m) {
  const auto f = factorize(m);
  if (f.size() < 3) throw std::invalid_argument("asymmetric_seed: m needs at least three distinct primes");
  const auto one = GroupRingElement::one(m);
  auto star = [&](std::int64_t p) { return sub(sigma_subgroup(m, static_cast<int>(p)), one); };
  return add(mul(star(f.primes[0]), star(f.primes[1])), star(f.primes[2]));
}

GroupRingElement weight_plus_one_template(int m, int d_power) {
  const auto f = factorize(m);
  if (m % 6 != 0) throw std::invalid_argument("weight_plus_one_template: 6 does not divide " + std::to_string(m));
  if (f.size() < 3) throw std::invalid_argument("weight_plus_one_template: m needs at least three distinct primes");
  const int p3 = static_cast<int>(f.primes[2]);
  if (d_power < 1 || d_power >= p3) throw std::invalid_argument("weight_plus_one_template: d_power out of range");
  const auto t = GroupRingElement::monomial(m, m / 2);
  const auto h = GroupRingElement::monomial(m, m / 3);
  const std::int64_t d = static_cast<std::int64_t>(d_power) * (m / p3);
  auto x = mul(mul(t, add(h, mul(h, h))), add(GroupRingElement::one(m), GroupRingElement::monomial(m, d)));
  for (int j = 2; j < p3; ++j) x = add(x, GroupRingElement::monomial(m, d * j));
  return x;
}

GroupRingElement weight_plus_one_form(int m) { return weight_plus_one_template(m, 2); }

bool matches_weight_plus_one_template(const GroupRingElement& x) {
  const int m = x.modulus();
  const auto f = factorize(m);
  if (m % 6 != 0 || f.size() < 3) return false;
  const auto canon = canonical_rotation(x).canon;
  for (int k = 1; k < f.primes[2]; ++k)
    if (canonical_rotation(weight_plus_one_template(m, k)).canon == canon) return true;
  return false;
}

std::string_view to_string(TransferCase c) {
  switch (c) {
    case TransferCase::a:
      return "A";
    case TransferCase::b:
      return "B";
    case TransferCase::b_equality:
      return "B-equality";
    case TransferCase::violated:
      return "violated";
  }
  return "?";
}

TransferReport check_transfer(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.modulus() != y.modulus()) throw ModulusMismatch(x.modulus(), y.modulus());
  const int m = x.modulus();
  const auto f = factorize(m);
  if (f.size() < 2 || !f.square_free())
    throw std::invalid_argument("check_transfer: m must be square-free with at least two primes");
  if (!is_nonnegative(x) || !is_nonnegative(y)) throw std::invalid_argument("check_transfer: x and y must lie in NG");
  if (phi_map(x) != phi_map(y)) throw std::invalid_argument("check_transfer: phi(x) != phi(y)");
  const std::int64_t p1 = f.primes[0];
  const std::int64_t p2 = f.primes[1];
  const int sx = support_size(x);

  TransferReport rep;
  rep.support_bound = (p1 - sx) * (p2 - 1);
  rep.augmentation_bound = (p1 - augmentation(x)) * (p2 - 1);
  const bool case_a = geq(y, x);
  const std::int64_t sy = support_size(y);
  rep.augmentation_variant_holds = case_a || augmentation(y) >= rep.augmentation_bound;
  if (case_a) {
    rep.outcome = TransferCase::a;
    return rep;
  }
  // A is decidable for any x; the B alternative needs the support hypothesis.
  if (sx > p1 - 1) throw std::invalid_argument("check_transfer: y >= x fails and the support of x exceeds p_1 - 1");
  if (sy < rep.support_bound) {
    rep.outcome = TransferCase::violated;
    return rep;
  }
  if (sy > rep.support_bound) {
    rep.outcome = TransferCase::b;
    return rep;
  }
  rep.outcome = TransferCase::b_equality;
  rep.structure_checked = true;
  // After some rotation u: u x = c sigma(X), u y = c sigma(X') sigma(P_2*),
  // with X, X' a partition of P_1 into nonempty sets.
  const int step1 = m / static_cast<int>(p1);
  const auto p2_star = sub(sigma_subgroup(m, static_cast<int>(p2)), GroupRingElement::one(m));
  for (int u = 0; u < m && !rep.structure_confirmed; ++u) {
    const auto rx = rotate(x, u);
    Coeff c = 0;
    bool ok = true;
    std::vector<Coeff> complement(static_cast<std::size_t>(m), 0);
    for (int k = 0; k < m && ok; ++k) {
      const Coeff v = rx[static_cast<std::size_t>(k)];
      const bool in_p1 = k % step1 == 0;
      if (v == 0) {
        if (in_p1) complement[static_cast<std::size_t>(k)] = 1;
        continue;
      }
      if (!in_p1 || (c != 0 && v != c)) ok = false;
      c = v;
    }
    if (!ok || c == 0) continue;
    GroupRingElement x_prime(m, std::move(complement));
    if (x_prime.is_zero()) continue;
    if (rotate(y, u) == scale(mul(x_prime, p2_star), c)) {
      rep.structure_confirmed = true;
      rep.structure_rotation = u;
      rep.structure_multiplier = c;
    }
  }
  return rep;
}

namespace {

bool decompose_symmetric(GroupRingElement& rest, const std::vector<std::int64_t>& primes,
                         std::vector<std::pair<std::int64_t, int>>& out) {
  const auto& c = rest.coeffs();
  auto first = std::find_if(c.begin(), c.end(), [](Coeff v) { return v != 0; });
  if (first == c.end()) return true;
  const int k = static_cast<int>(first - c.begin());
  const int m = rest.modulus();
  for (auto p : primes) {
    const auto piece = rotate(sigma_subgroup(m, static_cast<int>(p)), k);
    if (!geq(rest, piece)) continue;
    rest = sub(rest, piece);
    out.emplace_back(p, k % (m / static_cast<int>(p)));
    if (decompose_symmetric(rest, primes, out)) return true;
    out.pop_back();
    rest = add(rest, piece);
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::pair<std::int64_t, int>>> symmetric_decomposition(const GroupRingElement& x) {
  if (!is_nonnegative(x)) return std::nullopt;
  GroupRingElement rest = x;
  std::vector<std::pair<std::int64_t, int>> out;
  if (!decompose_symmetric(rest, factorize(x.modulus()).primes, out)) return std::nullopt;
  return out;
}

std::int64_t asymmetric_support_bound(int m) {
  const auto f = factorize(m);
  if (f.size() < 3) throw std::invalid_argument("asymmetric_support_bound: m needs at least three distinct primes");
  return third_prime_bound(f);
}

double census_node_estimate(int m, int max_weight) {
  const double m0 = static_cast<double>(factorize(m).radical());
  // Multisets of size n - 1 over m0 symbols, summed over n <= max_weight.
  double total = 0;
  double term = 1;  // C(m0 + n - 2, n - 1) for n = 1
  for (int n = 1; n <= max_weight; ++n) {
    total += term;
    term = term * (m0 + n - 1) / n;
  }
  return total;
}

VerificationReport verify_lower_bound(int m, int max_weight, const VerifyOptions& options) {
  VerificationReport rep;
  const auto f = factorize(m);
  const auto records = enumerate_minimal(m, max_weight, CensusOptions{options.workers, true, false});
  rep.records = records.size();
  const auto weights = weight_set(m);
  const bool has_bound = f.size() >= 3;
  const std::int64_t bound = has_bound ? third_prime_bound(f) : 0;

  std::set<std::int64_t> asym_weights;
  for (const auto& r : records) {
    const auto label = to_string(r.canon);
    if (!in_kernel(r.canon) || !is_nonnegative(r.canon)) rep.fail("record not in NG ∩ ker(phi): " + label);
    if (canonical_rotation(r.canon).canon != r.canon) rep.fail("record not canonical: " + label);
    if (!is_minimal(r.canon).minimal) rep.fail("record not minimal: " + label);
    if (!weights.contains(r.weight)) rep.fail("record weight outside W(m): " + label);
    if (r.weight < r.support) rep.fail("weight below support: " + label);
    if (r.classification != Symmetry::asymmetric) continue;
    ++rep.asymmetric_records;
    asym_weights.insert(r.weight);
    rep.min_asymmetric_support = std::min(rep.min_asymmetric_support.value_or(r.support), r.support);
    if (!has_bound) {
      rep.fail("asymmetric record with at most two primes: " + label);
      continue;
    }
    if (r.support < bound) rep.fail("asymmetric record below the support bound " + std::to_string(bound) + ": " + label);
    if (r.support <= f.primes[2]) rep.fail("asymmetric record with support <= p_3: " + label);
  }
  rep.asymmetric_weights.assign(asym_weights.begin(), asym_weights.end());

  // Elements of NG ∩ ker(phi) with support below the bound must split into
  // rotated sigma(P_i). Samples are sums of rotated census records.
  std::mt19937_64 rng(options.seed);
  int tested = 0;
  if (!records.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, records.size() - 1);
    std::uniform_int_distribution<int> shift(0, m - 1);
    std::uniform_int_distribution<int> pieces(1, 3);
    for (int s = 0; s < options.random_samples; ++s) {
      GroupRingElement u(m);
      const int n = pieces(rng);
      for (int i = 0; i < n; ++i) u = add(u, rotate(records[pick(rng)].canon, shift(rng)));
      if (has_bound && support_size(u) >= bound) continue;
      ++tested;
      if (!symmetric_decomposition(u)) rep.fail("small kernel element without a symmetric decomposition: " + to_string(u));
    }
  }
  rep.notes.push_back("census records: " + std::to_string(rep.records) + ", asymmetric: " +
                      std::to_string(rep.asymmetric_records));
  if (has_bound) rep.notes.push_back("support bound (p1-1)(p2-1)+(p3-1) = " + std::to_string(bound));
  if (rep.min_asymmetric_support)
    rep.notes.push_back("minimum asymmetric support: " + std::to_string(*rep.min_asymmetric_support));
  rep.notes.push_back("symmetric-decomposition samples below the bound: " + std::to_string(tested));
  return rep;
}

VerificationReport verify_uniqueness(int m, const VerifyOptions& options) {
  const auto f = factorize(m);
  if (f.size() < 3) throw std::invalid_argument("verify_uniqueness: m needs at least three distinct primes");
  VerificationReport rep;
  const std::int64_t bound = third_prime_bound(f);
  const int max_weight = static_cast<int>(bound) + 1;
  const double nodes = census_node_estimate(m, max_weight);
  if (max_weight > kMaxCensusWeight || nodes > options.node_budget) {
    rep.skipped = true;
    rep.notes.push_back("skipped: census to weight " + std::to_string(max_weight) + " over rad(m) = " +
                        std::to_string(f.radical()) + " needs ~" + std::to_string(nodes) +
                        " search nodes, beyond the budget");
    return rep;
  }
  const auto records = enumerate_minimal(m, max_weight, CensusOptions{options.workers, true, false});
  rep.records = records.size();
  const auto seed = canonical_rotation(asymmetric_seed(m)).canon;
  int at_bound = 0;
  int above = 0;
  std::set<std::int64_t> asym_weights;
  for (const auto& r : records) {
    if (r.classification != Symmetry::asymmetric) continue;
    ++rep.asymmetric_records;
    asym_weights.insert(r.weight);
    const auto label = to_string(r.canon);
    if (r.weight < bound) rep.fail("asymmetric record below the bound: " + label);
    if ((r.weight == bound || r.support == bound) && r.canon != seed)
      rep.fail("asymmetric record at the bound not similar to x(G): " + label);
    if (r.weight == bound) ++at_bound;
    if (r.weight == bound + 1) {
      ++above;
      if (m % 6 != 0) rep.fail("asymmetric record of weight bound+1 although 6 does not divide m: " + label);
      else if (!matches_weight_plus_one_template(r.canon))
        rep.fail("weight bound+1 record outside the t(h+h^2)(1+d)+d^2+... template: " + label);
    }
  }
  rep.asymmetric_weights.assign(asym_weights.begin(), asym_weights.end());
  if (at_bound != 1) rep.fail("expected exactly one asymmetric class at weight " + std::to_string(bound) + ", found " +
                              std::to_string(at_bound));
  rep.notes.push_back("asymmetric classes at weight " + std::to_string(bound) + ": " + std::to_string(at_bound));
  rep.notes.push_back("asymmetric classes at weight " + std::to_string(bound + 1) + ": " + std::to_string(above));
  return rep;
}

}  // namespace vansum
