#include "vansum/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vansum/census.hpp"
#include "vansum/cyclotomic.hpp"
#include "vansum/groupring.hpp"
#include "vansum/weights.hpp"

namespace vansum::cli {

namespace {

using nlohmann::json;

// Signals a failure that maps to exit code 2.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::optional<int> m;
  std::uint64_t seed = 1;
  int workers = 1;
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  bool json_mode() const { return g_.json; }
  std::ostream& out() { return out_; }
  const Globals& globals() const { return g_; }

  int modulus() const {
    if (!g_.m) throw InvalidInput("missing --m: the modulus is required for element input");
    if (*g_.m < 1) throw InvalidInput("invalid --m: " + std::to_string(*g_.m));
    return *g_.m;
  }

  GroupRingElement element(const std::string& text) const { return parse_element(text, modulus()); }

  void emit(const json& j) { out_ << j.dump() << '\n'; }

 private:
  const Globals& g_;
  std::ostream& out_;
};

std::string certificate_text(const KernelCertificate& cert) {
  std::string s;
  for (std::size_t i = 0; i < cert.parts.size(); ++i)
    s += "z_" + std::to_string(cert.primes[i]) + " = " + to_string(cert.parts[i]) + "\n";
  return s;
}

int cmd_phi(Context& ctx, int m) {
  if (m < 1) throw InvalidInput("invalid modulus: " + std::to_string(m));
  const auto& p = cyclotomic_poly(m);
  if (ctx.json_mode())
    ctx.emit({{"m", m}, {"degree", p.degree()}, {"coeffs", to_json(p)}});
  else
    ctx.out() << to_string(p) << '\n';
  return kExitPass;
}

int cmd_weights(Context& ctx, std::int64_t m) {
  if (m < 2) throw InvalidInput("invalid modulus: " + std::to_string(m));
  const auto w = weight_set(m);
  if (ctx.json_mode())
    ctx.emit(to_json(w));
  else
    ctx.out() << to_string(w) << '\n';
  return kExitPass;
}

int cmd_member(Context& ctx, std::int64_t m, std::int64_t n) {
  if (m < 2) throw InvalidInput("invalid modulus: " + std::to_string(m));
  const bool member = is_weight(m, n);
  if (ctx.json_mode())
    ctx.emit({{"m", m}, {"n", n}, {"member", member}});
  else
    ctx.out() << n << (member ? " in W(" : " not in W(") << m << ")\n";
  return member ? kExitPass : kExitFail;
}

int cmd_eval(Context& ctx, const std::string& text, int bits) {
  const auto x = ctx.element(text);
  if (bits < 64) throw InvalidInput("invalid --precision: " + std::to_string(bits));
  const auto v = complex_eval(x, bits);
  if (ctx.json_mode()) {
    ctx.emit({{"m", x.modulus()},
              {"re", v.re_text},
              {"im", v.im_text},
              {"abs", v.abs},
              {"error_bound", v.error_bound},
              {"precision_bits", v.precision_bits},
              {"certainly_nonzero", v.certainly_nonzero()}});
  } else {
    ctx.out() << "re = " << v.re_text << "\nim = " << v.im_text << "\n|x| ~ " << v.abs << " (error <= "
              << v.error_bound << ", " << v.precision_bits << " bits)\n"
              << (v.certainly_nonzero() ? "nonzero" : "zero within the error bound") << '\n';
  }
  return kExitPass;
}

int cmd_kernel(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  const auto image = phi_map(x);
  const bool yes = image.is_zero();
  if (ctx.json_mode())
    ctx.emit({{"m", x.modulus()}, {"in_kernel", yes}, {"phi", image.coords}});
  else
    ctx.out() << "in kernel: " << (yes ? "yes" : "no") << (yes ? "" : "\nphi(x) = " + to_string(image)) << '\n';
  return yes ? kExitPass : kExitFail;
}

int report_not_in_kernel(Context& ctx, const NotInKernel& e) {
  if (ctx.json_mode())
    ctx.emit({{"error", "not in kernel"}, {"phi", e.witness().coords}});
  else
    ctx.out() << "not in kernel: phi(x) = " << to_string(e.witness()) << '\n';
  return kExitFail;
}

int cmd_decompose(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  try {
    const auto cert = kernel_decompose(x);
    if (ctx.json_mode())
      ctx.emit(to_json(cert));
    else
      ctx.out() << certificate_text(cert);
    return kExitPass;
  } catch (const NotInKernel& e) {
    return report_not_in_kernel(ctx, e);
  }
}

int cmd_coset_split(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  try {
    const auto parts = coset_split(x);
    if (ctx.json_mode()) {
      json arr = json::array();
      for (const auto& p : parts) {
        auto j = to_json(p.part);
        j["coset"] = p.coset_exponent;
        arr.push_back(std::move(j));
      }
      ctx.emit(arr);
    } else {
      for (const auto& p : parts) ctx.out() << "coset " << p.coset_exponent << ": " << to_string(p.part) << '\n';
    }
    return kExitPass;
  } catch (const NotInKernel& e) {
    return report_not_in_kernel(ctx, e);
  }
}

int cmd_two_prime(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  try {
    const auto d = two_prime_decompose(x);
    if (ctx.json_mode())
      ctx.emit({{"a", to_json(d.a)}, {"b", to_json(d.b)}});
    else
      ctx.out() << "a = " << to_string(d.a) << "\nb = " << to_string(d.b) << '\n';
    return kExitPass;
  } catch (const NotInKernel& e) {
    return report_not_in_kernel(ctx, e);
  }
}

int cmd_constrained(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  try {
    const auto r = constrained_decompose(x);
    const bool ok = r.verdict == ConstrainedVerdict::feasible;
    if (ctx.json_mode()) {
      json j{{"verdict", ok ? "feasible" : "infeasible"}, {"candidates", r.candidates}};
      if (r.certificate) j["certificate"] = to_json(*r.certificate);
      ctx.emit(j);
    } else {
      ctx.out() << (ok ? "feasible" : "infeasible") << '\n';
      for (const auto& c : r.candidates) {
        ctx.out() << "candidate eps = (";
        for (std::size_t i = 0; i < c.size(); ++i) ctx.out() << (i ? ", " : "") << c[i];
        ctx.out() << ")\n";
      }
      if (r.certificate) ctx.out() << certificate_text(*r.certificate);
    }
    return ok ? kExitPass : kExitFail;
  } catch (const NotInKernel& e) {
    return report_not_in_kernel(ctx, e);
  }
}

int cmd_census(Context& ctx, int m, int max_weight, bool no_prune, bool allow_large) {
  if (m < 1) throw InvalidInput("invalid modulus: " + std::to_string(m));
  if (max_weight < 0) throw InvalidInput("invalid --max-weight: " + std::to_string(max_weight));
  if (max_weight > kMaxCensusWeight && !allow_large)
    throw InvalidInput("--max-weight " + std::to_string(max_weight) + " exceeds " + std::to_string(kMaxCensusWeight) +
                       "; pass --allow-large to override");
  const auto records = enumerate_minimal(m, max_weight, CensusOptions{ctx.globals().workers, !no_prune, allow_large});
  for (const auto& r : records) {
    if (ctx.json_mode())
      ctx.emit(to_json(r));
    else
      ctx.out() << "weight " << r.weight << " support " << r.support << ' ' << to_string(r.classification) << ": "
                << to_string(r.canon) << '\n';
  }
  return kExitPass;
}

// in_kernel against the certified numeric test on random elements, half of
// them built inside the kernel. Non-kernel values must clear twice the bound.
std::size_t oracle_disagreements(int m, int samples, std::uint64_t seed, std::vector<std::string>& failures) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto primes = factorize(m).primes;
  std::size_t bad = 0;
  for (int s = 0; s < samples; ++s) {
    GroupRingElement x(m);
    if (s % 2 == 0) {
      for (auto p : primes) {
        std::vector<Coeff> c(static_cast<std::size_t>(m));
        for (auto& v : c) v = coeff(rng);
        x = add(x, mul(GroupRingElement(m, std::move(c)), sigma_subgroup(m, static_cast<int>(p))));
      }
    } else {
      std::vector<Coeff> c(static_cast<std::size_t>(m));
      for (auto& v : c) v = coeff(rng);
      x = GroupRingElement(m, std::move(c));
    }
    const auto v = complex_eval(x, 128);
    const bool agrees = in_kernel(x) ? v.abs <= v.error_bound : v.abs > 2 * v.error_bound;
    if (!agrees) {
      ++bad;
      failures.push_back("oracle disagreement: " + to_string(x));
    }
  }
  return bad;
}

int cmd_verify(Context& ctx, int m, std::optional<int> max_weight, int samples) {
  if (m < 2) throw InvalidInput("invalid modulus: " + std::to_string(m));
  const auto f = factorize(m);
  VerifyOptions opts;
  opts.workers = ctx.globals().workers;
  opts.seed = ctx.globals().seed;
  // Default: the asymmetric support bound, lowered until the census fits the
  // node budget.
  int weight = f.size() >= 3 ? static_cast<int>(std::min<std::int64_t>(asymmetric_support_bound(m), kMaxCensusWeight))
                             : 8;
  while (!max_weight && weight > 2 && census_node_estimate(m, weight) > opts.node_budget) --weight;
  if (max_weight) weight = *max_weight;
  if (weight < 1 || weight > kMaxCensusWeight)
    throw InvalidInput("invalid --max-weight: " + std::to_string(weight));

  struct Stage {
    std::string name;
    VerificationReport report;
  };
  std::vector<Stage> stages;
  stages.push_back({"lower-bound", verify_lower_bound(m, weight, opts)});
  if (f.size() >= 3) stages.push_back({"uniqueness", verify_uniqueness(m, opts)});
  VerificationReport oracle;
  const auto bad = oracle_disagreements(m, samples, opts.seed, oracle.failures);
  oracle.pass = bad == 0;
  oracle.notes.push_back(std::to_string(samples) + " samples, " + std::to_string(bad) + " disagreements");
  stages.push_back({"oracle", oracle});

  bool pass = true;
  json arr = json::array();
  for (const auto& s : stages) {
    pass = pass && s.report.pass;
    const char* status = s.report.skipped ? "SKIP" : (s.report.pass ? "PASS" : "FAIL");
    if (ctx.json_mode()) {
      arr.push_back({{"stage", s.name},
                     {"status", status},
                     {"notes", s.report.notes},
                     {"failures", s.report.failures},
                     {"asymmetric_weights", s.report.asymmetric_weights}});
    } else {
      ctx.out() << status << ' ' << s.name << '\n';
      for (const auto& n : s.report.notes) ctx.out() << "  " << n << '\n';
      for (const auto& n : s.report.failures) ctx.out() << "  failure: " << n << '\n';
    }
  }
  if (ctx.json_mode())
    ctx.emit({{"m", m}, {"max_weight", weight}, {"pass", pass}, {"stages", arr}});
  else
    ctx.out() << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitFail;
}

int cmd_charcheck(Context& ctx, std::int64_t degree, std::int64_t value, std::int64_t order) {
  CharVerdict v;
  try {
    v = char_constraint_check({degree, value, order});
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  if (ctx.json_mode())
    ctx.emit({{"degree", degree},
              {"value", value},
              {"order", order},
              {"t", v.t},
              {"rule", std::string(to_string(v.rule))},
              {"pass", v.pass},
              {"detail", v.detail}});
  else
    ctx.out() << (v.pass ? "pass" : "fail") << " [" << to_string(v.rule) << "] " << v.detail << '\n';
  return v.pass ? kExitPass : kExitFail;
}

int cmd_canon(Context& ctx, const std::string& text) {
  const auto x = ctx.element(text);
  const auto c = canonical_rotation(x);
  if (ctx.json_mode()) {
    auto j = to_json(c.canon);
    j["shift"] = c.shift;
    ctx.emit(j);
  } else {
    ctx.out() << to_string(c.canon) << "\nshift " << c.shift << '\n';
  }
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vanishing sums of roots of unity: group ring tools", "vansum"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  int m_flag = 0;
  app.add_flag("--json", g.json, "Emit JSON (one document or record per line)");
  auto* m_opt = app.add_option("--m", m_flag, "Modulus m for element arguments");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--workers", g.workers, "Worker threads for the census")->check(CLI::PositiveNumber);

  std::function<int(Context&)> action;
  const std::string element_help = "Element such as \"z^0 + 2*z^3 - z^5\"";

  int m = 0;
  std::int64_t m64 = 0;
  std::int64_t n = 0;
  std::string elem;

  auto* phi = app.add_subcommand("phi", "Print the cyclotomic polynomial Phi_m");
  phi->add_option("m", m)->required();
  phi->callback([&] { action = [&](Context& c) { return cmd_phi(c, m); }; });

  auto* weights = app.add_subcommand("weights", "Describe W(m) = N p_1 + ... + N p_r");
  weights->add_option("m", m64)->required();
  weights->callback([&] { action = [&](Context& c) { return cmd_weights(c, m64); }; });

  auto* member = app.add_subcommand("member", "Test n in W(m)");
  member->add_option("m", m64)->required();
  member->add_option("n", n)->required();
  member->callback([&] { action = [&](Context& c) { return cmd_member(c, m64, n); }; });

  int bits = 128;
  auto* eval = app.add_subcommand("eval", "Evaluate phi(x) numerically with a certified error bound");
  eval->add_option("element", elem, element_help)->required();
  eval->add_option("--precision", bits, "MPFR precision in bits");
  eval->callback([&] { action = [&](Context& c) { return cmd_eval(c, elem, bits); }; });

  const std::vector<std::pair<std::string, std::pair<std::string, int (*)(Context&, const std::string&)>>> unary = {
      {"kernel", {"Test x in ker(phi)", cmd_kernel}},
      {"decompose", {"Kernel certificate x = sum z_i sigma(P_i)", cmd_decompose}},
      {"coset-split", {"Split x along the cosets of G0", cmd_coset_split}},
      {"two-prime", {"x = a sigma(P_2) + b sigma(P_1) for at most two primes", cmd_two_prime}},
      {"constrained", {"Certificate with eps(z_i) >= 0, or infeasible", cmd_constrained}},
      {"canon", {"Canonical rotation of x", cmd_canon}},
  };
  for (const auto& [name, info] : unary) {
    auto* sub = app.add_subcommand(name, info.first);
    sub->add_option("element", elem, element_help)->required();
    auto fn = info.second;
    sub->callback([&action, &elem, fn] { action = [&elem, fn](Context& c) { return fn(c, elem); }; });
  }

  int max_weight = 8;
  bool no_prune = false;
  bool allow_large = false;
  auto* census = app.add_subcommand("census", "Rotation classes of minimal elements up to a weight");
  census->add_option("m", m)->required();
  census->add_option("--max-weight", max_weight, "Largest weight to enumerate");
  census->add_flag("--no-prune", no_prune, "Disable the numeric pruning bound");
  census->add_flag("--allow-large", allow_large, "Permit weights above the default guard");
  census->callback([&] { action = [&](Context& c) { return cmd_census(c, m, max_weight, no_prune, allow_large); }; });

  std::optional<int> verify_weight;
  int samples = 500;
  auto* verify = app.add_subcommand("verify", "Check the structure results against the census");
  verify->add_option("m", m)->required();
  verify->add_option("--max-weight", verify_weight, "Census weight for the lower-bound stage");
  verify->add_option("--samples", samples, "Oracle-agreement samples")->check(CLI::NonNegativeNumber);
  verify->callback([&] { action = [&](Context& c) { return cmd_verify(c, m, verify_weight, samples); }; });

  std::int64_t degree = 0;
  std::int64_t value = 0;
  std::int64_t order = 0;
  auto* charcheck = app.add_subcommand("charcheck", "Check (chi(1), chi(g), ord g) against the weight constraints");
  charcheck->add_option("degree", degree, "chi(1)")->required();
  charcheck->add_option("value", value, "chi(g)")->required();
  charcheck->add_option("order", order, "order of g")->required();
  charcheck->callback([&] { action = [&](Context& c) { return cmd_charcheck(c, degree, value, order); }; });

  // CLI11 reports a stray word only as a missing subcommand; name it instead.
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--m" || a == "--seed" || a == "--workers") {
      ++i;
      continue;
    }
    if (a.starts_with("-")) continue;
    if (app.get_subcommand_no_throw(a) == nullptr) {
      err << "error: unknown subcommand '" << a << "'\n";
      return kExitInvalid;
    }
    break;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return kExitInvalid;
  }
  if (m_opt->count() > 0) g.m = m_flag;

  Context ctx(g, out);
  try {
    return action(ctx);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (token '" << e.token() << "')\n";
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
  } catch (const OverflowError& e) {
    err << "error: coefficient overflow: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalid;
}

}  // namespace vansum::cli
