#include "hardy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/bridge.hpp"
#include "hardy/constants.hpp"
#include "hardy/discretize.hpp"
#include "hardy/io.hpp"
#include "hardy/oracle.hpp"
#include "hardy/suites.hpp"

namespace hardy {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kDefaultBudget = 4000;
constexpr std::size_t kDefaultTrials = 200;
constexpr std::uint64_t kDefaultSeed = 1;

// Integral values print without a fractional part; inf and nan as strings.
json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == std::floor(x) && std::fabs(x) < 0x1p53) return static_cast<std::int64_t>(x);
  return x;
}
json num(ExtReal x) { return num(x.value()); }

json numbers(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

json sequence_json(const WeightSeq& s) {
  return {{"start", s.start()}, {"values", numbers(s.values())}};
}

json regime_json(const ExponentPair& e) {
  const RegimeLabels r = regime(e);
  json j;
  j["kernel_hardy"] = r.kernel_hardy ? json(to_string(*r.kernel_hardy)) : json(nullptr);
  j["small_p"] = r.small_p ? json(to_string(*r.small_p)) : json(nullptr);
  j["supremal"] = r.supremal ? json(to_string(*r.supremal)) : json(nullptr);
  return j;
}

std::string kernel_type(const KernelSpec& k) {
  static constexpr const char* names[] = {"constant", "tabulated", "sup", "row", "power"};
  return names[k.node.index()];
}

json instance_json(const std::string& file, const Instance& I) {
  json j;
  j["file"] = file;
  j["window"] = {{"start", I.window.start}, {"length", I.window.length}};
  j["p"] = num(I.p());
  j["q"] = num(I.q());
  j["kernel"] = kernel_type(I.kernel.spec());
  return j;
}

json oracle_json(const OracleResult& r) {
  json j;
  j["form"] = to_string(r.form);
  j["estimate"] = num(r.estimate);
  j["witness"] = sequence_json(r.witness);
  j["strategy"] = r.strategy;
  j["exact"] = r.exact;
  j["evaluations"] = r.evaluations;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  return j;
}

json oracle_json(const OracleResult& r, const Instance& I) {
  json j = oracle_json(r);
  if (inner_powered(r.form) && I.p() < kInf) {
    const double c = r.estimate.is_inf() ? kInf : std::pow(r.estimate.value(), I.p());
    j["power_normalized"] = num(c);
  }
  return j;
}

json constants_json(const ConstantsReport& rep) {
  json j;
  json c = json::object();
  for (const auto& [name, value] : rep.constants) c[name] = num(value);
  j["constants"] = c;
  j["predicted_C"] = num(rep.predicted_C);
  j["predicted_from"] = rep.predicted_from;
  j["predicted_sup_C"] = num(rep.predicted_sup_C);
  j["predicted_sup_from"] = rep.predicted_sup_from;
  j["advisories"] = rep.advisories;
  return j;
}

json chain_json(const ChainCheck& c) {
  return {{"name", c.name},         {"equality", c.equality}, {"asserted", c.asserted},
          {"samples", c.samples},   {"failures", c.failures}, {"worst", num(c.worst)},
          {"ok", c.ok()}};
}

json suite_json(const SuiteReport& rep) {
  json j;
  j["suite"] = to_string(rep.suite);
  json members = json::array();
  json labels = json::array();
  for (const auto& m : rep.members) {
    json e = oracle_json(m.result);
    e["label"] = m.label;
    e["power_normalized"] = num(m.power_normalized);
    members.push_back(std::move(e));
    labels.push_back(m.label);
  }
  j["members"] = members;
  json ratio = json::array();
  for (const auto& row : rep.ratio) ratio.push_back(numbers(row));
  j["ratio"] = {{"labels", labels}, {"matrix", ratio}};
  json chains = json::array();
  for (const auto& c : rep.chains) chains.push_back(chain_json(c));
  j["chains"] = chains;
  j["finiteness_agrees"] = rep.finiteness_agrees;
  j["notes"] = rep.notes;
  j["ok"] = rep.ok;
  return j;
}

json bridge_json(const BridgeReport& rep) {
  json j;
  j["form"] = to_string(rep.form);
  j["C_discrete"] = num(rep.C_discrete);
  j["C_continuous"] = num(rep.C_continuous);
  j["factor"] = num(rep.factor);
  j["lower_slack"] = num(rep.lower_slack);
  j["upper_slack"] = num(rep.upper_slack);
  j["allowed_slack"] = num(rep.allowed_slack);
  j["discrete_witness"] = sequence_json(rep.discrete_witness);
  j["continuous_witness"] = numbers(rep.continuous_witness);
  j["strategy"] = rep.strategy;
  j["factor_ok"] = rep.factor_ok;
  return j;
}

json covering_json(const CoveringSeq& cs, const CoveringReport& check) {
  json j;
  j["D"] = num(cs.D);
  j["N"] = cs.N;
  j["anchor"] = cs.anchor ? json(*cs.anchor) : json("-inf");
  j["points"] = cs.points;
  j["levels"] = cs.levels;
  j["verified"] = check.ok;
  if (!check.ok) j["failed_clause"] = check.failed_clause;
  if (!check.detail.empty()) j["detail"] = check.detail;
  return j;
}

// Aoki-Rolewicz exponent of a quasi-triangle constant C: (2C)^alpha = 2.
double chain_exponent(double C) { return C <= 1.0 ? 1.0 : 1.0 / std::log2(2.0 * C); }

json check_kernel(const Instance& I) {
  const Kernel& K = I.kernel;
  json j;
  const MonotonicityReport& mono = K.monotonicity();
  json violations = json::array();
  for (const auto& v : mono.violations) {
    violations.push_back({{"axis", v.axis == MonotonicityViolation::Axis::First ? "first" : "second"},
                          {"i", v.i},
                          {"n", v.n},
                          {"lhs", num(v.lhs)},
                          {"rhs", num(v.rhs)}});
  }
  j["monotone"] = mono.ok;
  j["violations"] = violations;
  const ExtReal C = K.regularity();
  j["regularity_constant"] = num(C);
  j["regular"] = mono.ok && C.is_finite();
  json chain;
  if (C.is_finite() && K.size() >= 3) {
    const double alpha = chain_exponent(C.value());
    const double c = std::pow(4.0, 1.0 / alpha);
    const std::size_t max_len = std::min<std::size_t>(K.size(), 8);
    const ChainReport rep = chain_alpha_check(K, alpha, c, max_len);
    chain["alpha"] = num(alpha);
    chain["c"] = num(c);
    chain["max_len"] = max_len;
    chain["worst_ratio"] = num(rep.worst_ratio);
    chain["worst_chain"] = rep.worst_chain;
    chain["ok"] = rep.ok;
    chain["note"] = rep.note;
  } else {
    chain["skipped"] = C.is_finite() ? "window shorter than 3" : "regularity constant is infinite";
  }
  j["chain_alpha"] = chain;
  return j;
}

ConstantSet parse_set(const std::string& s) {
  if (s == "A") return ConstantSet::A;
  if (s == "D") return ConstantSet::D;
  return ConstantSet::All;
}

FormLabel require_form(const std::string& name) {
  const auto f = parse_form(name);
  if (!f) throw InputError("unknown form '" + name + "'");
  return *f;
}

json characterize(const Instance& I, std::size_t budget, std::uint64_t seed) {
  const ConstantsReport rep = hardy::characterize(I, ConstantSet::All);
  json j = constants_json(rep);
  const OracleResult gop = best_constant(FormLabel::GOP_DUAL, I, Strategy::Auto, budget, seed);
  json oracles = json::array();
  oracles.push_back(oracle_json(gop, I));
  j["predicted_over_oracle"] = num(diagnostic_ratio(rep.predicted_C, gop.estimate));
  if (I.p() >= 1.0) {
    const OracleResult sup = best_constant(FormLabel::SUP_ITER, I, Strategy::Auto, budget, seed);
    oracles.push_back(oracle_json(sup, I));
    j["predicted_sup_over_oracle"] = num(diagnostic_ratio(rep.predicted_sup_C, sup.estimate));
  }
  j["oracles"] = oracles;
  return j;
}

// Nondecreasing integer test data on the window of w.
TestSequence random_nondecreasing(const Window& win, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> step(0, 3);
  std::vector<double> b(win.length);
  double acc = 0.0;
  for (auto& x : b) x = acc += step(rng);
  return TestSequence(win.start, std::move(b));
}

TestSequence random_sequence(const Window& win, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(win.length);
  for (auto& x : a) x = u(rng);
  return TestSequence(win.start, std::move(a));
}

json discretize_report(const Instance& I, std::optional<double> D_opt) {
  json j;
  j["l24_threshold"] = num(l24_threshold(I));
  const double D = D_opt ? *D_opt : default_D(I);
  const CoveringSeq cs = covering_sequence(I.w, D);
  const CoveringReport check = verify_covering(I.w, cs);
  j["covering"] = covering_json(cs, check);
  if (I.p() <= 1.0 && I.q() < kInf && std::isfinite(D) && D >= l24_threshold(I).value()) {
    const TestSequence ones(I.window.start, std::vector<double>(I.size(), 1.0));
    const BlockDecomposition b = l24_decompose(I, ones, cs);
    j["decomposition"] = {{"sequence", "ones"},
                          {"lhs", num(b.lhs)},
                          {"block_term", num(b.block_term)},
                          {"cross_term", num(b.cross_term)},
                          {"ratio", num(b.ratio)}};
  }
  return j;
}

json verify_discretize(const Instance& I, std::size_t trials, std::uint64_t seed, bool& ok) {
  json j;
  const double D = default_D(I);
  const CoveringSeq cs = covering_sequence(I.w, D);
  const CoveringReport check = verify_covering(I.w, cs);
  j["covering"] = covering_json(cs, check);
  ok = check.ok;

  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SumBounds s = weighted_sum_bounds(I.w, random_nondecreasing(I.w.window(), rng), cs);
    if (!s.ok) ++failures;
    if (s.S > 0.0) {
      lo = std::min(lo, s.middle / s.S);
      hi = std::max(hi, s.middle / s.S);
    }
  }
  ok = ok && failures == 0;
  j["sum_bounds"] = {{"samples", trials},
                     {"failures", failures},
                     {"lower_factor", num((D - 1.0) / (3.0 * D))},
                     {"upper_factor", num(D)},
                     {"min_ratio", num(lo == kInf ? 0.0 : lo)},
                     {"max_ratio", num(hi)},
                     {"ok", failures == 0}};

  if (I.p() <= 1.0 && I.q() < kInf && std::isfinite(D) && D >= l24_threshold(I).value()) {
    double rlo = kInf;
    double rhi = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const BlockDecomposition b = l24_decompose(I, random_sequence(I.window, rng), cs);
      rlo = std::min(rlo, b.ratio);
      rhi = std::max(rhi, b.ratio);
    }
    j["decomposition"] = {{"samples", trials}, {"min_ratio", num(rlo)}, {"max_ratio", num(rhi)}};
  }
  j["ok"] = ok;
  return j;
}

json verify_bridge(const Instance& I, std::size_t budget, std::uint64_t seed, bool& ok) {
  json j;
  json checks = json::array();
  ok = true;
  for (FormLabel f : {FormLabel::GOP_DUAL, FormLabel::SUP_ITER}) {
    const BridgeReport rep = bridge_check(I, f, budget, seed);
    ok = ok && rep.factor_ok;
    checks.push_back(bridge_json(rep));
  }
  j["bridge"] = checks;

  const StepExtension X = step_extend(I);
  if (X.w.total() > 0.0) {
    const DyadicCovering dc = dyadic_covering(X.w);
    const double total = X.w.total();
    double worst = 0.0;
    for (int k = dc.N + 1; k <= dc.last(); ++k)
      worst = std::max(worst, std::fabs(X.w.tail(dc.x(k)) - std::ldexp(1.0, -k)) / total);
    const bool halves = worst <= 1e-12;
    ok = ok && halves;
    j["dyadic"] = {{"N", dc.N}, {"points", dc.points.size() - 1}, {"worst_error", num(worst)}, {"ok", halves}};
  }

  if (I.p() == 1.0 && I.q() >= 1.0 && I.q() < kInf) {
    const ExtReal cont = continuous_constant(ContinuousConstant::A1, I);
    const ExtReal disc = condition_A(1, I);
    const bool same = cont == disc || std::fabs(cont.value() - disc.value()) <=
                                          1e-12 * std::max(1.0, std::fabs(disc.value()));
    ok = ok && same;
    j["calA_1"] = {{"continuous", num(cont)}, {"discrete", num(disc)}, {"ok", same}};
  }
  j["ok"] = ok;
  return j;
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted kernel-operator inequality toolkit", "hardy"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));

  std::string file;
  std::string set = "all";
  std::string form;
  std::string strategy = "auto";
  std::string suite;
  std::size_t budget = kDefaultBudget;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> D;

  auto* ck = app.add_subcommand("check-kernel", "Monotonicity, regularity constant and chain scan");
  ck->add_option("file", file)->required();

  auto* cn = app.add_subcommand("constants", "Characterizing constants");
  cn->add_option("file", file)->required();
  cn->add_option("--set", set)->check(CLI::IsMember({"A", "D", "all"}));

  auto* ch = app.add_subcommand("characterize", "Constants, predicted best constant and oracle estimate");
  ch->add_option("file", file)->required();
  ch->add_option("--budget", budget)->check(CLI::PositiveNumber);
  ch->add_option("--seed", seed);

  auto* orc = app.add_subcommand("oracle", "Best-constant estimate for one form");
  orc->add_option("file", file)->required();
  orc->add_option("--form", form)->required();
  orc->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"vertex", "support_grid", "multistart_ascent", "auto"}));
  orc->add_option("--budget", budget)->check(CLI::PositiveNumber);
  orc->add_option("--seed", seed);

  auto* ds = app.add_subcommand("discretize", "Covering sequence and block decomposition");
  ds->add_option("file", file)->required();
  ds->add_option("--D", D)->check(CLI::Range(1.0, 1e300));

  auto* vf = app.add_subcommand("verify", "Run a verification suite");
  vf->add_option("file", file)->required();
  vf->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"six", "hux", "kernel-main", "kernel_main", "supremalpge", "scaling", "dual",
                             "bridge", "discretize"}));
  vf->add_option("--trials", trials)->check(CLI::PositiveNumber);
  vf->add_option("--seed", seed);
  vf->add_option("--budget", budget)->check(CLI::PositiveNumber);

  auto* br = app.add_subcommand("bridge", "Discrete and continuous best constants");
  br->add_option("file", file)->required();
  br->add_option("--form", form)->required();
  br->add_option("--budget", budget)->check(CLI::PositiveNumber);
  br->add_option("--seed", seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  json report;
  report["command"] = cmd->get_name();
  report["argv"] = args;
  int status = kExitOk;
  try {
    const Instance I = load_instance(file);
    report["instance"] = instance_json(file, I);
    report["regime"] = regime_json(I.exponents);
    json results;
    if (cmd == ck) {
      results = check_kernel(I);
    } else if (cmd == cn) {
      results = constants_json(hardy::characterize(I, parse_set(set)));
    } else if (cmd == ch) {
      results = characterize(I, budget, seed);
    } else if (cmd == orc) {
      const FormLabel f = require_form(form);
      results = oracle_json(best_constant(f, I, *parse_strategy(strategy), budget, seed), I);
    } else if (cmd == ds) {
      results = discretize_report(I, D);
    } else if (cmd == vf) {
      bool ok = true;
      if (suite == "bridge") {
        results = verify_bridge(I, budget, seed, ok);
      } else if (suite == "discretize") {
        results = verify_discretize(I, trials, seed, ok);
      } else {
        const SuiteReport rep = equivalence_suite(*parse_suite(suite), I, budget, seed, trials);
        ok = rep.ok;
        results = suite_json(rep);
      }
      if (!ok) status = kExitVerificationFailed;
    } else if (cmd == br) {
      const FormLabel f = require_form(form);
      const BridgeReport rep = bridge_check(I, f, budget, seed);
      if (!rep.factor_ok) status = kExitVerificationFailed;
      results = bridge_json(rep);
    }
    report["results"] = results;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  report["status"] = status == kExitOk ? "ok" : "verification_failed";

  if (format == "table")
    flatten(report, "", out);
  else
    out << report.dump(2) << "\n";
  return status;
}

}  // namespace hardy
