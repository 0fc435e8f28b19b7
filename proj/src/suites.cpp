#include "hardy/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hardy {

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Six: return "six";
    case Suite::Hux: return "hux";
    case Suite::KernelMain: return "kernel_main";
    case Suite::SupremalPge: return "supremalpge";
    case Suite::Scaling: return "scaling";
    case Suite::Dual: return "dual";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "six") return Suite::Six;
  if (name == "hux") return Suite::Hux;
  if (name == "kernel_main" || name == "kernel-main") return Suite::KernelMain;
  if (name == "supremalpge") return Suite::SupremalPge;
  if (name == "scaling") return Suite::Scaling;
  if (name == "dual") return Suite::Dual;
  return std::nullopt;
}

namespace {

constexpr double kChainTol = 1e-12;
constexpr double kBestTol = 1e-9;

void record(ChainCheck& c, double lhs, double rhs, double tol) {
  ++c.samples;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  const double excess = c.equality ? std::abs(lhs - rhs) / scale : (lhs - rhs) / scale;
  c.worst = std::max(c.worst, excess);
  if (excess > tol) ++c.failures;
}

std::vector<TestSequence> sample(const Instance& I, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> logmag(-5.0, 5.0);
  std::uniform_int_distribution<std::size_t> pick(0, I.size() - 1);
  std::vector<TestSequence> out;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> a(I.size(), 0.0);
    switch (t % 3) {
      case 0:
        for (auto& x : a) x = unit(rng);
        break;
      case 1: {
        const std::size_t k = 1 + pick(rng) % 3;
        for (std::size_t j = 0; j < k; ++j) a[pick(rng)] = std::exp(logmag(rng));
        break;
      }
      default:
        for (auto& x : a) x = std::exp(logmag(rng));
        break;
    }
    out.emplace_back(I.window.start, std::move(a));
  }
  return out;
}

struct Link {
  FormLabel lo;
  FormLabel hi;
  bool equality;
};

void run_chains(SuiteReport& r, const Instance& I, const std::vector<Link>& links,
                const std::vector<TestSequence>& as, bool asserted) {
  for (const Link& l : links) {
    ChainCheck c;
    c.name = to_string(l.lo) + (l.equality ? " = " : " <= ") + to_string(l.hi);
    c.equality = l.equality;
    c.asserted = asserted;
    for (const auto& a : as)
      record(c, functional_lhs(l.lo, I, a).value(), functional_lhs(l.hi, I, a).value(), kChainTol);
    r.chains.push_back(std::move(c));
  }
}

void require(bool ok, Suite s, const std::string& regime, const ExponentPair& e) {
  if (!ok)
    throw RegimeError("suite " + to_string(s) + " is defined for " + regime +
                      "; got (p = " + format_number(e.p) + ", q = " + format_number(e.q) + ")");
}

SuiteMember member(std::string label, FormLabel f, const Instance& I, std::size_t budget,
                   std::uint64_t seed) {
  SuiteMember m;
  m.label = std::move(label);
  m.result = best_constant(f, I, Strategy::Auto, budget, seed);
  m.power_normalized = inner_powered(f) ? ext_pow(m.result.estimate, I.p()) : m.result.estimate;
  return m;
}

}  // namespace

SuiteReport equivalence_suite(Suite suite, const Instance& I, std::size_t budget,
                              std::uint64_t seed, std::size_t trials) {
  using F = FormLabel;
  const ExponentPair& e = I.exponents;
  SuiteReport r;
  r.suite = suite;

  std::vector<F> forms;
  std::vector<Link> links;
  bool needs_monotone = true;
  const Instance* target = &I;
  std::optional<Instance> derived;

  switch (suite) {
    case Suite::Six:
      require(e.p <= 1.0, suite, "p <= 1", e);
      forms = {F::B1, F::B2, F::B3, F::B4, F::B5, F::B6};
      links = {{F::B1, F::B2, false}, {F::B2, F::B3, false}, {F::B3, F::B4, false},
               {F::B4, F::B6, false}, {F::B3, F::B5, false}, {F::B5, F::B6, false}};
      break;
    case Suite::Hux:
      require(e.p <= 1.0, suite, "p <= 1", e);
      if (!sequence_data(I.kernel.spec()))
        throw std::invalid_argument("suite hux needs a row or sup kernel (raw sequence u)");
      forms = {F::SB1, F::SB2, F::SB3, F::SB4, F::SB5, F::SB6, F::SB7, F::SB8};
      links = {{F::SB1, F::SB2, true},  {F::SB2, F::SB3, false}, {F::SB3, F::SB4, true},
               {F::SB4, F::SB5, false}, {F::SB5, F::SB8, false}, {F::SB4, F::SB6, false},
               {F::SB6, F::SB7, true},  {F::SB7, F::SB8, false}};
      needs_monotone = false;
      break;
    case Suite::KernelMain:
      require(e.p <= 1.0, suite, "p <= 1", e);
      forms = {F::WEAK, F::GOP_DUAL, F::STRONG};
      links = {{F::WEAK, F::GOP_DUAL, false}, {F::GOP_DUAL, F::STRONG, false}};
      break;
    case Suite::SupremalPge:
      require(e.p >= 1.0 && e.p < kInf, suite, "1 <= p < inf", e);
      forms = {F::SUP_ITER, F::CPRIME, F::CDPRIME};
      links = {{F::CDPRIME, F::CPRIME, false}};
      break;
    case Suite::Scaling: {
      require(e.p >= 1.0 && e.p < kInf && e.q < kInf, suite, "1 <= p < inf, q < inf", e);
      derived.emplace(e, WeightSeq(I.window.start, std::vector<double>(I.size(), 1.0)), I.w,
                      KernelSpec{RowSequenceKernel{I.v}});
      target = &*derived;
      forms = {F::SCALE3, F::SCALE4};
      if (e.p == 1.0) links = {{F::SCALE3, F::SCALE4, false}};
      needs_monotone = false;
      break;
    }
    case Suite::Dual:
      forms = {F::GOP};
      needs_monotone = false;
      break;
  }

  for (F f : forms) r.members.push_back(member(to_string(f), f, *target, budget, seed));

  const bool monotone = target->kernel.monotonicity().ok;
  const bool asserted = monotone || !needs_monotone;
  if (!asserted) r.notes.push_back("kernel is not monotone; chains are reported but not asserted");

  const auto as = sample(*target, trials, seed);
  run_chains(r, *target, links, as, asserted);

  if (suite == Suite::KernelMain && e.p == 1.0) {
    ChainCheck c;
    c.name = "best GOP_DUAL = best STRONG";
    c.equality = true;
    record(c, r.members[1].result.estimate.value(), r.members[2].result.estimate.value(), kBestTol);
    r.chains.push_back(std::move(c));
  }

  if (suite == Suite::Dual) {
    const Instance R = reverse_instance(I);
    r.members.push_back(member("GOP_DUAL(reversed)", F::GOP_DUAL, R, budget, seed));
    ChainCheck per;
    per.name = "GOP(a) = GOP_DUAL(reversed a)";
    per.equality = true;
    for (const auto& a : as)
      record(per, functional_lhs(F::GOP, I, a).value(),
             functional_lhs(F::GOP_DUAL, R, reverse_sequence(a)).value(), kChainTol);
    r.chains.push_back(std::move(per));
    ChainCheck best;
    best.name = "best GOP = best GOP_DUAL(reversed)";
    best.equality = true;
    const ExtReal g = r.members[0].result.estimate;
    const ExtReal gd = r.members[1].result.estimate;
    if (g.is_inf() || gd.is_inf()) {
      ++best.samples;
      if (g != gd) ++best.failures;
    } else {
      record(best, g.value(), gd.value(), kBestTol);
    }
    r.chains.push_back(std::move(best));
  }

  const std::size_t m = r.members.size();
  r.ratio.assign(m, std::vector<double>(m, 1.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      r.ratio[i][j] = diagnostic_ratio(r.members[i].result.estimate, r.members[j].result.estimate);

  for (const auto& mem : r.members)
    if (mem.result.estimate.is_finite() != r.members.front().result.estimate.is_finite())
      r.finiteness_agrees = false;

  r.ok = r.finiteness_agrees;
  for (const auto& c : r.chains)
    if (c.asserted && !c.ok()) r.ok = false;
  return r;
}

}  // namespace hardy
