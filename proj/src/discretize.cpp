#include "hardy/discretize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardy {
namespace {

// t <= D^j without dividing, so integer data compares exactly.
bool le_pow(double t, double D, int j) {
  if (j >= 0) return t <= std::pow(D, j);
  return t * std::pow(D, -j) <= 1.0;
}

double tail(const WeightSeq& w, std::optional<Index> n) {
  return n ? tail_sum(w, *n).value() : w.total();
}

// tail(n_{k-1} + 1), with the -inf anchor giving the total mass.
double tail_after(const WeightSeq& w, std::optional<Index> n) {
  return n ? tail_sum(w, *n + 1).value() : w.total();
}

std::optional<Index> previous(const CoveringSeq& cs, int k) {
  if (k == cs.N) return cs.anchor;
  return cs.at(k - 1);
}

}  // namespace

int tail_level(double t, double D) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("tail_level: t must be positive");
  // Level m satisfies D^{j-1} < t <= D^j with j = 1 - m.
  int j = static_cast<int>(std::ceil(std::log(t) / std::log(D)));
  while (!le_pow(t, D, j)) ++j;
  while (le_pow(t, D, j - 1)) --j;
  return 1 - j;
}

CoveringSeq covering_sequence(const WeightSeq& w, double D) {
  if (!(D > 1.0) || !std::isfinite(D)) throw std::invalid_argument("covering ratio D must be > 1");
  if (w.is_zero()) throw std::invalid_argument("empty weight");
  CoveringSeq cs;
  cs.D = D;
  const Window win = w.window();
  for (Index j = win.first(); j <= win.last(); ++j) {
    const double t = tail_sum(w, j).value();
    if (t == 0.0) break;
    const int m = tail_level(t, D);
    if (!cs.levels.empty() && cs.levels.back() == m) {
      cs.points.back() = j;
    } else {
      cs.levels.push_back(m);
      cs.points.push_back(j);
    }
  }
  cs.N = cs.levels.front();
  return cs;
}

CoveringReport verify_covering(const WeightSeq& w, const CoveringSeq& cs) {
  auto fail = [](std::string clause, std::string detail) {
    return CoveringReport{false, std::move(clause), std::move(detail)};
  };
  if (cs.points.empty()) return fail("order", "no points");
  if (cs.anchor && *cs.anchor >= cs.points.front())
    return fail("order", "anchor not below n_N");
  for (std::size_t k = 1; k < cs.points.size(); ++k)
    if (cs.points[k - 1] >= cs.points[k]) return fail("order", "points not strictly increasing");

  const Index nM = cs.points.back();
  if (!(tail_sum(w, nM).value() > 0.0) || tail_sum(w, nM + 1).value() != 0.0)
    return fail("i", "tail(n_M) must be positive and vanish beyond n_M");

  const double D = cs.D;
  for (int k = cs.N; k <= cs.M(); ++k) {
    if (tail_after(w, previous(cs, k)) > D * tail_sum(w, cs.at(k)).value())
      return fail("ii", "k = " + std::to_string(k));
  }
  for (int k = cs.N + 1; k < cs.M(); ++k) {
    if (D * tail_sum(w, cs.at(k) + 1).value() > tail(w, previous(cs, k)))
      return fail("iii", "k = " + std::to_string(k));
  }
  return {};
}

SumBounds weighted_sum_bounds(const WeightSeq& w, const TestSequence& b, const CoveringSeq& cs) {
  const Window win = w.window();
  for (Index n = win.first(); n < win.last(); ++n)
    if (b[n] > b[n + 1])
      throw std::invalid_argument("b must be nondecreasing (fails at n = " + std::to_string(n) +
                                  ")");
  SumBounds out;
  for (Index n = win.first(); n <= win.last(); ++n) out.middle += w[n] * b[n];
  for (Index n : cs.points) out.S += tail_sum(w, n).value() * b[n];
  const double D = cs.D;
  out.lower = (D - 1.0) / (3.0 * D) * out.S;
  out.upper = D * out.S;
  out.ok = (D - 1.0) * out.S <= 3.0 * D * out.middle && out.middle <= D * out.S;
  return out;
}

ExtReal l24_threshold(const Instance& I) {
  const double r = I.q() / I.p();
  const double c = std::max(1.0, std::pow(2.0, r - 1.0));
  const ExtReal cstar = regularity_constant(power_kernel(I.kernel, I.p()));
  return ExtReal(2.0 * c * c) * ext_pow(cstar, r);
}

double default_D(const Instance& I) {
  const ExtReal t = l24_threshold(I);
  if (t.is_inf()) throw std::domain_error("U^p is not regular on this window");
  return std::max(2.0, std::ceil(t.value()));
}

BlockDecomposition l24_decompose(const Instance& I, const TestSequence& a, const CoveringSeq& cs) {
  const double p = I.p();
  const double q = I.q();
  if (!(p <= 1.0) || q == kInf) throw RegimeError("block decomposition needs 0 < p <= 1, q < inf");
  const ExtReal threshold = l24_threshold(I);
  if (threshold.is_inf()) throw std::domain_error("U^p is not regular on this window");
  if (cs.D < threshold.value() || !(cs.D > 1.0))
    throw std::invalid_argument("covering ratio D = " + format_number(cs.D) +
                                " is below the required threshold " +
                                format_number(std::max(threshold.value(), 1.0)));
  const double r = q / p;
  const Window win = I.window;
  const auto U = [&](Index i, Index n) { return I.kernel.eval(i, n).value(); };
  const auto ap = [&](Index i) { return std::pow(a[i], p); };

  BlockDecomposition out;
  for (Index n = win.first(); n <= win.last(); ++n) {
    double inner = 0.0;
    for (Index i = win.first(); i <= n; ++i) inner += std::pow(U(i, n), p) * ap(i);
    out.lhs += I.w[n] * std::pow(inner, r);
  }
  for (int k = cs.N; k <= cs.M(); ++k) {
    const Index nk = cs.at(k);
    const std::optional<Index> prev = previous(cs, k);
    const Index from = prev ? *prev + 1 : win.first();
    double inner = 0.0;
    for (Index i = from; i <= nk; ++i) inner += std::pow(U(i, nk), p) * ap(i);
    const double t = tail_sum(I.w, nk).value();
    out.block_term += t * std::pow(inner, r);
    if (k > cs.N) {
      double head = 0.0;
      for (Index i = win.first(); i <= *prev; ++i) head += ap(i);
      out.cross_term += t * std::pow(U(*prev, nk), q) * std::pow(head, r);
    }
  }
  out.ratio = diagnostic_ratio(ExtReal(out.lhs), ExtReal(out.block_term + out.cross_term));
  return out;
}

}  // namespace hardy
