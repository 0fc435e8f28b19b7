#include "hardy/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace hardy {

StepFunction::StepFunction(Index start_, std::vector<double> values_)
    : start(start_), values(std::move(values_)) {
  for (double x : values)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw std::invalid_argument("step function values must be finite and nonnegative");
}

double StepFunction::operator()(double x) const {
  if (!(x > bottom()) || x > top()) return 0.0;
  const auto k = static_cast<std::size_t>(static_cast<Index>(std::ceil(x)) - start);
  return k < size() ? values[k] : 0.0;
}

double StepFunction::total() const {
  double s = 0.0;
  for (double x : values) s += x;
  return s;
}

double StepFunction::cumulative(double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double left = bottom() + static_cast<double>(k);
    const double len = std::clamp(x - left, 0.0, 1.0);
    if (len <= 0.0) break;
    s += values[k] * len;
  }
  return s;
}

double StepFunction::tail(double x) const {
  double s = 0.0;
  for (std::size_t k = size(); k-- > 0;) {
    const double right = bottom() + static_cast<double>(k) + 1.0;
    const double len = std::clamp(right - x, 0.0, 1.0);
    if (len <= 0.0) break;
    s += values[k] * len;
  }
  return s;
}

double StepExtension::kernel(double s, double t) const {
  const Index is = static_cast<Index>(std::ceil(s)) - start;
  const Index it = static_cast<Index>(std::ceil(t)) - start;
  const auto L = static_cast<Index>(size);
  if (is < 0 || it < 0 || is >= L || it >= L || is > it) return 0.0;
  return cell_kernel(static_cast<std::size_t>(is), static_cast<std::size_t>(it));
}

StepExtension step_extend(const Instance& I) {
  StepExtension S;
  S.start = I.window.start;
  S.size = I.size();
  S.v = StepFunction(S.start, std::vector<double>(I.v.values().begin(), I.v.values().end()));
  S.w = StepFunction(S.start, std::vector<double>(I.w.values().begin(), I.w.values().end()));
  S.U.assign(S.size * S.size, 0.0);
  for (std::size_t i = 0; i < S.size; ++i)
    for (std::size_t n = i; n < S.size; ++n) S.U[i * S.size + n] = I.kernel.local(i, n);
  return S;
}

double tail_invert(const StepFunction& w, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("tail level must be positive");
  const double total = w.total();
  if (level > total)
    throw std::invalid_argument("tail level " + format_number(level) + " exceeds the total mass " +
                                format_number(total));
  double right = 0.0;  // mass to the right of the current cell
  for (std::size_t k = w.size(); k-- > 0;) {
    const double e = w.bottom() + static_cast<double>(k) + 1.0;
    if (right == level) return e;
    if (right + w.values[k] >= level) return e - (level - right) / w.values[k];
    right += w.values[k];
  }
  return w.bottom();
}

DyadicCovering dyadic_covering(const StepFunction& w, double resolution) {
  const double total = w.total();
  if (!(total > 0.0)) throw std::invalid_argument("dyadic covering needs positive mass (w is zero)");
  DyadicCovering c;
  int N = static_cast<int>(std::floor(1.0 - std::log2(total)));
  while (std::ldexp(1.0, -N) >= total) ++N;
  while (std::ldexp(1.0, 1 - N) < total) --N;
  c.N = N;
  c.points.push_back(-kInf);
  c.masses.push_back(total);
  for (int k = N;; ++k) {
    const double mass = std::ldexp(1.0, -k);
    if (mass < resolution * total) break;
    c.points.push_back(tail_invert(w, mass));
    c.masses.push_back(mass);
  }
  return c;
}

namespace {

// Integral over (0, len) of (A + B u)^q, A, B >= 0.
double affine_power_integral(double A, double B, double len, double q) {
  if (len <= 0.0) return 0.0;
  if (B == 0.0) return A > 0.0 ? std::pow(A, q) * len : 0.0;
  if (A == 0.0) return std::pow(B, q) * std::pow(len, q + 1.0) / (q + 1.0);
  return std::pow(A, q + 1.0) * std::expm1((q + 1.0) * std::log1p(B * len / A)) / (B * (q + 1.0));
}

std::string regime_text(const Instance& I) {
  return "; got (p = " + format_number(I.p()) + ", q = " + format_number(I.q()) + ")";
}

// sigma_p from the window bottom to a point of cell k at relative offset t.
struct Sigma {
  double p;
  double pc = 0.0;
  std::vector<double> M;  // p = 1: max_{j<=k} 1/v_j
  std::vector<double> S;  // p > 1: sum_{j<k} v_j^{1-p'}
  std::vector<double> a;  // p > 1: v_k^{1-p'}

  Sigma(const StepExtension& X, double p_) : p(p_) {
    const std::size_t L = X.size;
    if (p == 1.0) {
      double m = 0.0;
      for (std::size_t k = 0; k < L; ++k) {
        m = std::max(m, quotient(ExtReal(1.0), ExtReal(X.v.values[k])).value());
        M.push_back(m);
      }
    } else {
      pc = conjugate(p);
      double s = 0.0;
      for (std::size_t k = 0; k < L; ++k) {
        S.push_back(s);
        a.push_back(std::pow(X.v.values[k], 1.0 - pc));
        s += a.back();
      }
    }
  }

  // Infinite somewhere in (cell start, t] for every t > 0.
  [[nodiscard]] bool infinite(std::size_t k) const {
    return p == 1.0 ? M[k] == kInf : (S[k] == kInf || a[k] == kInf);
  }
  [[nodiscard]] double at(std::size_t k, double t) const {
    return p == 1.0 ? M[k] : std::pow(S[k] + a[k] * t, 1.0 / pc);
  }
};

// Integral over (0,1) of (T + b(1-t))^r (S + a t)^s.
double mixed_integral(double T, double b, double S, double a, double r, double s) {
  if (s == 0.0 || a == 0.0) return std::pow(S, s) * affine_power_integral(T, b, 1.0, r);
  if (b == 0.0) return std::pow(T, r) * affine_power_integral(S, a, 1.0, s);
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) { return std::pow(T + b * (1.0 - t), r) * std::pow(S + a * t, s); }, 0.0, 1.0);
}

double pow_or_zero(double x, double e) { return x > 0.0 ? std::pow(x, e) : 0.0; }

ExtReal calA1(const StepExtension& X, const Instance& I) {
  const double p = I.p();
  const double q = I.q();
  const std::size_t L = X.size;
  const Sigma sig(X, p);
  ExtReal best;
  for (std::size_t k = 0; k < L; ++k) {
    double T = 0.0;
    for (std::size_t m = k + 1; m < L; ++m) T += pow_or_zero(X.cell_kernel(k, m), q) * X.w.values[m];
    const double b = pow_or_zero(X.cell_kernel(k, k), q) * X.w.values[k];
    if (sig.infinite(k)) {
      if (T + b > 0.0) return ExtReal::infinity();
      continue;
    }
    auto g = [&](double t) { return sig.at(k, t) * std::pow(T + b * (1.0 - t), 1.0 / q); };
    double v = std::max(g(0.0), g(1.0));
    if (p > 1.0 && b > 0.0) {
      const double a = sig.a[k];
      const double ts = (a * q * (T + b) - b * sig.pc * sig.S[k]) / (a * b * (q + sig.pc));
      v = std::max(v, g(std::clamp(ts, 0.0, 1.0)));
    }
    best = max(best, ExtReal(v));
  }
  return best;
}

double cell_sup_kernel_weight(const StepExtension& X, std::size_t k) {
  double e = 0.0;
  for (std::size_t m = k; m < X.size; ++m) e = std::max(e, X.cell_kernel(k, m) * X.w.values[m]);
  return e;
}

ExtReal calA2(const StepExtension& X, const Instance& I) {
  const Sigma sig(X, I.p());
  ExtReal best;
  for (std::size_t k = 0; k < X.size; ++k) {
    const ExtReal E(cell_sup_kernel_weight(X, k));
    const ExtReal s = sig.infinite(k) ? ExtReal::infinity() : ExtReal(sig.at(k, 1.0));
    best = max(best, s * E);
  }
  return best;
}

ExtReal calA3(const StepExtension& X) {
  ExtReal best;
  for (std::size_t k = 0; k < X.size; ++k)
    best = max(best, quotient(ExtReal(cell_sup_kernel_weight(X, k)), ExtReal(X.v.values[k])));
  return best;
}

ExtReal calA4(const StepExtension& X, const Instance& I) {
  const double q = I.q();
  double total = 0.0;
  for (std::size_t k = 0; k < X.size; ++k) {
    ExtReal A;
    for (std::size_t j = 0; j < k; ++j)
      A += quotient(ExtReal(X.cell_kernel(j, k)), ExtReal(X.v.values[j]));
    const ExtReal B = quotient(ExtReal(X.cell_kernel(k, k)), ExtReal(X.v.values[k]));
    if (X.w.values[k] == 0.0) continue;
    if (A.is_inf() || B.is_inf()) return ExtReal::infinity();
    total += X.w.values[k] * affine_power_integral(A.value(), B.value(), 1.0, q);
  }
  return ExtReal(std::pow(total, 1.0 / q));
}

ExtReal calA12_13(const StepExtension& X, const Instance& I, bool second) {
  const double p = I.p();
  const double q = I.q();
  const double r = q / (p - q);
  const Sigma sig(X, p);
  const double s = p == 1.0 ? 0.0 : r / sig.pc;
  double total = 0.0;
  for (std::size_t k = 0; k < X.size; ++k) {
    double G = 0.0;
    for (std::size_t j = 0; j <= k; ++j) G = std::max(G, X.cell_kernel(j, k));
    const double coef = X.w.values[k] * (second ? pow_or_zero(G, q) : pow_or_zero(G, p * r));
    if (coef == 0.0) continue;
    double T = 0.0;
    double b = 0.0;
    for (std::size_t m = k + 1; m < X.size; ++m)
      T += (second ? pow_or_zero(X.cell_kernel(k, m), q) : 1.0) * X.w.values[m];
    b = (second ? pow_or_zero(X.cell_kernel(k, k), q) : 1.0) * X.w.values[k];
    if (T + b == 0.0) continue;
    if (sig.infinite(k)) return ExtReal::infinity();
    const double J = p == 1.0 ? std::pow(sig.M[k], r) * affine_power_integral(T, b, 1.0, r)
                              : mixed_integral(T, b, sig.S[k], sig.a[k], r, s);
    total += coef * J;
  }
  return ExtReal(std::pow(total, (p - q) / (p * q)));
}

}  // namespace

std::string to_string(ContinuousConstant c) {
  switch (c) {
    case ContinuousConstant::A1: return "calA_1";
    case ContinuousConstant::A2: return "calA_2";
    case ContinuousConstant::A3: return "calA_3";
    case ContinuousConstant::A4: return "calA_4";
    case ContinuousConstant::A12: return "calA_12";
    case ContinuousConstant::A13: return "calA_13";
  }
  return "?";
}

std::optional<ContinuousConstant> parse_continuous_constant(std::string_view name) {
  for (auto c : {ContinuousConstant::A1, ContinuousConstant::A2, ContinuousConstant::A3,
                 ContinuousConstant::A4, ContinuousConstant::A12, ContinuousConstant::A13})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

ExtReal continuous_constant(ContinuousConstant c, const Instance& I) {
  const double p = I.p();
  const double q = I.q();
  const StepExtension X = step_extend(I);
  switch (c) {
    case ContinuousConstant::A1:
      if (!(p >= 1.0 && p <= q && q < kInf))
        throw RegimeError("calA_1 is defined for 1 <= p <= q < inf" + regime_text(I));
      return calA1(X, I);
    case ContinuousConstant::A2:
      if (!(p >= 1.0 && p < kInf && q == kInf))
        throw RegimeError("calA_2 is defined for 1 <= p < q = inf" + regime_text(I));
      return calA2(X, I);
    case ContinuousConstant::A3:
      if (!(p == kInf && q == kInf)) throw RegimeError("calA_3 is defined for p = q = inf" + regime_text(I));
      return calA3(X);
    case ContinuousConstant::A4:
      if (!(p == kInf && q < kInf)) throw RegimeError("calA_4 is defined for 0 < q < p = inf" + regime_text(I));
      return calA4(X, I);
    case ContinuousConstant::A12:
    case ContinuousConstant::A13:
      if (!(p >= 1.0 && p < kInf && q < p))
        throw RegimeError(to_string(c) + " is defined for 0 < q < p, 1 <= p < inf" + regime_text(I));
      return calA12_13(X, I, c == ContinuousConstant::A13);
  }
  throw std::logic_error("unknown continuous constant");
}

double continuous_lhs(FormLabel form, const StepExtension& S, const std::vector<double>& f,
                      std::size_t sub, double q, double kernel_power) {
  if (form != FormLabel::GOP_DUAL && form != FormLabel::SUP_ITER)
    throw std::invalid_argument("continuous form must be GOP_DUAL or SUP_ITER");
  const std::size_t L = S.size;
  if (sub == 0 || f.size() != sub * L) throw std::invalid_argument("step function does not match the grid");
  const double h = 1.0 / static_cast<double>(sub);
  auto Up = [&](std::size_t i, std::size_t n) {
    const double u = S.cell_kernel(i, n);
    return kernel_power == 1.0 ? u : pow_or_zero(u, kernel_power);
  };
  std::vector<double> cell(L, 0.0);
  std::vector<double> cum(L, 0.0);
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t j = 0; j < sub; ++j) cell[k] += f[k * sub + j] * h;
    cum[k] = (k ? cum[k - 1] : 0.0) + cell[k];
  }
  const bool sup = form == FormLabel::SUP_ITER;
  double total = 0.0;
  for (std::size_t k = 0; k < L; ++k) {
    const double wk = S.w.values[k];
    if (wk == 0.0) continue;
    double base = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      base = sup ? std::max(base, Up(j, k) * cum[j]) : base + Up(j, k) * cell[j];
    const double ukk = Up(k, k);
    double partial = sup ? (k ? cum[k - 1] : 0.0) : 0.0;
    for (std::size_t j = 0; j < sub; ++j) {
      const double fj = f[k * sub + j];
      const double B = ukk * fj;
      if (q == kInf) {
        partial += fj * h;
        continue;
      }
      if (sup) {
        const double A = ukk * partial;
        if (base >= A + B * h)
          total += wk * pow_or_zero(base, q) * h;
        else if (base <= A)
          total += wk * affine_power_integral(A, B, h, q);
        else {
          const double uc = (base - A) / B;
          total += wk * (pow_or_zero(base, q) * uc + affine_power_integral(base, B, h - uc, q));
        }
      } else {
        total += wk * affine_power_integral(base + ukk * partial, B, h, q);
      }
      partial += fj * h;
    }
    if (q == kInf) {
      const double end = sup ? std::max(base, ukk * partial) : base + ukk * partial;
      total = std::max(total, wk * end);
    }
  }
  return q == kInf ? total : std::pow(total, 1.0 / q);
}

BridgeReport bridge_check(const Instance& I, FormLabel form, std::size_t budget, std::uint64_t seed) {
  if (form != FormLabel::GOP_DUAL && form != FormLabel::SUP_ITER)
    throw std::invalid_argument("bridge form must be GOP_DUAL or SUP_ITER");
  if (!(I.p() >= 1.0)) throw RegimeError("bridge_check is defined for 1 <= p <= inf" + regime_text(I));
  const StepExtension X = step_extend(I);
  const std::size_t L = X.size;
  const double p = I.p();
  const double q = I.q();

  BridgeReport rep;
  rep.form = form;
  rep.factor = q == kInf ? 2.0 : std::pow(2.0, 1.0 + 1.0 / q);

  const OracleResult disc = best_constant(form, I, Strategy::Auto, budget, seed);

  RatioProblem P;
  P.dim = 2 * L;
  P.p = p;
  for (std::size_t k = 0; k < L; ++k)
    for (int half = 0; half < 2; ++half) P.weights.push_back(p == kInf ? X.v.values[k] : X.v.values[k] / 2.0);
  P.lhs = [&](std::span<const double> f) {
    return continuous_lhs(form, X, std::vector<double>(f.begin(), f.end()), 2, q);
  };
  auto cont_ratio = [&](const std::vector<double>& f) {
    return quotient(ExtReal(P.lhs(f)), ExtReal(rhs_value(P, f)));
  };

  std::vector<double> lifted(2 * L);
  for (std::size_t k = 0; k < L; ++k) lifted[2 * k] = lifted[2 * k + 1] = disc.witness[I.at(k)];
  const SearchResult cont = maximize_ratio(P, Strategy::Auto, std::max(budget, P.dim), seed, {lifted});

  rep.C_continuous = cont.estimate;
  rep.continuous_witness = cont.witness;
  if (const ExtReal lr = cont_ratio(lifted); lr > rep.C_continuous) {
    rep.C_continuous = lr;
    rep.continuous_witness = lifted;
  }

  rep.C_discrete = disc.estimate;
  rep.discrete_witness = disc.witness;
  std::vector<double> averaged(L);
  for (std::size_t k = 0; k < L; ++k)
    averaged[k] = (rep.continuous_witness[2 * k] + rep.continuous_witness[2 * k + 1]) / 2.0;
  const TestSequence a(I.window.start, averaged);
  if (const ExtReal dr = quotient(functional_lhs(form, I, a), form_rhs(form, I, a)); dr > rep.C_discrete) {
    rep.C_discrete = dr;
    rep.discrete_witness = a;
  }
  rep.strategy = disc.strategy + " / " + cont.strategy;

  const ExtReal cd = rep.C_discrete;
  const ExtReal cc = rep.C_continuous;
  if (cd.is_inf() != cc.is_inf()) {
    rep.lower_slack = cc.is_inf() ? kInf : 0.0;
    rep.upper_slack = cd.is_inf() ? kInf : 0.0;
  } else if (cd.is_finite()) {
    rep.lower_slack = std::max(0.0, diagnostic_ratio(cc, cd) - 1.0);
    rep.upper_slack = std::max(0.0, diagnostic_ratio(cd, ExtReal(rep.factor * cc.value())) - 1.0);
  }
  rep.factor_ok = rep.lower_slack <= rep.allowed_slack && rep.upper_slack <= rep.allowed_slack;
  return rep;
}

std::string to_string(LemmaId l) {
  switch (l) {
    case LemmaId::L1: return "L1";
    case LemmaId::L2: return "L2";
    case LemmaId::L3: return "L3";
  }
  return "?";
}

std::optional<LemmaId> parse_lemma(std::string_view name) {
  if (name == "L1") return LemmaId::L1;
  if (name == "L2") return LemmaId::L2;
  if (name == "L3") return LemmaId::L3;
  return std::nullopt;
}

LemmaDecomposition lemma_decompose(LemmaId which, const Instance& I, const StepFunction& f) {
  const double p = I.p();
  const double q = I.q();
  if (!(q < kInf)) throw RegimeError(to_string(which) + " is defined for 0 < q < inf" + regime_text(I));
  if (which != LemmaId::L1 && !(p >= 1.0 && p < kInf))
    throw RegimeError(to_string(which) + " is defined for 1 <= p < inf, 0 < q < inf" + regime_text(I));

  const StepExtension X = step_extend(I);
  const std::size_t L = X.size;
  std::vector<double> fl(L, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Index n = f.start + static_cast<Index>(k);
    if (I.window.contains(n))
      fl[static_cast<std::size_t>(n - I.window.start)] = f.values[k];
    else if (f.values[k] != 0.0)
      throw std::invalid_argument("step function is not supported in the instance window");
  }
  const StepFunction F(I.window.start, fl);

  LemmaDecomposition out;
  out.covering = dyadic_covering(X.w);
  const DyadicCovering& cov = out.covering;

  const bool l1 = which == LemmaId::L1;
  const double kp = l1 ? 1.0 : p;
  const double Q = l1 ? q : q / p;
  out.lhs = continuous_lhs(which == LemmaId::L2 ? FormLabel::GOP_DUAL : FormLabel::SUP_ITER, X, fl, 1, Q, kp);

  auto cum = [&](double x) { return x == -kInf ? 0.0 : F.cumulative(x); };
  double block = 0.0;
  double cross = 0.0;
  for (int k = cov.N; k <= cov.last(); ++k) {
    const double xk = cov.x(k);
    const double xp = cov.x(k - 1);
    const double mass = cov.masses[static_cast<std::size_t>(k - cov.N + 1)];
    const double base = cum(xp);
    double inner = 0.0;
    for (std::size_t c = 0; c < L; ++c) {
      const double left = F.bottom() + static_cast<double>(c);
      const double right = std::min(left + 1.0, xk);
      if (right <= xp || right <= left) continue;
      const double u = pow_or_zero(X.kernel(right, xk), kp);
      if (which == LemmaId::L2)
        inner += u * fl[c] * (right - std::max(left, xp));
      else
        inner = std::max(inner, u * (cum(right) - base));
    }
    block += mass * pow_or_zero(inner, Q);
    if (xp != -kInf) cross += mass * pow_or_zero(X.kernel(xp, xk), q) * pow_or_zero(base, Q);
  }
  out.block_part = pow_or_zero(block, 1.0 / Q);
  out.cross_part = pow_or_zero(cross, 1.0 / Q);
  out.ratio = diagnostic_ratio(ExtReal(out.lhs), ExtReal(out.block_part + out.cross_part));
  return out;
}

}  // namespace hardy
