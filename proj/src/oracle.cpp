#include "hardy/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hardy {
namespace {

struct FormInfo {
  FormLabel label;
  const char* name;
};

constexpr std::array kForms{
    FormInfo{FormLabel::GOP_DUAL, "GOP_DUAL"}, FormInfo{FormLabel::GOP, "GOP"},
    FormInfo{FormLabel::WEAK, "WEAK"},         FormInfo{FormLabel::STRONG, "STRONG"},
    FormInfo{FormLabel::SUP_ITER, "SUP_ITER"}, FormInfo{FormLabel::CPRIME, "CPRIME"},
    FormInfo{FormLabel::CDPRIME, "CDPRIME"},   FormInfo{FormLabel::B1, "B1"},
    FormInfo{FormLabel::B2, "B2"},             FormInfo{FormLabel::B3, "B3"},
    FormInfo{FormLabel::B4, "B4"},             FormInfo{FormLabel::B5, "B5"},
    FormInfo{FormLabel::B6, "B6"},             FormInfo{FormLabel::BT1, "BT1"},
    FormInfo{FormLabel::BT2, "BT2"},           FormInfo{FormLabel::BT3, "BT3"},
    FormInfo{FormLabel::BT4, "BT4"},           FormInfo{FormLabel::BT5, "BT5"},
    FormInfo{FormLabel::BT6, "BT6"},           FormInfo{FormLabel::SB1, "SB1"},
    FormInfo{FormLabel::SB2, "SB2"},           FormInfo{FormLabel::SB3, "SB3"},
    FormInfo{FormLabel::SB4, "SB4"},           FormInfo{FormLabel::SB5, "SB5"},
    FormInfo{FormLabel::SB6, "SB6"},           FormInfo{FormLabel::SB7, "SB7"},
    FormInfo{FormLabel::SB8, "SB8"},           FormInfo{FormLabel::SCALE3, "SCALE3"},
    FormInfo{FormLabel::SCALE4, "SCALE4"},
};

// Shape of the inner functional X_n in forward orientation (indices i <= n).
enum class Shape {
  Sum,         // sum_i C(i,n) a_i
  Sup,         // max_i C(i,n) a_i
  SupRunMax,   // max_i C(i,n) max_{j<=i} a_j
  SupRunSum,   // max_i C(i,n) sum_{j<=i} a_j
  PSupRunSum,  // (max_i C(i,n)^p sum_{j<=i} a_j^p)^{1/p}
  PSum,        // (sum_i C(i,n)^p a_i^p)^{1/p}
};

// Which coefficient table C(i,n) a form reads.
enum class Table { Kernel, Row, RangeSup, Scale3, Scale4 };

struct Layout {
  Shape shape;
  Table table;
  bool reflected;
};

Layout layout_of(FormLabel f) {
  using F = FormLabel;
  using S = Shape;
  using T = Table;
  switch (f) {
    case F::GOP_DUAL: case F::B4: return {S::Sum, T::Kernel, false};
    case F::GOP: case F::BT4: return {S::Sum, T::Kernel, true};
    case F::WEAK: case F::B1: return {S::Sup, T::Kernel, false};
    case F::BT1: return {S::Sup, T::Kernel, true};
    case F::B2: return {S::SupRunMax, T::Kernel, false};
    case F::BT2: return {S::SupRunMax, T::Kernel, true};
    case F::SUP_ITER: case F::B3: return {S::SupRunSum, T::Kernel, false};
    case F::BT3: return {S::SupRunSum, T::Kernel, true};
    case F::B5: case F::CDPRIME: return {S::PSupRunSum, T::Kernel, false};
    case F::BT5: return {S::PSupRunSum, T::Kernel, true};
    case F::B6: case F::STRONG: case F::CPRIME: return {S::PSum, T::Kernel, false};
    case F::BT6: return {S::PSum, T::Kernel, true};
    case F::SB1: return {S::SupRunMax, T::Row, false};
    case F::SB2: return {S::Sup, T::RangeSup, false};
    case F::SB3: return {S::SupRunSum, T::Row, false};
    case F::SB4: return {S::SupRunSum, T::RangeSup, false};
    case F::SB5: return {S::Sum, T::RangeSup, false};
    case F::SB6: return {S::PSupRunSum, T::Row, false};
    case F::SB7: return {S::PSupRunSum, T::RangeSup, false};
    case F::SB8: return {S::PSum, T::RangeSup, false};
    case F::SCALE3: return {S::Sum, T::Scale3, false};
    case F::SCALE4: return {S::PSum, T::Scale4, false};
  }
  throw std::logic_error("unknown form");
}

void check_regime(FormLabel f, const ExponentPair& e) {
  const bool needs_p_ge1 = f == FormLabel::CPRIME || f == FormLabel::CDPRIME ||
                           f == FormLabel::SCALE3 || f == FormLabel::SCALE4;
  if (needs_p_ge1 && !(e.p >= 1.0 && e.p < kInf))
    throw RegimeError(to_string(f) + " is defined for 1 <= p < inf");
  if ((f == FormLabel::SCALE3 || f == FormLabel::SCALE4) && e.q == kInf)
    throw RegimeError(to_string(f) + " is defined for q < inf");
}

// Precomputed evaluator for one form on one instance. Works in the
// form's forward orientation; reflected forms see the window reversed.
class FormEvaluator {
 public:
  FormEvaluator(FormLabel form, const Instance& I)
      : L_(I.size()), p_(I.p()), q_(I.q()), layout_(layout_of(form)) {
    check_regime(form, I.exponents);
    if (p_ == kInf) {
      if (layout_.shape == Shape::PSum) layout_.shape = Shape::Sup;
      if (layout_.shape == Shape::PSupRunSum) layout_.shape = Shape::SupRunMax;
    }
    const bool powered = layout_.shape == Shape::PSum || layout_.shape == Shape::PSupRunSum;
    std::vector<double> u;
    if (layout_.table != Table::Kernel) {
      const WeightSeq* seq = sequence_data(I.kernel.spec());
      if (!seq)
        throw std::invalid_argument(to_string(form) + " needs a row or sup kernel (raw sequence u)");
      for (std::size_t k = 0; k < L_; ++k) u.push_back((*seq)[I.at(k)]);
    }
    if (layout_.table == Table::Scale4) {
      double acc = 0.0;
      const double pc = conjugate(p_);
      for (auto& x : u) {
        acc = p_ == 1.0 ? std::max(acc, x) : acc + std::pow(x, pc);
        x = p_ == 1.0 ? acc : std::pow(acc, 1.0 / pc);
      }
    }
    table_.assign(L_ * L_, 0.0);
    for (std::size_t i = 0; i < L_; ++i) {
      double range = 0.0;
      for (std::size_t n = i; n < L_; ++n) {
        double c = 0.0;
        switch (layout_.table) {
          case Table::Kernel: c = I.kernel.local(i, n); break;
          case Table::Row: c = u[i]; break;
          case Table::RangeSup: c = range = std::max(range, u[n]); break;
          case Table::Scale3: c = u[i]; break;
          case Table::Scale4: c = u[i]; break;
        }
        if (powered) c = std::pow(c, p_);
        // Reflection: forward (i', n') reads original (L-1-n', L-1-i').
        if (layout_.reflected)
          table_[(L_ - 1 - n) * L_ + (L_ - 1 - i)] = c;
        else
          table_[i * L_ + n] = c;
      }
    }
    const bool unit_rhs = layout_.table == Table::Scale3 || layout_.table == Table::Scale4;
    for (std::size_t k = 0; k < L_; ++k) {
      w_.push_back(I.w[I.at(k)]);
      if (unit_rhs)
        rho_.push_back(1.0);
      else if (form == FormLabel::CPRIME || form == FormLabel::CDPRIME)
        rho_.push_back(ext_pow(sigma_p(I.v, p_, I.window.first(), I.at(k)), -p_).value());
      else
        rho_.push_back(I.v[I.at(k)]);
    }
    if (layout_.reflected) {
      std::reverse(w_.begin(), w_.end());
      std::reverse(rho_.begin(), rho_.end());
    }
    run_.resize(L_);
  }

  bool reflected() const { return layout_.reflected; }
  const std::vector<double>& rho() const { return rho_; }
  std::size_t size() const { return L_; }

  // a in forward orientation.
  double lhs(std::span<const double> a) {
    const Shape sh = layout_.shape;
    if (sh == Shape::SupRunMax || sh == Shape::SupRunSum || sh == Shape::PSupRunSum) {
      double acc = 0.0;
      for (std::size_t i = 0; i < L_; ++i) {
        if (sh == Shape::SupRunMax) acc = std::max(acc, a[i]);
        else if (sh == Shape::SupRunSum) acc += a[i];
        else acc += a[i] > 0.0 ? std::pow(a[i], p_) : 0.0;
        run_[i] = acc;
      }
    } else if (sh == Shape::PSum) {
      for (std::size_t i = 0; i < L_; ++i) run_[i] = a[i] > 0.0 ? std::pow(a[i], p_) : 0.0;
    }
    double total = 0.0;
    for (std::size_t n = 0; n < L_; ++n) {
      if (w_[n] == 0.0) continue;
      double X = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        const double c = table_[i * L_ + n];
        switch (sh) {
          case Shape::Sum: X += c * a[i]; break;
          case Shape::Sup: X = std::max(X, c * a[i]); break;
          case Shape::SupRunMax:
          case Shape::SupRunSum:
          case Shape::PSupRunSum: X = std::max(X, c * run_[i]); break;
          case Shape::PSum: X += c * run_[i]; break;
        }
      }
      if (sh == Shape::PSum || sh == Shape::PSupRunSum) X = std::pow(X, 1.0 / p_);
      if (q_ == kInf)
        total = std::max(total, w_[n] * X);
      else if (X > 0.0)
        total += w_[n] * std::pow(X, q_);
    }
    return q_ == kInf ? total : std::pow(total, 1.0 / q_);
  }

 private:
  std::size_t L_;
  double p_;
  double q_;
  Layout layout_;
  std::vector<double> table_;
  std::vector<double> w_;
  std::vector<double> rho_;
  std::vector<double> run_;
};

std::vector<double> local_values(const Instance& I, const TestSequence& a, bool reflected) {
  for (Index n = a.window().first(); n <= a.window().last(); ++n)
    if (a[n] != 0.0 && !I.window.contains(n))
      throw std::invalid_argument("test sequence is not supported in the instance window");
  std::vector<double> x(I.size());
  for (std::size_t k = 0; k < I.size(); ++k) x[k] = a[I.at(k)];
  if (reflected) std::reverse(x.begin(), x.end());
  return x;
}

double weighted_norm(std::span<const double> rho, std::span<const double> a, double p) {
  RatioProblem P;
  P.dim = rho.size();
  P.weights.assign(rho.begin(), rho.end());
  P.p = p;
  return rhs_value(P, a);
}

}  // namespace

std::string to_string(FormLabel f) {
  for (const auto& info : kForms)
    if (info.label == f) return info.name;
  return "?";
}

std::optional<FormLabel> parse_form(std::string_view name) {
  for (const auto& info : kForms)
    if (name == info.name) return info.label;
  return std::nullopt;
}

const std::vector<FormLabel>& all_forms() {
  static const std::vector<FormLabel> forms = [] {
    std::vector<FormLabel> out;
    for (const auto& info : kForms) out.push_back(info.label);
    return out;
  }();
  return forms;
}

ExtReal functional_lhs(FormLabel form, const Instance& I, const TestSequence& a) {
  FormEvaluator ev(form, I);
  const auto x = local_values(I, a, ev.reflected());
  return ExtReal(ev.lhs(x));
}

ExtReal rhs_norm(const Instance& I, const TestSequence& a) {
  const auto x = local_values(I, a, false);
  std::vector<double> v(I.v.values().begin(), I.v.values().end());
  return ExtReal(weighted_norm(v, x, I.p()));
}

ExtReal form_rhs(FormLabel form, const Instance& I, const TestSequence& a) {
  FormEvaluator ev(form, I);
  const auto x = local_values(I, a, ev.reflected());
  return ExtReal(weighted_norm(ev.rho(), x, I.p()));
}

bool inner_powered(FormLabel form) {
  using F = FormLabel;
  switch (form) {
    case F::B5: case F::B6: case F::BT5: case F::BT6: case F::STRONG: case F::CPRIME:
    case F::CDPRIME: case F::SB6: case F::SB7: case F::SB8: case F::SCALE4:
      return true;
    default:
      return false;
  }
}

bool vertex_exact(FormLabel form, const ExponentPair& e) {
  return e.q >= e.p && (e.p <= 1.0 || inner_powered(form));
}

OracleResult best_constant(FormLabel form, const Instance& I, Strategy strategy,
                           std::size_t budget, std::uint64_t seed) {
  FormEvaluator ev(form, I);
  RatioProblem P;
  P.dim = I.size();
  P.lhs = [&ev](std::span<const double> a) { return ev.lhs(a); };
  P.weights = ev.rho();
  P.p = I.p();
  P.vertex_exact = vertex_exact(form, I.exponents);
  SearchResult r = maximize_ratio(P, strategy, budget, seed);
  if (ev.reflected()) std::reverse(r.witness.begin(), r.witness.end());
  OracleResult out;
  out.form = form;
  out.estimate = r.estimate;
  out.witness = TestSequence(I.window.start, std::move(r.witness));
  out.strategy = std::move(r.strategy);
  out.evaluations = r.evaluations;
  out.exact = r.exact;
  out.budget = budget;
  out.seed = seed;
  return out;
}

TestSequence reverse_sequence(const TestSequence& a) {
  std::vector<double> vals(a.values().rbegin(), a.values().rend());
  return TestSequence(-a.window().last(), std::move(vals));
}

Instance reverse_instance(const Instance& I) {
  return Instance(I.exponents, reverse_sequence(I.v), reverse_sequence(I.w),
                  reflect_kernel(I.kernel).spec());
}

OracleResult scaling_pair(ScaleSide side, const WeightSeq& b, const WeightSeq& c,
                          const ExponentPair& e, Strategy strategy, std::size_t budget,
                          std::uint64_t seed) {
  if (!(b.window() == c.window())) throw std::invalid_argument("b and c must share a window");
  const FormLabel form = side == ScaleSide::SCALE3 ? FormLabel::SCALE3 : FormLabel::SCALE4;
  check_regime(form, e);
  const Instance I(e, WeightSeq(b.start(), std::vector<double>(b.size(), 1.0)), b,
                   KernelSpec{RowSequenceKernel{c}});
  return best_constant(form, I, strategy, budget, seed);
}

}  // namespace hardy
