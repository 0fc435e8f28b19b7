#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/oracle.hpp"

namespace hardy {

/// Piecewise-constant function on the unit grid: values[k] on
/// (start + k - 1, start + k], zero elsewhere.
struct StepFunction {
  Index start = 0;
  std::vector<double> values;

  StepFunction() = default;
  StepFunction(Index start_, std::vector<double> values_);

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double bottom() const { return static_cast<double>(start) - 1.0; }
  [[nodiscard]] double top() const { return static_cast<double>(start) + static_cast<double>(size()) - 1.0; }
  /// Value at the real point x.
  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double total() const;
  /// Integral over (-inf, x].
  [[nodiscard]] double cumulative(double x) const;
  /// Integral over (x, inf).
  [[nodiscard]] double tail(double x) const;
};

/// Step extension of an instance: U is constant on (i-1,i] x (n-1,n].
struct StepExtension {
  StepFunction v;
  StepFunction w;
  Index start = 0;
  std::size_t size = 0;
  std::vector<double> U;  // U[li * size + ln], zero below the diagonal

  [[nodiscard]] double cell_kernel(std::size_t li, std::size_t ln) const { return U[li * size + ln]; }
  /// U(s, t) at real points; zero outside the window square.
  [[nodiscard]] double kernel(double s, double t) const;
};

StepExtension step_extend(const Instance& I);

/// Rightmost x with integral of w over (x, inf) equal to level.
double tail_invert(const StepFunction& w, double level);

/// x_k with tail mass 2^{-k} for k >= N, 2^{-N} < total <= 2^{-N+1}.
/// points[0] is the sentinel x_{N-1} = -inf.
struct DyadicCovering {
  int N = 0;
  std::vector<double> points;
  std::vector<double> masses;  // masses[j] = tail mass at points[j]; masses[0] = total

  /// Index k of the last point.
  [[nodiscard]] int last() const { return N - 2 + static_cast<int>(points.size()); }
  [[nodiscard]] double x(int k) const { return points.at(static_cast<std::size_t>(k - N + 1)); }
};

/// Points stop once 2^{-k} drops below resolution * total.
DyadicCovering dyadic_covering(const StepFunction& w, double resolution = 0x1p-40);

enum class ContinuousConstant { A1, A2, A3, A4, A12, A13 };

std::string to_string(ContinuousConstant c);
std::optional<ContinuousConstant> parse_continuous_constant(std::string_view name);

/// Exact value on the step extension of I. The lower limit of sigma_p is
/// the bottom of the window.
ExtReal continuous_constant(ContinuousConstant c, const Instance& I);

/// Continuous left-hand side for a step function f on the grid of
/// 1/sub-cells of the window (f.size() == sub * L, piece j of cell k at
/// index k * sub + j). kernel_power raises U; q = inf gives the ess sup.
/// GOP_DUAL: inner integral of U(y,x) f(y) over y <= x.
/// SUP_ITER: ess sup over y <= x of U(y,x) times the integral of f up to y.
double continuous_lhs(FormLabel form, const StepExtension& S, const std::vector<double>& f,
                      std::size_t sub, double q, double kernel_power = 1.0);

struct BridgeReport {
  FormLabel form = FormLabel::GOP_DUAL;
  ExtReal C_discrete;
  ExtReal C_continuous;
  double factor = 0.0;  // 2^{1 + 1/q}
  double lower_slack = 0.0;  // relative excess of C_continuous over C_discrete
  double upper_slack = 0.0;  // relative excess of C_discrete over factor * C_continuous
  double allowed_slack = 0.02;
  bool factor_ok = false;
  TestSequence discrete_witness;
  std::vector<double> continuous_witness;  // half-cell values
  std::string strategy;
};

/// GOP_DUAL or SUP_ITER; needs 1 <= p <= inf.
BridgeReport bridge_check(const Instance& I, FormLabel form, std::size_t budget, std::uint64_t seed);

enum class LemmaId { L1, L2, L3 };

std::string to_string(LemmaId l);
std::optional<LemmaId> parse_lemma(std::string_view name);

struct LemmaDecomposition {
  double lhs = 0.0;
  double block_part = 0.0;
  double cross_part = 0.0;
  double ratio = 1.0;  // lhs / (block + cross), 0/0 = 1
  DyadicCovering covering;
};

/// Left side of the lemma's inequality and its two sums over the dyadic
/// covering of w. L1 needs 0 < q < inf; L2 and L3 need 1 <= p < inf too.
LemmaDecomposition lemma_decompose(LemmaId which, const Instance& I, const StepFunction& f);

}  // namespace hardy
