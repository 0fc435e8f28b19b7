#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace hardy {

using Index = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an operation is asked to work outside the exponent regime
/// in which its formula is defined.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Nonnegative extended real number, [0, +inf].
///
/// NaN and negative values are rejected at construction, so the type is
/// totally ordered. Multiplication follows the measure-theoretic rule
/// 0 * inf = 0.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  explicit ExtReal(double v);

  static constexpr ExtReal infinity() { return ExtReal(kInf, Unchecked{}); }
  static constexpr ExtReal zero() { return ExtReal(); }

  [[nodiscard]] constexpr double value() const { return value_; }
  [[nodiscard]] constexpr bool is_inf() const { return value_ == kInf; }
  [[nodiscard]] constexpr bool is_finite() const { return value_ != kInf; }
  [[nodiscard]] constexpr bool is_zero() const { return value_ == 0.0; }

  friend constexpr auto operator<=>(ExtReal a, ExtReal b) {
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    return a.value_ == b.value_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    return ExtReal(a.value_ + b.value_, Unchecked{});
  }
  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.value_ == 0.0 || b.value_ == 0.0) return ExtReal();
    return ExtReal(a.value_ * b.value_, Unchecked{});
  }
  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }
  ExtReal& operator*=(ExtReal o) { return *this = *this * o; }

 private:
  struct Unchecked {};
  constexpr ExtReal(double v, Unchecked) : value_(v) {}
  double value_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }

/// a / b with 0/0 = 0 and x/0 = inf for x > 0.
ExtReal quotient(ExtReal a, ExtReal b);

/// a / b for diagnostic ratios: 0/0 = 1 (both sides vanish together).
double diagnostic_ratio(ExtReal a, ExtReal b);

/// Power with the conventions 0^r = 0 (r>0), 0^r = inf (r<0), 0^0 = 1,
/// inf^r = inf (r>0), inf^r = 0 (r<0), inf^0 = 1. The exponent may be
/// +-inf.
ExtReal ext_pow(ExtReal x, double r);

/// Conjugate exponent p/(p-1); 1 maps to +inf and +inf maps to 1.
/// Negative for p in (0,1).
double conjugate(double p);

/// Exponent pair (p, q) with p, q in (0, inf].
struct ExponentPair {
  double p = 1.0;
  double q = 1.0;

  ExponentPair() = default;
  ExponentPair(double p_, double q_);

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Case labels of the characterization for 1 <= p <= inf (items (i)-(x)).
enum class KernelHardyCase { I, II, III, IV, V, VI, VII, VIII, IX, X };
/// Case labels of the characterization for 0 < p <= 1.
enum class SmallPCase { P_LE1_Q_GE_P, P_LE1_Q_INF, P_LE1_Q_LT_P };
/// Case labels of the supremum-operator characterization for p >= 1.
enum class SupremalCase { I, II, III, IV, V };

struct RegimeLabels {
  std::optional<KernelHardyCase> kernel_hardy;  // p >= 1
  std::optional<SmallPCase> small_p;            // p <= 1
  std::optional<SupremalCase> supremal;         // p >= 1
};

RegimeLabels regime(const ExponentPair& e);

std::string to_string(KernelHardyCase c);
std::string to_string(SmallPCase c);
std::string to_string(SupremalCase c);

/// Formats a double for reports: "inf" for +inf, shortest round-trip
/// decimal otherwise.
std::string format_number(double x);

}  // namespace hardy
