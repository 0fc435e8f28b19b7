#include "hardy/numerics.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace hardy {

ExtReal::ExtReal(double v) : value_(v) {
  if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a value");
  if (v < 0.0) throw std::invalid_argument("ExtReal: negative value " + std::to_string(v));
}

ExtReal quotient(ExtReal a, ExtReal b) {
  if (a.is_zero()) return ExtReal();
  if (b.is_zero()) return ExtReal::infinity();
  if (a.is_inf() && b.is_inf()) return ExtReal::infinity();
  return ExtReal(a.value() / b.value());
}

double diagnostic_ratio(ExtReal a, ExtReal b) {
  if (a.is_zero() && b.is_zero()) return 1.0;
  return quotient(a, b).value();
}

ExtReal ext_pow(ExtReal x, double r) {
  if (std::isnan(r)) throw std::invalid_argument("ext_pow: NaN exponent");
  if (r == 0.0) return ExtReal(1.0);
  // std::pow already follows every stated convention for nonnegative bases,
  // including 0^-inf = inf and inf^-r = 0.
  return ExtReal(std::pow(x.value(), r));
}

double conjugate(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("conjugate: p must be positive");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

ExponentPair::ExponentPair(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 0.0) || !(q > 0.0))
    throw std::invalid_argument("exponents must lie in (0, inf]");
}

RegimeLabels regime(const ExponentPair& e) {
  const double p = e.p;
  const double q = e.q;
  RegimeLabels out;

  if (p <= 1.0) {
    if (q == kInf)
      out.small_p = SmallPCase::P_LE1_Q_INF;
    else if (q >= p)
      out.small_p = SmallPCase::P_LE1_Q_GE_P;
    else
      out.small_p = SmallPCase::P_LE1_Q_LT_P;
  }

  if (p >= 1.0) {
    using K = KernelHardyCase;
    if (p == 1.0) {
      out.kernel_hardy = q == kInf ? K::II : (q >= 1.0 ? K::I : K::X);
    } else if (p == kInf) {
      out.kernel_hardy = q == kInf ? K::VI : K::III;
    } else if (q == kInf) {
      out.kernel_hardy = K::V;
    } else if (q == 1.0) {
      out.kernel_hardy = K::IV;
    } else if (q >= p) {
      out.kernel_hardy = K::VII;
    } else if (q > 1.0) {
      out.kernel_hardy = K::VIII;
    } else {
      out.kernel_hardy = K::IX;
    }

    using S = SupremalCase;
    if (p == kInf)
      out.supremal = q == kInf ? S::III : S::IV;
    else if (q == kInf)
      out.supremal = S::II;
    else
      out.supremal = q >= p ? S::I : S::V;
  }
  return out;
}

std::string to_string(KernelHardyCase c) {
  static constexpr std::array<const char*, 10> names{
      "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};
  return names[static_cast<std::size_t>(c)];
}

std::string to_string(SmallPCase c) {
  switch (c) {
    case SmallPCase::P_LE1_Q_GE_P: return "P_LE1_Q_GE_P";
    case SmallPCase::P_LE1_Q_INF: return "P_LE1_Q_INF";
    case SmallPCase::P_LE1_Q_LT_P: return "P_LE1_Q_LT_P";
  }
  return "?";
}

std::string to_string(SupremalCase c) {
  static constexpr std::array<const char*, 5> names{"i", "ii", "iii", "iv", "v"};
  return names[static_cast<std::size_t>(c)];
}

std::string format_number(double x) {
  if (x == kInf) return "inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace hardy
