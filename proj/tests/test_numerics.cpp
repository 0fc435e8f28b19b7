#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/numerics.hpp"

using namespace hardy;

TEST_CASE("ExtReal rejects NaN and negatives") {
  CHECK_THROWS_AS(ExtReal(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(ExtReal(-1.0), std::invalid_argument);
  CHECK(ExtReal(kInf).is_inf());
}

TEST_CASE("zero times infinity is zero") {
  CHECK((ExtReal::zero() * ExtReal::infinity()).is_zero());
  CHECK((ExtReal::infinity() * ExtReal(2.0)).is_inf());
  CHECK((ExtReal(1.0) + ExtReal::infinity()).is_inf());
}

TEST_CASE("quotient and diagnostic ratio conventions") {
  CHECK(quotient(ExtReal(0.0), ExtReal(0.0)).is_zero());
  CHECK(quotient(ExtReal(2.0), ExtReal(0.0)).is_inf());
  CHECK(quotient(ExtReal(3.0), ExtReal(2.0)).value() == 1.5);
  CHECK(diagnostic_ratio(ExtReal(0.0), ExtReal(0.0)) == 1.0);
}

TEST_CASE("ext_pow conventions") {
  CHECK(ext_pow(ExtReal(0.0), -1.0).is_inf());
  CHECK(ext_pow(ExtReal(2.0), 3.0).value() == 8.0);
  CHECK(ext_pow(ExtReal::infinity(), -0.5).is_zero());
  CHECK(ext_pow(ExtReal(0.0), 0.0).value() == 1.0);
  CHECK(ext_pow(ExtReal::infinity(), 0.0).value() == 1.0);
  CHECK(ext_pow(ExtReal(0.0), 2.0).is_zero());
  CHECK(ext_pow(ExtReal::infinity(), 2.0).is_inf());
  CHECK(ext_pow(ExtReal(0.5), -kInf).is_inf());
}

TEST_CASE("ext_pow round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(1e-3, 1e3), r(-4.0, 4.0);
  for (int t = 0; t < 1000; ++t) {
    const double a = x(rng);
    double e = r(rng);
    if (std::abs(e) < 1e-3) e = 0.5;
    const double back = ext_pow(ext_pow(ExtReal(a), e), 1.0 / e).value();
    CHECK(std::abs(back - a) <= 1e-12 * a);
  }
}

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(2.0) == 2.0);
  CHECK(conjugate(0.5) == -1.0);
  CHECK(conjugate(1.0) == kInf);
  CHECK(conjugate(kInf) == 1.0);
  for (double p : {1.1, 1.5, 3.0, 7.25, 100.0})
    CHECK(std::abs(conjugate(conjugate(p)) - p) <= 1e-12 * p);
}

TEST_CASE("exponent pair validation") {
  CHECK_THROWS(ExponentPair(0.0, 1.0));
  CHECK_THROWS(ExponentPair(1.0, -2.0));
  CHECK_NOTHROW(ExponentPair(kInf, kInf));
}

TEST_CASE("regime labels") {
  auto r = regime({1.0, 1.0});
  CHECK(r.kernel_hardy == KernelHardyCase::I);
  CHECK(r.small_p == SmallPCase::P_LE1_Q_GE_P);
  CHECK(r.supremal == SupremalCase::I);

  r = regime({1.0, 0.5});
  CHECK(r.small_p == SmallPCase::P_LE1_Q_LT_P);
  CHECK(r.kernel_hardy == KernelHardyCase::X);

  r = regime({2.0, 1.0});
  CHECK(r.kernel_hardy == KernelHardyCase::IV);
  CHECK(r.supremal == SupremalCase::V);
  CHECK_FALSE(r.small_p.has_value());

  CHECK(regime({0.5, kInf}).small_p == SmallPCase::P_LE1_Q_INF);
  CHECK_FALSE(regime({0.5, 2.0}).kernel_hardy.has_value());
  CHECK(regime({kInf, kInf}).kernel_hardy == KernelHardyCase::VI);
  CHECK(regime({kInf, 0.5}).supremal == SupremalCase::IV);
  CHECK(regime({2.0, 3.0}).kernel_hardy == KernelHardyCase::VII);
  CHECK(regime({3.0, 2.0}).kernel_hardy == KernelHardyCase::VIII);
  CHECK(regime({3.0, 0.5}).kernel_hardy == KernelHardyCase::IX);
  CHECK(regime({2.0, kInf}).kernel_hardy == KernelHardyCase::V);
  CHECK(regime({2.0, kInf}).supremal == SupremalCase::II);
}

TEST_CASE("regime is total on a grid") {
  const double grid[] = {0.25, 0.5, 1.0, 1.5, 2.0, 4.0, kInf};
  for (double p : grid)
    for (double q : grid) {
      const auto r = regime({p, q});
      CHECK(r.small_p.has_value() == (p <= 1.0));
      CHECK(r.kernel_hardy.has_value() == (p >= 1.0));
      CHECK(r.supremal.has_value() == (p >= 1.0));
    }
}

TEST_CASE("number formatting") {
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(0.5) == "0.5");
}
