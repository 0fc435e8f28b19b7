#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/kernel.hpp"

using namespace hardy;

namespace {

Kernel tabulated(Index start, std::size_t L, auto f) {
  TabulatedKernel t{start, {}};
  t.rows.resize(L);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a; b < L; ++b) t.rows[a].push_back(f(a, b));
  return Kernel(KernelSpec{t}, Window{start, L});
}

Kernel pow2_kernel() {
  return tabulated(0, 3, [](std::size_t i, std::size_t n) { return std::pow(2.0, double(n - i)); });
}

Kernel spike_kernel() {
  return tabulated(0, 3, [](std::size_t i, std::size_t n) { return i == 0 && n == 2 ? 1.0 : 0.0; });
}

// Random monotone table: row-wise running maxima of nonnegative draws.
Kernel random_monotone(std::mt19937_64& rng, std::size_t L) {
  std::uniform_real_distribution<double> d(0.0, 3.0);
  std::vector<std::vector<double>> m(L, std::vector<double>(L, 0.0));
  for (std::size_t i = L; i-- > 0;)
    for (std::size_t n = i; n < L; ++n) {
      double x = d(rng);
      if (n > i) x = std::max(x, m[i][n - 1]);
      if (i + 1 <= n) x = std::max(x, m[i + 1][n]);
      m[i][n] = x;
    }
  return tabulated(0, L, [&](std::size_t i, std::size_t n) { return m[i][n]; });
}

}  // namespace

TEST_CASE("kernel evaluation") {
  const Kernel sup(KernelSpec{SupOfSequenceKernel{WeightSeq(0, {3, 1, 2})}}, Window{0, 3});
  CHECK(sup.eval(1, 2).value() == 2.0);
  CHECK(sup.eval(0, 2).value() == 3.0);
  const Kernel one(KernelSpec{ConstantKernel{1.0}}, Window{0, 6});
  CHECK(one.eval(0, 5).value() == 1.0);
  const Kernel row(KernelSpec{RowSequenceKernel{WeightSeq(0, {3, 1, 2})}}, Window{0, 3});
  CHECK(row.eval(0, 2).value() == 3.0);
  CHECK_THROWS_AS((void)row.eval(2, 1), std::out_of_range);
  CHECK_THROWS_AS((void)row.eval(0, 3), std::out_of_range);
  CHECK_THROWS_AS((void)row.eval(-1, 0), std::out_of_range);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS(Kernel(KernelSpec{ConstantKernel{-1.0}}, Window{0, 2}));
  CHECK_THROWS(Kernel(KernelSpec{TabulatedKernel{0, {{1.0}}}}, Window{0, 2}));
  CHECK_THROWS(Kernel(KernelSpec{PowerKernel{nullptr, 2.0}}, Window{0, 2}));
}

TEST_CASE("monotonicity check") {
  CHECK(Kernel(KernelSpec{ConstantKernel{1.0}}, Window{0, 4}).monotonicity().ok);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 5.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> u(1 + t % 8);
    for (auto& x : u) x = d(rng);
    const Kernel k(KernelSpec{SupOfSequenceKernel{WeightSeq(-2, u)}}, Window{-2, u.size()});
    CHECK(k.monotonicity().ok);
    CHECK(k.regularity() <= ExtReal(1.0));
  }
  const Kernel row(KernelSpec{RowSequenceKernel{WeightSeq(0, {1, 3})}}, Window{0, 2});
  const auto rep = row.monotonicity();
  REQUIRE_FALSE(rep.ok);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].axis == MonotonicityViolation::Axis::First);
  CHECK(rep.violations[0].i == 0);
  CHECK(rep.violations[0].n == 1);
  CHECK(rep.violations[0].lhs == 1.0);
  CHECK(rep.violations[0].rhs == 3.0);
}

TEST_CASE("regularity constant") {
  CHECK(Kernel(KernelSpec{ConstantKernel{1.0}}, Window{0, 4}).regularity().value() == 0.5);
  CHECK(pow2_kernel().regularity().value() == 1.0);
  CHECK(spike_kernel().regularity().is_inf());
}

TEST_CASE("power kernels") {
  const Kernel c2(KernelSpec{ConstantKernel{2.0}}, Window{0, 3});
  const Kernel c4 = power_kernel(c2, 2.0);
  REQUIRE(std::holds_alternative<ConstantKernel>(c4.spec().node));
  CHECK(std::get<ConstantKernel>(c4.spec().node).c == 4.0);

  const Kernel half = power_kernel(pow2_kernel(), 0.5);
  REQUIRE(std::holds_alternative<TabulatedKernel>(half.spec().node));
  for (Index i = 0; i < 3; ++i)
    for (Index n = i; n < 3; ++n)
      CHECK(half.eval(i, n).value() == doctest::Approx(std::pow(std::sqrt(2.0), double(n - i))));

  CHECK(power_kernel(Kernel(KernelSpec{ConstantKernel{1.0}}, Window{0, 3}), 3.0).regularity().value() ==
        0.5);

  const Kernel sup(KernelSpec{SupOfSequenceKernel{WeightSeq(0, {3, 1, 2})}}, Window{0, 3});
  const Kernel sq = power_kernel(sup, 2.0);
  CHECK(std::holds_alternative<PowerKernel>(sq.spec().node));
  CHECK(sq.eval(1, 2).value() == 4.0);
  CHECK(sq.monotonicity().ok);
}

TEST_CASE("regularity of powers on random tabulated kernels") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const Kernel k = random_monotone(rng, 2 + t % 5);
    if (k.regularity().is_inf()) continue;
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      const double bound = std::max(1.0, std::pow(2.0, r - 1.0)) * std::pow(k.regularity().value(), r);
      CHECK(power_kernel(k, r).regularity().value() <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("reflection preserves the regularity constant") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t L = 1 + t % 6;
    std::vector<std::vector<double>> m(L);
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t n = i; n < L; ++n) m[i].push_back(d(rng));
    const Kernel k(KernelSpec{TabulatedKernel{3, m}}, Window{3, L});
    const Kernel r = reflect_kernel(k);
    CHECK(r.window().start == -(3 + Index(L) - 1));
    CHECK(r.regularity() == k.regularity());
    for (Index i = k.window().first(); i <= k.window().last(); ++i)
      for (Index n = i; n <= k.window().last(); ++n) CHECK(r.eval(-n, -i) == k.eval(i, n));
  }
  const Kernel sup(KernelSpec{SupOfSequenceKernel{WeightSeq(0, {3, 1, 2})}}, Window{0, 3});
  const Kernel rs = reflect_kernel(sup);
  for (Index i = 0; i < 3; ++i)
    for (Index n = i; n < 3; ++n) CHECK(rs.eval(-n, -i) == sup.eval(i, n));
}

TEST_CASE("chain alpha check") {
  const Kernel one(KernelSpec{ConstantKernel{1.0}}, Window{0, 4});
  auto rep = chain_alpha_check(one, 1.0, 1.0, 3);
  CHECK(rep.ok);
  CHECK(rep.worst_ratio.value() == 0.5);
  CHECK_FALSE(rep.note.empty());

  rep = chain_alpha_check(pow2_kernel(), 1.0, 1.0, 3);
  CHECK(rep.ok);
  CHECK(rep.worst_ratio.value() == 1.0);
  CHECK(rep.worst_chain == std::vector<Index>{0, 1, 2});

  for (double alpha : {0.25, 0.5, 1.0}) {
    rep = chain_alpha_check(spike_kernel(), alpha, 1e9, 3);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_ratio.is_inf());
  }
  CHECK_THROWS(chain_alpha_check(one, 1.5, 1.0, 3));
  CHECK_THROWS(chain_alpha_check(one, 1.0, 1.0, 5));
}
