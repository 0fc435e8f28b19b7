#pragma once

// Dense simplex-grid reference for small windows. Evaluates the forms
// straight from their definitions with global indices and checked
// kernel access, sharing no code with the library's evaluator.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hardy/oracle.hpp"

namespace brute {

inline double inner(hardy::FormLabel f, const hardy::Instance& I, const std::vector<double>& a,
                    hardy::Index n) {
  using F = hardy::FormLabel;
  const hardy::Index lo = I.window.first();
  const hardy::Index hi = I.window.last();
  auto A = [&](hardy::Index i) { return a[static_cast<std::size_t>(i - lo)]; };
  const double p = I.p();
  double x = 0.0;
  switch (f) {
    case F::GOP_DUAL:
      for (hardy::Index i = lo; i <= n; ++i) x += I.kernel.eval(i, n).value() * A(i);
      return x;
    case F::GOP:
      for (hardy::Index i = n; i <= hi; ++i) x += I.kernel.eval(n, i).value() * A(i);
      return x;
    case F::WEAK:
      for (hardy::Index i = lo; i <= n; ++i) x = std::max(x, I.kernel.eval(i, n).value() * A(i));
      return x;
    case F::STRONG:
      for (hardy::Index i = lo; i <= n; ++i) x += std::pow(I.kernel.eval(i, n).value() * A(i), p);
      return std::pow(x, 1.0 / p);
    case F::SUP_ITER:
      for (hardy::Index i = lo; i <= n; ++i) {
        double s = 0.0;
        for (hardy::Index j = lo; j <= i; ++j) s += A(j);
        x = std::max(x, I.kernel.eval(i, n).value() * s);
      }
      return x;
    default:
      throw std::invalid_argument("brute force: unsupported form");
  }
}

inline double lhs(hardy::FormLabel f, const hardy::Instance& I, const std::vector<double>& a) {
  double s = 0.0;
  for (hardy::Index n = I.window.first(); n <= I.window.last(); ++n)
    s += I.w[n] * std::pow(inner(f, I, a, n), I.q());
  return std::pow(s, 1.0 / I.q());
}

// Max of lhs / rhs over b on the simplex with step 1/steps, a_n = (b_n / v_n)^{1/p}.
// Requires v > 0 and q < inf.
inline double best(hardy::FormLabel f, const hardy::Instance& I, int steps) {
  const std::size_t L = I.size();
  std::vector<int> k(L, 0);
  std::vector<double> a(L);
  double top = 0.0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == L) {
      k[pos] = left;
      for (std::size_t j = 0; j < L; ++j)
        a[j] = std::pow(static_cast<double>(k[j]) / steps / I.v[I.at(j)], 1.0 / I.p());
      top = std::max(top, lhs(f, I, a));
      return;
    }
    for (int t = 0; t <= left; ++t) {
      k[pos] = t;
      rec(pos + 1, left - t);
    }
  };
  rec(0, steps);
  return top;  // rhs is 1 on the simplex
}

}  // namespace brute
