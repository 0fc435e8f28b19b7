#include "hardy/constants.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace hardy {
namespace {

// Window view of an instance with every formula ingredient as ExtReal.
class Terms {
 public:
  explicit Terms(const Instance& I) : I_(I), lo_(I.window.first()), hi_(I.window.last()) {}

  Index lo() const { return lo_; }
  Index hi() const { return hi_; }
  ExtReal v(Index n) const { return ExtReal(I_.v[n]); }
  ExtReal w(Index n) const { return ExtReal(I_.w[n]); }
  ExtReal U(Index i, Index n) const { return I_.kernel.eval(i, n); }
  ExtReal tail(Index n) const { return tail_sum(I_.w, n); }

  // sum_{i >= n} U(n,i)^s w_i
  ExtReal right_kernel_sum(Index n, double s) const {
    ExtReal acc;
    for (Index i = n; i <= hi_; ++i) acc += ext_pow(U(n, i), s) * w(i);
    return acc;
  }
  // sum_{lo <= i <= n} U(i,n)^s v_i^t
  ExtReal left_kernel_sum(Index n, double s, double t) const {
    ExtReal acc;
    for (Index i = lo_; i <= n; ++i) acc += ext_pow(U(i, n), s) * ext_pow(v(i), t);
    return acc;
  }
  // sum_{lo <= i <= n} v_i^t
  ExtReal left_sum(Index n, double t) const {
    ExtReal acc;
    for (Index i = lo_; i <= n; ++i) acc += ext_pow(v(i), t);
    return acc;
  }
  ExtReal sigma(Index n) const { return sigma_p(I_.v, I_.p(), lo_, n); }

  ExtReal sup_over(const std::function<ExtReal(Index)>& f) const {
    ExtReal s;
    for (Index n = lo_; n <= hi_; ++n) s = max(s, f(n));
    return s;
  }
  ExtReal sum_over(const std::function<ExtReal(Index)>& f) const {
    ExtReal s;
    for (Index n = lo_; n <= hi_; ++n) s += f(n);
    return s;
  }

 private:
  const Instance& I_;
  Index lo_;
  Index hi_;
};

std::string regime_text(double p, double q) {
  return "(p = " + format_number(p) + ", q = " + format_number(q) + ")";
}

[[noreturn]] void regime_fail(const std::string& name, const std::string& valid, double p, double q) {
  throw RegimeError(name + " is defined for " + valid + "; got " + regime_text(p, q));
}

bool finite_gt1(double p) { return p > 1.0 && p < kInf; }

ExtReal small_p_constant(int k, const Instance& I) {
  const Terms t(I);
  const double p = I.p();
  const double q = I.q();
  switch (k) {
    case 1:
      return t.sup_over([&](Index n) {
        return ext_pow(t.v(n), -1.0 / p) * ext_pow(t.right_kernel_sum(n, q), 1.0 / q);
      });
    case 2:
      return t.sup_over([&](Index n) {
        ExtReal s;
        for (Index i = n; i <= t.hi(); ++i) s = max(s, t.U(n, i) * t.w(i));
        return ext_pow(t.v(n), -1.0 / p) * s;
      });
    default: break;
  }
  // A_12, A_13 on the p = 1 problem with exponent r = q/p and kernel U^p.
  const double r = q / p;
  const double rc = r / (r - 1.0);
  ExtReal total;
  if (k == 12) {
    total = t.sum_over([&](Index n) {
      ExtReal s;
      for (Index i = t.lo(); i <= n; ++i)
        s = max(s, ext_pow(t.U(i, n), -p * rc) * ext_pow(t.v(i), rc));
      return ext_pow(t.tail(n), -rc) * t.w(n) * s;
    });
  } else {
    total = t.sum_over([&](Index n) {
      ExtReal s;
      for (Index i = t.lo(); i <= n; ++i) s = max(s, ext_pow(t.U(i, n), q) * ext_pow(t.v(i), rc));
      return ext_pow(t.right_kernel_sum(n, q), -rc) * t.w(n) * s;
    });
  }
  return ext_pow(ext_pow(total, -1.0 / rc), 1.0 / p);
}

}  // namespace

ExtReal condition_A(int k, const Instance& I) {
  const double p = I.p();
  const double q = I.q();
  const Terms t(I);
  const std::string name = "A_" + std::to_string(k);
  if (k < 1 || k > 13) throw std::invalid_argument("no constant " + name);
  switch (k) {
    case 1:
      if (!(p <= 1.0 && q < kInf)) regime_fail(name, "p <= 1, q < inf", p, q);
      return small_p_constant(1, I);
    case 2:
      if (!(p <= 1.0 && q == kInf)) regime_fail(name, "p <= 1, q = inf", p, q);
      return small_p_constant(2, I);
    case 12:
    case 13:
      if (!(p <= 1.0 && q < p)) regime_fail(name, "0 < q < p <= 1", p, q);
      return small_p_constant(k, I);
    case 3:
      if (!(p == kInf && q < kInf)) regime_fail(name, "p = inf, q < inf", p, q);
      return ext_pow(t.sum_over([&](Index n) {
                       return ext_pow(t.left_kernel_sum(n, 1.0, -1.0), q) * t.w(n);
                     }),
                     1.0 / q);
    case 6:
      if (!(p == kInf && q == kInf)) regime_fail(name, "p = q = inf", p, q);
      return t.sup_over([&](Index n) {
        ExtReal s;
        for (Index i = t.lo(); i <= n; ++i) s = max(s, t.U(i, n) * ext_pow(t.v(i), -1.0));
        return t.w(n) * s;
      });
    default: break;
  }

  if (!finite_gt1(p)) regime_fail(name, "1 < p < inf", p, q);
  const double pc = conjugate(p);
  switch (k) {
    case 4:
      if (q != 1.0) regime_fail(name, "1 < p < inf, q = 1", p, q);
      return ext_pow(t.sum_over([&](Index n) {
                       return ext_pow(t.right_kernel_sum(n, 1.0), pc) * ext_pow(t.v(n), 1.0 - pc);
                     }),
                     1.0 / pc);
    case 5:
      if (q != kInf) regime_fail(name, "1 < p < inf, q = inf", p, q);
      return t.sup_over([&](Index n) {
        return t.w(n) * ext_pow(t.left_kernel_sum(n, pc, 1.0 - pc), 1.0 / pc);
      });
    case 7:
    case 8:
      if (!(p <= q && q < kInf)) regime_fail(name, "1 < p <= q < inf", p, q);
      if (k == 7)
        return t.sup_over([&](Index n) {
          return ext_pow(t.tail(n), 1.0 / q) * ext_pow(t.left_kernel_sum(n, pc, 1.0 - pc), 1.0 / pc);
        });
      return t.sup_over([&](Index n) {
        return ext_pow(t.right_kernel_sum(n, q), 1.0 / q) * ext_pow(t.left_sum(n, 1.0 - pc), 1.0 / pc);
      });
    default: break;
  }

  if (!(q < p)) regime_fail(name, "1 < p < inf, q < p", p, q);
  const double outer = (p - q) / (p * q);
  const double e = (p - 1.0) * q / (p - q);
  switch (k) {
    case 9:
      return ext_pow(t.sum_over([&](Index n) {
                       return ext_pow(t.tail(n), q / (p - q)) * t.w(n) *
                              ext_pow(t.left_kernel_sum(n, pc, 1.0 - pc), e);
                     }),
                     outer);
    case 10:
      if (!(q > 1.0)) regime_fail(name, "1 < q < p < inf", p, q);
      return ext_pow(t.sum_over([&](Index n) {
                       return ext_pow(t.right_kernel_sum(n, q), p / (p - q)) *
                              ext_pow(t.v(n), 1.0 - pc) *
                              ext_pow(t.left_sum(n, 1.0 - pc), p * (q - 1.0) / (p - q));
                     }),
                     outer);
    case 11:
      return ext_pow(t.sum_over([&](Index n) {
                       ExtReal s;
                       for (Index j = t.lo(); j <= n; ++j)
                         s = max(s, ext_pow(t.U(j, n), q) * ext_pow(t.left_sum(j, 1.0 - pc), e));
                       return ext_pow(t.right_kernel_sum(n, q), q / (p - q)) * t.w(n) * s;
                     }),
                     outer);
    default: break;
  }
  throw std::invalid_argument("no constant " + name);
}

ExtReal condition_D(int k, const Instance& I) {
  const double p = I.p();
  const double q = I.q();
  const Terms t(I);
  const std::string name = "D_" + std::to_string(k);
  if (k < 1 || k > 6) throw std::invalid_argument("no constant " + name);
  switch (k) {
    case 1:
      if (!(p >= 1.0 && p <= q && q < kInf)) regime_fail(name, "1 <= p <= q < inf", p, q);
      return t.sup_over(
          [&](Index n) { return t.sigma(n) * ext_pow(t.right_kernel_sum(n, q), 1.0 / q); });
    case 2:
      if (!(p >= 1.0 && p < kInf && q == kInf)) regime_fail(name, "1 <= p < q = inf", p, q);
      return t.sup_over([&](Index n) {
        ExtReal s;
        for (Index i = n; i <= t.hi(); ++i) s = max(s, t.U(n, i) * ext_pow(t.w(i), 1.0 / p));
        return t.sigma(n) * s;
      });
    case 3:
      if (!(p == kInf && q == kInf)) regime_fail(name, "p = q = inf", p, q);
      // w^{1/p} at p = inf is the indicator of w > 0.
      return t.sup_over([&](Index n) {
        ExtReal s;
        for (Index i = n; i <= t.hi(); ++i)
          if (t.w(i) > ExtReal()) s = max(s, t.U(n, i));
        return ext_pow(t.v(n), -1.0) * s;
      });
    case 4:
      if (!(p == kInf && q < kInf)) regime_fail(name, "p = inf, q < inf", p, q);
      return ext_pow(t.sum_over([&](Index n) {
                       return ext_pow(t.left_kernel_sum(n, 1.0, -1.0), q) * t.w(n);
                     }),
                     1.0 / q);
    case 5:
    case 6: {
      if (!(p >= 1.0 && p < kInf && q < p)) regime_fail(name, "1 <= p < inf, q < p", p, q);
      const double outer = (p - q) / (p * q);
      const double se = q / (q - p);
      return ext_pow(t.sum_over([&](Index n) {
                       ExtReal s;
                       for (Index i = t.lo(); i <= n; ++i) {
                         const ExtReal u = k == 5 ? ext_pow(t.U(i, n), q * p / (p - q))
                                                  : ext_pow(t.U(i, n), q);
                         s = max(s, u * ext_pow(t.sigma(i), se));
                       }
                       const ExtReal lead =
                           k == 5 ? ext_pow(t.tail(n), q / (p - q))
                                  : ext_pow(t.right_kernel_sum(n, q), q / (p - q));
                       return lead * t.w(n) * s;
                     }),
                     outer);
    }
    default: break;
  }
  throw std::invalid_argument("no constant " + name);
}

const ExtReal* ConstantsReport::find(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return &v;
  return nullptr;
}

namespace {

ExtReal combine(ConstantsReport& rep, const std::vector<std::string>& names) {
  ExtReal s;
  for (const auto& n : names) s += *rep.find(n);
  return s;
}

}  // namespace

ConstantsReport characterize(const Instance& I, ConstantSet set) {
  ConstantsReport rep;
  rep.labels = regime(I.exponents);
  const double p = I.p();

  auto add_A = [&](std::initializer_list<int> ks) {
    std::vector<std::string> names;
    for (int k : ks) {
      names.push_back("A_" + std::to_string(k));
      if (!rep.find(names.back())) rep.constants.emplace_back(names.back(), condition_A(k, I));
    }
    return names;
  };
  auto add_D = [&](std::initializer_list<int> ks) {
    std::vector<std::string> names;
    for (int k : ks) {
      names.push_back("D_" + std::to_string(k));
      rep.constants.emplace_back(names.back(), condition_D(k, I));
    }
    return names;
  };

  std::vector<std::string> a_names;
  if (rep.labels.small_p) {
    switch (*rep.labels.small_p) {
      case SmallPCase::P_LE1_Q_GE_P: a_names = add_A({1}); break;
      case SmallPCase::P_LE1_Q_INF: a_names = add_A({2}); break;
      case SmallPCase::P_LE1_Q_LT_P: a_names = add_A({12, 13}); break;
    }
  } else {
    using K = KernelHardyCase;
    switch (*rep.labels.kernel_hardy) {
      case K::III: a_names = add_A({3}); break;
      case K::IV: a_names = add_A({4}); break;
      case K::V: a_names = add_A({5}); break;
      case K::VI: a_names = add_A({6}); break;
      case K::VII: a_names = add_A({7, 8}); break;
      case K::VIII: a_names = add_A({9, 10}); break;
      case K::IX: a_names = add_A({9, 11}); break;
      default: break;  // p = 1 cases are handled by the small-p branch
    }
  }
  if (set != ConstantSet::D) {
    rep.predicted_C = combine(rep, a_names);
    rep.predicted_from = a_names;
  }

  if (set != ConstantSet::A) {
    if (p < 1.0) {
      rep.predicted_sup_C = combine(rep, a_names);
      rep.predicted_sup_from = a_names;
    } else {
      std::vector<std::string> d_names;
      using S = SupremalCase;
      switch (*rep.labels.supremal) {
        case S::I: d_names = add_D({1}); break;
        case S::II: d_names = add_D({2}); break;
        case S::III: d_names = add_D({3}); break;
        case S::IV: d_names = add_D({4}); break;
        case S::V: d_names = add_D({5, 6}); break;
      }
      rep.predicted_sup_C = combine(rep, d_names);
      rep.predicted_sup_from = d_names;
    }
  }
  if (set == ConstantSet::D && p >= 1.0) {
    std::erase_if(rep.constants, [](const auto& kv) { return kv.first.starts_with("A_"); });
  }

  if (I.kernel.regularity().is_inf())
    rep.advisories.push_back("kernel is not regular on this window (regularity constant = inf)");
  if (!I.kernel.monotonicity().ok)
    rep.advisories.push_back("kernel is not monotone on this window");
  rep.advisories.push_back(
      "sums and suprema over Z run over the window; sums from -inf start at the window bottom");
  return rep;
}

}  // namespace hardy
