#include "hardy/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardy {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

double spec_value(const KernelSpec& spec, Index i, Index n) {
  return std::visit(
      Overloaded{
          [](const ConstantKernel& k) { return k.c; },
          [&](const TabulatedKernel& k) {
            const Index ri = i - k.start;
            if (ri < 0 || static_cast<std::size_t>(ri) >= k.rows.size())
              throw std::out_of_range("tabulated kernel has no row " + std::to_string(i));
            const auto& row = k.rows[static_cast<std::size_t>(ri)];
            const auto col = static_cast<std::size_t>(n - i);
            if (col >= row.size())
              throw std::out_of_range("tabulated kernel has no entry (" + std::to_string(i) +
                                      "," + std::to_string(n) + ")");
            return row[col];
          },
          [&](const SupOfSequenceKernel& k) {
            double s = 0.0;
            for (Index j = i; j <= n; ++j) s = std::max(s, k.u[j]);
            return s;
          },
          [&](const RowSequenceKernel& k) { return k.u[i]; },
          [&](const PowerKernel& k) {
            if (!k.base) throw std::invalid_argument("power kernel without base");
            return std::pow(spec_value(*k.base, i, n), k.r);
          },
      },
      spec.node);
}

void validate_spec(const KernelSpec& spec) {
  std::visit(Overloaded{
                 [](const ConstantKernel& k) {
                   if (!std::isfinite(k.c) || k.c < 0.0)
                     throw std::invalid_argument("constant kernel value must be finite and >= 0");
                 },
                 [](const TabulatedKernel& k) {
                   for (const auto& row : k.rows)
                     for (double x : row)
                       if (!std::isfinite(x) || x < 0.0)
                         throw std::invalid_argument(
                             "tabulated kernel entries must be finite and >= 0");
                 },
                 [](const SupOfSequenceKernel&) {},
                 [](const RowSequenceKernel&) {},
                 [](const PowerKernel& k) {
                   if (!(k.r > 0.0) || !std::isfinite(k.r))
                     throw std::invalid_argument("kernel power must be positive and finite");
                   if (!k.base) throw std::invalid_argument("power kernel without base");
                   validate_spec(*k.base);
                 },
             },
             spec.node);
}

Index local_to_global(const Window& w, std::size_t k) { return w.start + static_cast<Index>(k); }

}  // namespace

const WeightSeq* sequence_data(const KernelSpec& spec) {
  if (const auto* s = std::get_if<SupOfSequenceKernel>(&spec.node)) return &s->u;
  if (const auto* r = std::get_if<RowSequenceKernel>(&spec.node)) return &r->u;
  return nullptr;
}

Kernel::Kernel(KernelSpec spec, Window window) : spec_(std::move(spec)), window_(window) {
  if (window_.length == 0) throw std::invalid_argument("kernel window must be nonempty");
  validate_spec(spec_);
  const std::size_t L = window_.length;
  table_.assign(L * L, 0.0);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a; b < L; ++b) {
      const double x =
          spec_value(spec_, local_to_global(window_, a), local_to_global(window_, b));
      if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument("kernel value must be finite and >= 0");
      table_[a * L + b] = x;
    }
  monotonicity_ = monotonicity_check(*this);
  regularity_ = regularity_constant(*this);
}

ExtReal Kernel::eval(Index i, Index n) const {
  if (!window_.contains(i) || !window_.contains(n) || i > n)
    throw std::out_of_range("kernel index (" + std::to_string(i) + "," + std::to_string(n) +
                            ") outside the window or i > n");
  return ExtReal(local(static_cast<std::size_t>(i - window_.start),
                       static_cast<std::size_t>(n - window_.start)));
}

MonotonicityReport monotonicity_check(const Kernel& k) {
  MonotonicityReport rep;
  const std::size_t L = k.size();
  const Window w = k.window();
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a; b < L; ++b) {
      if (a + 1 <= b && k.local(a, b) < k.local(a + 1, b))
        rep.violations.push_back({MonotonicityViolation::Axis::First, local_to_global(w, a),
                                  local_to_global(w, b), k.local(a, b), k.local(a + 1, b)});
      if (b + 1 < L && k.local(a, b) > k.local(a, b + 1))
        rep.violations.push_back({MonotonicityViolation::Axis::Second, local_to_global(w, a),
                                  local_to_global(w, b), k.local(a, b), k.local(a, b + 1)});
    }
  rep.ok = rep.violations.empty();
  return rep;
}

ExtReal regularity_constant(const Kernel& k) {
  const std::size_t L = k.size();
  ExtReal best;
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t n = i; n < L; ++n) {
      const double top = k.local(i, n);
      if (top == 0.0) continue;
      for (std::size_t j = i; j <= n; ++j) {
        best = max(best, quotient(ExtReal(top), ExtReal(k.local(i, j) + k.local(j, n))));
        if (best.is_inf()) return best;
      }
    }
  return best;
}

Kernel power_kernel(const Kernel& k, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("kernel power must be positive and finite");
  if (const auto* c = std::get_if<ConstantKernel>(&k.spec().node))
    return Kernel(KernelSpec{ConstantKernel{std::pow(c->c, r)}}, k.window());
  if (std::holds_alternative<TabulatedKernel>(k.spec().node)) {
    const std::size_t L = k.size();
    TabulatedKernel t{k.window().start, {}};
    t.rows.resize(L);
    for (std::size_t a = 0; a < L; ++a)
      for (std::size_t b = a; b < L; ++b) t.rows[a].push_back(std::pow(k.local(a, b), r));
    return Kernel(KernelSpec{std::move(t)}, k.window());
  }
  auto base = std::make_shared<const KernelSpec>(k.spec());
  return Kernel(KernelSpec{PowerKernel{std::move(base), r}}, k.window());
}

namespace {

WeightSeq reflect_seq(const WeightSeq& u) {
  std::vector<double> vals(u.values().rbegin(), u.values().rend());
  return WeightSeq(-u.window().last(), std::move(vals));
}

KernelSpec reflect_spec(const KernelSpec& spec, const Kernel& k) {
  return std::visit(
      Overloaded{
          [](const ConstantKernel& c) { return KernelSpec{c}; },
          [](const SupOfSequenceKernel& s) {
            return KernelSpec{SupOfSequenceKernel{reflect_seq(s.u)}};
          },
          [&](const PowerKernel& p) {
            auto base = std::make_shared<const KernelSpec>(reflect_spec(*p.base, k));
            return KernelSpec{PowerKernel{std::move(base), p.r}};
          },
          [&](const auto&) {
            // Row and tabulated kernels: materialize V(i,n) = U(-n,-i).
            const std::size_t L = k.size();
            TabulatedKernel t{-k.window().last(), {}};
            t.rows.resize(L);
            for (std::size_t a = 0; a < L; ++a)
              for (std::size_t b = a; b < L; ++b)
                t.rows[a].push_back(k.local(L - 1 - b, L - 1 - a));
            return KernelSpec{std::move(t)};
          },
      },
      spec.node);
}

}  // namespace

Kernel reflect_kernel(const Kernel& k) {
  const Window w{-k.window().last(), k.size()};
  return Kernel(reflect_spec(k.spec(), k), w);
}

ChainReport chain_alpha_check(const Kernel& k, double alpha, double c, std::size_t max_len) {
  if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0,1]");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (max_len < 2 || max_len > k.size())
    throw std::invalid_argument("max_len must lie in [2, window length]");
  ChainReport rep;
  rep.note = "only chains of consecutive indices with at least 3 points are scanned";
  const std::size_t L = k.size();
  for (std::size_t a = 0; a < L; ++a) {
    double acc = 0.0;
    for (std::size_t m = 2; m <= max_len && a + m - 1 < L; ++m) {
      const std::size_t b = a + m - 1;
      acc += std::pow(k.local(b - 1, b), alpha);
      if (m < 3) continue;
      const ExtReal ratio = quotient(ExtReal(k.local(a, b)), ExtReal(std::pow(acc, 1.0 / alpha)));
      if (rep.worst_chain.empty() || ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_chain.clear();
        for (std::size_t x = a; x <= b; ++x) rep.worst_chain.push_back(local_to_global(k.window(), x));
      }
    }
  }
  rep.ok = rep.worst_ratio <= ExtReal(c);
  return rep;
}

}  // namespace hardy
