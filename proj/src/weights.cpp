#include "hardy/weights.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace hardy {

WeightSeq::WeightSeq(Index start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("weight sequence must have length >= 1");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double x = values_[k];
    if (!std::isfinite(x) || x < 0.0)
      throw std::invalid_argument("weight entry " + std::to_string(k) +
                                  " must be finite and nonnegative");
  }
}

double WeightSeq::operator[](Index n) const {
  if (n < start_ || n >= start_ + static_cast<Index>(values_.size())) return 0.0;
  return values_[static_cast<std::size_t>(n - start_)];
}

double WeightSeq::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

bool WeightSeq::is_zero() const {
  for (double x : values_)
    if (x != 0.0) return false;
  return true;
}

ExtReal tail_sum(const WeightSeq& w, Index n) {
  const Index lo = std::max(n, w.start());
  double s = 0.0;
  // Summed right to left so tail(n) - tail(n+1) is exactly w_n on
  // integer data.
  for (Index i = w.window().last(); i >= lo; --i) s += w[i];
  return ExtReal(s);
}

ExtReal sigma_p(const WeightSeq& v, double p, Index N, Index M) {
  if (N > M) throw std::invalid_argument("sigma_p: empty index range (N > M)");
  if (!(p >= 1.0) || p == kInf)
    throw RegimeError("sigma_p is defined for 1 <= p < inf");
  // Any out-of-window index has v_i = 0, hence an infinite contribution.
  if (N < v.window().first() || M > v.window().last()) return ExtReal::infinity();
  if (p == 1.0) {
    ExtReal s;
    for (Index i = N; i <= M; ++i) s = max(s, ext_pow(ExtReal(v[i]), -1.0));
    return s;
  }
  const double pc = conjugate(p);
  ExtReal s;
  for (Index i = N; i <= M; ++i) s += ext_pow(ExtReal(v[i]), 1.0 - pc);
  return ext_pow(s, 1.0 / pc);
}

}  // namespace hardy
