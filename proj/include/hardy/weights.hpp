#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hardy/numerics.hpp"

namespace hardy {

/// Index window [start, start + length - 1].
struct Window {
  Index start = 0;
  std::size_t length = 1;

  [[nodiscard]] Index first() const { return start; }
  [[nodiscard]] Index last() const { return start + static_cast<Index>(length) - 1; }
  [[nodiscard]] bool contains(Index n) const { return n >= first() && n <= last(); }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Finitely supported nonnegative sequence on Z.
///
/// Entry n is values[n - start] inside the window and 0 everywhere else.
/// Every infinite sum or supremum over Z is evaluated under this
/// zero-extension.
class WeightSeq {
 public:
  WeightSeq() = default;
  WeightSeq(Index start, std::vector<double> values);

  [[nodiscard]] Index start() const { return start_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] Window window() const { return {start_, values_.size()}; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Zero outside the window.
  [[nodiscard]] double operator[](Index n) const;

  [[nodiscard]] double total() const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const WeightSeq&, const WeightSeq&) = default;

 private:
  Index start_ = 0;
  std::vector<double> values_;
};

/// Test sequences share the representation and invariants of weights.
using TestSequence = WeightSeq;

/// sum_{i >= n} w_i.
ExtReal tail_sum(const WeightSeq& w, Index n);

/// sigma_p(N, M): (sum_{i=N}^{M} v_i^{1-p'})^{1/p'} for 1 < p < inf and
/// sup_{N<=i<=M} v_i^{-1} for p = 1. Indices outside the window see
/// v_i = 0 and contribute +inf. Throws for N > M or p outside [1, inf).
ExtReal sigma_p(const WeightSeq& v, double p, Index N, Index M);

}  // namespace hardy
