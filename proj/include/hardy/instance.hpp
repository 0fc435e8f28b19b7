#pragma once

#include "hardy/kernel.hpp"
#include "hardy/numerics.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// A weighted inequality problem: exponents, weights and kernel on one window.
struct Instance {
  Instance(ExponentPair e, WeightSeq v_, WeightSeq w_, KernelSpec spec);

  Window window;
  ExponentPair exponents;
  WeightSeq v;
  WeightSeq w;
  Kernel kernel;

  [[nodiscard]] double p() const { return exponents.p; }
  [[nodiscard]] double q() const { return exponents.q; }
  [[nodiscard]] std::size_t size() const { return window.length; }
  /// Global index of window position k.
  [[nodiscard]] Index at(std::size_t k) const { return window.start + static_cast<Index>(k); }
};

}  // namespace hardy
