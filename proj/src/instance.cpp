#include "hardy/instance.hpp"

#include <stdexcept>

namespace hardy {

Instance::Instance(ExponentPair e, WeightSeq v_, WeightSeq w_, KernelSpec spec)
    : window(v_.window()),
      exponents(e),
      v(std::move(v_)),
      w(std::move(w_)),
      kernel(std::move(spec), window) {
  if (!(w.window() == window))
    throw std::invalid_argument("weights v and w must share the same window");
}

}  // namespace hardy
