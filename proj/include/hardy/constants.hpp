#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hardy/instance.hpp"

namespace hardy {

/// Characterizing constant A_k (1 <= k <= 13) of the kernel Hardy
/// inequality. Sums and suprema over Z run over the window; the kernel is
/// zero outside it. For p < 1, A_1, A_2, A_12 and A_13 are evaluated on
/// the equivalent p = 1 problem with exponent q/p and kernel U^p, then
/// raised to 1/p. Throws RegimeError outside the constant's regime.
ExtReal condition_A(int k, const Instance& I);

/// Characterizing constant D_k (1 <= k <= 6) of the supremum operator,
/// 1 <= p <= inf. sigma_p(-inf, n) starts at the window bottom.
ExtReal condition_D(int k, const Instance& I);

struct ConstantsReport {
  RegimeLabels labels;
  std::vector<std::pair<std::string, ExtReal>> constants;
  /// Equivalent to the best constant of the kernel Hardy inequality.
  ExtReal predicted_C;
  std::vector<std::string> predicted_from;
  /// Equivalent to the best constant of the iterated supremum inequality.
  ExtReal predicted_sup_C;
  std::vector<std::string> predicted_sup_from;
  std::vector<std::string> advisories;

  [[nodiscard]] const ExtReal* find(const std::string& name) const;
};

/// Which constants to compute: the A family, the D family or both.
enum class ConstantSet { A, D, All };

ConstantsReport characterize(const Instance& I, ConstantSet set = ConstantSet::All);

}  // namespace hardy
