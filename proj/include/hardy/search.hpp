#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/numerics.hpp"

namespace hardy {

enum class Strategy { Vertex, SupportGrid, MultistartAscent, Auto };

std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// sup over nonnegative a != 0 of lhs(a) / rhs(a), where
/// rhs(a) = (sum_n weights_n a_n^p)^{1/p}, or max_n weights_n a_n for p = inf.
/// lhs must be nonnegative, nondecreasing in every coordinate and
/// positively homogeneous of degree 1.
struct RatioProblem {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> lhs;
  std::vector<double> weights;
  double p = 1.0;
  /// The sup is attained at a single-index sequence.
  bool vertex_exact = false;
};

struct SearchResult {
  ExtReal estimate;
  std::vector<double> witness;
  std::string strategy;
  std::size_t evaluations = 0;
  bool exact = false;
};

double rhs_value(const RatioProblem& P, std::span<const double> a);

/// Lower estimate of the supremum. Deterministic for fixed seed and budget.
/// Search runs in b_n = weights_n a_n^p; a coordinate with zero weight
/// yields +inf when it alone produces a positive lhs and is fixed at 0
/// otherwise. `seeds` are extra starting points for the ascent stage.
SearchResult maximize_ratio(const RatioProblem& P, Strategy strategy, std::size_t budget,
                            std::uint64_t seed,
                            const std::vector<std::vector<double>>& seeds = {});

}  // namespace hardy
