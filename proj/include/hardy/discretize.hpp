#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/instance.hpp"
#include "hardy/weights.hpp"

namespace hardy {

/// Covering sequence n_{N-1} < n_N < ... < n_M of a weight w with ratio D.
///
/// n_N..n_M are stored in `points`; `levels[k-N]` is the level m_k whose
/// set A_{m_k} = {j : D^{-m} < tail(j) <= D^{-m+1}} yielded n_k. The
/// anchor n_{N-1} is nullopt for the -inf sentinel.
struct CoveringSeq {
  double D = 2.0;
  int N = 0;
  std::optional<Index> anchor;
  std::vector<Index> points;
  std::vector<int> levels;

  [[nodiscard]] int M() const { return N + static_cast<int>(points.size()) - 1; }
  /// n_k for N <= k <= M.
  [[nodiscard]] Index at(int k) const { return points.at(static_cast<std::size_t>(k - N)); }
};

/// The unique integer m with D^{-m} < t <= D^{-m+1}, for t > 0.
int tail_level(double t, double D);

/// Throws std::invalid_argument("empty weight") for w == 0 and for D <= 1.
CoveringSeq covering_sequence(const WeightSeq& w, double D);

struct CoveringReport {
  bool ok = true;
  std::string failed_clause;  // "order", "i", "ii" or "iii"; empty when ok
  std::string detail;
};

CoveringReport verify_covering(const WeightSeq& w, const CoveringSeq& cs);

struct SumBounds {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  double S = 0.0;
  /// (D-1) S <= 3 D middle and middle <= D S, compared without division.
  bool ok = true;
};

/// Two-sided estimate of sum_n w_n b_n by sum_k tail(n_k) b_{n_k}. Throws
/// std::invalid_argument when b is not nondecreasing on the window of w.
SumBounds weighted_sum_bounds(const WeightSeq& w, const TestSequence& b, const CoveringSeq& cs);

/// Smallest admissible D for the block decomposition of an instance:
/// 2 c^2 C*^{q/p} with c = max(1, 2^{q/p-1}) and C* the regularity
/// constant of U^p. Infinite when U^p is not regular on the window.
ExtReal l24_threshold(const Instance& I);

/// max(2, ceil(threshold)).
double default_D(const Instance& I);

struct BlockDecomposition {
  double lhs = 0.0;
  double block_term = 0.0;
  double cross_term = 0.0;
  double ratio = 1.0;
};

/// Requires 0 < p <= 1, 0 < q < inf and cs.D >= max(threshold, 1+eps).
BlockDecomposition l24_decompose(const Instance& I, const TestSequence& a, const CoveringSeq& cs);

}  // namespace hardy
