#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/oracle.hpp"

namespace hardy {

enum class Suite { Six, Hux, KernelMain, SupremalPge, Scaling, Dual };

std::string to_string(Suite s);
/// Accepts both `kernel-main` and `kernel_main`.
std::optional<Suite> parse_suite(std::string_view name);

/// One per-sequence inequality lhs_form <= rhs_form (or equality) checked
/// on every sampled test sequence.
struct ChainCheck {
  std::string name;
  bool equality = false;
  bool asserted = true;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest relative excess of the smaller side
  [[nodiscard]] bool ok() const { return failures == 0; }
};

struct SuiteMember {
  std::string label;
  OracleResult result;
  /// Estimate in the inner-p-power normalization (estimate^p) for forms
  /// stated with inner p-th powers; equal to estimate otherwise.
  ExtReal power_normalized;
};

struct SuiteReport {
  Suite suite = Suite::Six;
  std::vector<SuiteMember> members;
  /// ratio[i][j] = estimate_i / estimate_j with 0/0 = 1.
  std::vector<std::vector<double>> ratio;
  std::vector<ChainCheck> chains;
  bool finiteness_agrees = true;
  bool ok = true;
  std::vector<std::string> notes;
};

/// Computes the member oracles of the suite and checks the exact
/// per-sequence chains on `trials` sampled test sequences.
/// six, hux and kernel_main need p <= 1, supremalpge needs 1 <= p < inf,
/// scaling needs 1 <= p < inf and q < inf (w plays b, v plays c).
SuiteReport equivalence_suite(Suite suite, const Instance& I, std::size_t budget,
                              std::uint64_t seed, std::size_t trials = 200);

}  // namespace hardy
