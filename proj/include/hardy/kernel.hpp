#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hardy/numerics.hpp"
#include "hardy/weights.hpp"

namespace hardy {

struct KernelSpec;

/// U(i,n) = c.
struct ConstantKernel {
  double c = 1.0;
};
/// Explicit upper-triangular table: rows[i - start][n - i] = U(i,n).
struct TabulatedKernel {
  Index start = 0;
  std::vector<std::vector<double>> rows;
};
/// U(i,n) = sup_{i<=j<=n} u_j.
struct SupOfSequenceKernel {
  WeightSeq u;
};
/// U(i,n) = u_i. Not monotone in general.
struct RowSequenceKernel {
  WeightSeq u;
};
/// U(i,n) = base(i,n)^r.
struct PowerKernel {
  std::shared_ptr<const KernelSpec> base;
  double r = 1.0;
};

struct KernelSpec {
  std::variant<ConstantKernel, TabulatedKernel, SupOfSequenceKernel, RowSequenceKernel,
               PowerKernel>
      node;
};

/// The raw sequence u of a SupOfSequence or RowSequence spec, else nullptr.
const WeightSeq* sequence_data(const KernelSpec& spec);

struct MonotonicityViolation {
  enum class Axis { First, Second };
  Axis axis;
  // First axis: U(i,n) < U(i+1,n). Second axis: U(i,n) > U(i,n+1).
  Index i;
  Index n;
  double lhs;
  double rhs;
};

struct MonotonicityReport {
  bool ok = true;
  std::vector<MonotonicityViolation> violations;
};

/// A kernel materialized on a window. Diagnostics are computed once at
/// construction; the object is immutable afterwards.
class Kernel {
 public:
  Kernel(KernelSpec spec, Window window);

  [[nodiscard]] const KernelSpec& spec() const { return spec_; }
  [[nodiscard]] Window window() const { return window_; }
  [[nodiscard]] std::size_t size() const { return window_.length; }

  /// Checked evaluation; throws std::out_of_range outside the window or for i > n.
  [[nodiscard]] ExtReal eval(Index i, Index n) const;

  /// Unchecked evaluation in window-local coordinates (0 <= li <= ln < size()).
  [[nodiscard]] double local(std::size_t li, std::size_t ln) const {
    return table_[li * window_.length + ln];
  }

  [[nodiscard]] const MonotonicityReport& monotonicity() const { return monotonicity_; }
  [[nodiscard]] ExtReal regularity() const { return regularity_; }

 private:
  KernelSpec spec_;
  Window window_;
  std::vector<double> table_;
  MonotonicityReport monotonicity_;
  ExtReal regularity_;
};

MonotonicityReport monotonicity_check(const Kernel& k);

/// max over window triples i <= j <= n of U(i,n) / (U(i,j) + U(j,n)),
/// with 0/0 = 0 and x/0 = inf. O(L^3).
ExtReal regularity_constant(const Kernel& k);

/// Pointwise r-th power. Constant and tabulated specs are materialized
/// directly; other specs are wrapped.
Kernel power_kernel(const Kernel& k, double r);

/// The index-reflected kernel V(i,n) = U(-n,-i) on the reflected window.
Kernel reflect_kernel(const Kernel& k);

struct ChainReport {
  bool ok = true;
  std::vector<Index> worst_chain;
  ExtReal worst_ratio;
  std::string note;
};

/// Scans U(x_1,x_m) <= c (sum U(x_i,x_{i+1})^alpha)^{1/alpha} over chains of
/// consecutive indices with 3 <= m <= max_len points.
ChainReport chain_alpha_check(const Kernel& k, double alpha, double c, std::size_t max_len);

}  // namespace hardy
