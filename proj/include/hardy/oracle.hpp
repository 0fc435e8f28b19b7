#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/instance.hpp"
#include "hardy/search.hpp"

namespace hardy {

// clang-format off
enum class FormLabel {
  GOP_DUAL, GOP, WEAK, STRONG, SUP_ITER, CPRIME, CDPRIME,
  B1, B2, B3, B4, B5, B6,
  BT1, BT2, BT3, BT4, BT5, BT6,
  SB1, SB2, SB3, SB4, SB5, SB6, SB7, SB8,
  SCALE3, SCALE4,
};
// clang-format on

std::string to_string(FormLabel f);
std::optional<FormLabel> parse_form(std::string_view name);
const std::vector<FormLabel>& all_forms();

/// Left-hand side of the inequality named by `form`, normalized to be
/// positively homogeneous of degree 1 in a. Forms stated with inner p-th
/// powers carry the outer 1/p. The outer norm is (sum_n w_n X_n^q)^{1/q},
/// or sup_n w_n X_n when q = inf.
///
/// SB forms read the raw sequence u of a row or sup kernel. SCALE forms
/// use w as the outer weight b and that u as c.
ExtReal functional_lhs(FormLabel form, const Instance& I, const TestSequence& a);

/// (sum a_n^p v_n)^{1/p}; sup_n a_n v_n for p = inf.
ExtReal rhs_norm(const Instance& I, const TestSequence& a);

/// Right-hand side matching `form`: rhs_norm for most forms,
/// (sum sigma_p(lo,n)^{-p} a_n^p)^{1/p} for CPRIME/CDPRIME and
/// (sum a_n^p)^{1/p} for SCALE3/SCALE4.
ExtReal form_rhs(FormLabel form, const Instance& I, const TestSequence& a);

/// True for forms stated with inner p-th powers (B5, B6, BT5, BT6, STRONG,
/// CPRIME, CDPRIME, SB6-SB8, SCALE4); their estimate^p is the constant in
/// the original normalization.
bool inner_powered(FormLabel form);

/// True when the supremum of the form is attained at a single-index sequence.
bool vertex_exact(FormLabel form, const ExponentPair& e);

struct OracleResult {
  FormLabel form = FormLabel::GOP_DUAL;
  ExtReal estimate;
  TestSequence witness;
  std::string strategy;
  std::size_t evaluations = 0;
  bool exact = false;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
};

/// Lower estimate of the best constant sup_a lhs / rhs.
OracleResult best_constant(FormLabel form, const Instance& I, Strategy strategy,
                           std::size_t budget, std::uint64_t seed);

/// Index change n -> -n: window [-hi, -lo], reversed weights, kernel
/// V(i,n) = U(-n,-i).
Instance reverse_instance(const Instance& I);

/// The test sequence a_{-n}.
TestSequence reverse_sequence(const TestSequence& a);

enum class ScaleSide { SCALE3, SCALE4 };

/// Best constant of the scaling pair with outer weight b and inner
/// weight c; the right-hand side has unit weights. Requires 1 <= p < inf
/// and 0 < q < inf.
OracleResult scaling_pair(ScaleSide side, const WeightSeq& b, const WeightSeq& c,
                          const ExponentPair& e, Strategy strategy, std::size_t budget,
                          std::uint64_t seed);

}  // namespace hardy
