#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sudoku_codes/core_model.hpp"

namespace sudoku_codes {

/// Number of non-decreasing tuples of length b with entries in 1..a:
/// N(a,b) = sum_{k=1..a} N(k, b-1), N(a,1) = a.
std::int64_t count_nondecreasing(int a, int b);

/// Number of distinct orderings of a multiset of cardinalities.
std::int64_t multiplicity(const std::vector<int>& tuple);

/// Exact kernel of one node type: for each non-decreasing tuple of input
/// message cardinalities, the distribution of the output cardinality.
struct ConditionalTable {
  struct Row {
    std::vector<int> tuple;          // non-decreasing, length degree-1
    std::int64_t mult = 0;           // ordered tuples collapsing to this row
    std::vector<Rational> pmf;       // exact P(output card = k), k = 1..q
    std::vector<double> pmf_d;       // cached doubles of pmf
  };

  int q = 0;
  int degree = 0;  // node degree d; tuples have d-1 entries
  std::vector<Row> rows;  // lexicographic tuple order
};

/// Inputs are subsets containing a common value (the transmitted symbol);
/// output is their intersection.
ConditionalTable build_variable_table(int q, int dv);

/// Inputs are subsets containing pairwise distinct values; output is the
/// all-distinct constraint's extrinsic message. The histogram is invariant
/// under reordering the tuple, so one representative ordering is enumerated
/// and weighted by the row multiplicity downstream.
ConditionalTable build_constraint_table(int q, int dc);

/// Multiplicity-weighted polynomial contraction:
/// out(k) = sum_rows mult * row_pmf(k) * prod_m pmf_in(tuple[m]).
/// Output is mathematically normalized but not renormalized here.
CardinalityPmf vn_map(const ConditionalTable& table, const CardinalityPmf& pmf_in);
CardinalityPmf cn_map(const ConditionalTable& table, const CardinalityPmf& pmf_in);

/// Erasure channel on the cardinality pmf: a symbol survives with
/// probability 1-delta (forcing cardinality 1) and is erased otherwise.
CardinalityPmf apply_channel(const CardinalityPmf& pmf, double delta);

enum class DeOutcome { Converged, Stalled, Budget };

const char* to_string(DeOutcome o);

struct DeTrace {
  double delta = 0.0;
  DeOutcome outcome = DeOutcome::Budget;
  int iterations = 0;
  std::vector<CardinalityPmf> v2c;  // variable-to-constraint pmf per iteration
  std::vector<CardinalityPmf> c2v;  // constraint-to-variable pmf per iteration
};

struct DeOptions {
  int max_iters = 5000;
  double tol = 1e-10;        // converged when P(card > 1) <= tol
  double stall_tol = 1e-14;  // stalled when sup-norm step falls below this
  bool record_history = true;
};

/// One density-evolution run. The recursion starts from
/// apply_channel(atomic-at-q, delta) and alternates the constraint and
/// variable kernels, re-applying the channel after every variable step.
/// The degree-(d-1) maps amplify normalization drift, so the pmf is
/// renormalized after each step; drift beyond 1e-9 raises an error.
DeTrace de_iterate(const ConditionalTable& var_table, const ConditionalTable& con_table,
                   double delta, const DeOptions& opts = {});
DeTrace de_iterate(const CodeParams& params, double delta, int max_iters = 5000,
                   double tol = 1e-10);

struct ThresholdResult {
  double theta = 0.0;
  double lower = 0.0;  // largest delta observed to converge
  double upper = 1.0;  // smallest delta observed to fail
  int iterations_cap = 0;
  double convergence_tol = 0.0;
};

/// Bisection on delta over [0,1] with de_iterate's Converged predicate.
ThresholdResult find_threshold(const CodeParams& params, double precision = 1e-6,
                               const DeOptions& opts = {});

/// Conjectured design rate after k decoding iterations and its limit.
double rate_k(const CodeParams& params, int k);
double rate_limit(const CodeParams& params);

/// CSV: "tuple,multiplicity,p1..pq" with probabilities as reduced fractions.
std::string table_to_csv(const ConditionalTable& table);
std::string table_to_json(const ConditionalTable& table);

/// CSV: "iteration,p1..pq" of the variable-to-constraint pmf per iteration.
std::string trace_to_csv(const DeTrace& trace);
std::string trace_to_json(const DeTrace& trace);

}  // namespace sudoku_codes
