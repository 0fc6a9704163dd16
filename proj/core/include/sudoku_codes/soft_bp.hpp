#pragma once

#include <stdexcept>
#include <vector>

#include "sudoku_codes/core_model.hpp"

namespace sudoku_codes {

/// Probability vector over the alphabet {1..q}; probs[v-1] = P(value = v).
struct DistributionMessage {
  std::vector<double> probs;

  int q() const { return static_cast<int>(probs.size()); }
  double operator()(int value) const { return probs.at(static_cast<std::size_t>(value - 1)); }

  static DistributionMessage uniform(int q);
  static DistributionMessage atomic(int q, int value);
  /// Uniform over a subset: the erasure-channel belief for that subset.
  static DistributionMessage uniform_over(const SymbolSet& s);
};

/// d_c incoming messages to one constraint, stacked as a d_c x q matrix.
struct MessageMatrix {
  std::vector<DistributionMessage> rows;

  int dc() const { return static_cast<int>(rows.size()); }
  int q() const { return rows.empty() ? 0 : rows.front().q(); }
};

struct ContradictionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sum over all permutations sigma of prod_i m[i][sigma(i)].
/// Direct expansion up to 4x4, Ryser inclusion-exclusion above.
double permanent(const std::vector<std::vector<double>>& m);

/// Entrywise product of the channel belief and the incoming messages,
/// renormalized. Throws ContradictionError if the product vanishes.
DistributionMessage soft_variable_update(const DistributionMessage& channel_posterior,
                                         const std::vector<DistributionMessage>& incoming);

/// Extrinsic constraint output along row out_edge: entry j is proportional to
/// p[out_edge][j] times the sum over injective assignments of the remaining
/// rows to values other than j. For d_c = q that sum is the permanent of the
/// matrix with row out_edge and column j removed. Throws
/// InfeasibleConstraintError when no assignment has positive weight.
DistributionMessage soft_constraint_update(const MessageMatrix& p, int out_edge);

/// Values carrying probability mass above tol.
SymbolSet support_of(const DistributionMessage& m, double tol = 1e-12);

}  // namespace sudoku_codes
