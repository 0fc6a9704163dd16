#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sudoku_codes/core_model.hpp"

namespace sudoku_codes {

/// One variable-socket-to-constraint-socket connection.
struct Edge {
  int var;
  int con;
  int vsock;  // 0..dv-1 within the variable
  int csock;  // 0..dc-1 within the constraint
};

/// Bipartite variable/constraint graph of a SUDOKU-constraint code.
struct FactorGraph {
  explicit FactorGraph(const CodeParams& p) : params(p) {}

  CodeParams params;
  int n_vars = 0;
  int n_cons = 0;
  std::vector<Edge> edges;  // constraint-socket order: edge i is (con = i/dc, csock = i%dc)
  std::optional<std::uint64_t> seed;

  // adjacency by edge index, ordered by socket
  std::vector<std::vector<int>> var_edges;
  std::vector<std::vector<int>> con_edges;

  /// Variables attached to one constraint, in socket order.
  std::vector<int> constraint_vars(int con) const;
  void rebuild_adjacency();
  void validate() const;  // socket counts, degrees, distinct vars per constraint
};

struct Codeword {
  std::vector<int> symbols;  // each in 1..q
};

inline constexpr int kErasure = 0;

struct ReceivedWord {
  std::vector<int> observations;  // 1..q, or kErasure
};

/// Fixed integer mixing function used to derive per-trial seeds
/// (splitmix64 finalizer over base ^ golden-ratio-spaced indices).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index_a, std::uint64_t index_b = 0);

/// Random regular code: a uniformly-random socket permutation, resampled
/// (deterministically, same generator) while any constraint holds a
/// repeated variable. Throws after 1000 attempts.
FactorGraph build_regular(const CodeParams& params, int n_vars, std::uint64_t seed);

/// Classic Sudoku with box_rows x box_cols boxes: q = box_rows*box_cols,
/// q*q variables, q rows + q columns + q boxes, d_v = 3.
FactorGraph build_classic_sudoku(int box_rows, int box_cols);

/// Planted ensemble (requires d_c = q and q | n_vars): the codeword is fixed
/// first and each constraint draws exactly one socket from every value class,
/// so the graph is valid by construction. Random regular ensembles with the
/// paper's table parameters hold no codeword at practical block lengths, so
/// this is the ensemble finite-length decoder experiments run on.
std::pair<FactorGraph, Codeword> build_planted(const CodeParams& params, int n_vars,
                                               std::uint64_t seed);

enum class CodewordSearchError {
  BudgetExhausted,  // node budget spent on every restart; feasibility unknown
  Infeasible,       // search space exhausted: the graph provably has no codeword
};

struct CodewordSearchFailure : std::runtime_error {
  CodewordSearchError kind;
  explicit CodewordSearchFailure(CodewordSearchError k)
      : std::runtime_error(k == CodewordSearchError::Infeasible
                               ? "sample_codeword: graph has no valid codeword (search exhausted)"
                               : "sample_codeword: no codeword found within search budget"),
        kind(k) {}
};

struct SampleOptions {
  long node_budget = 1'000'000;  // expansions per restart
  int max_restarts = 100;
};

/// Backtracking with minimum-remaining-values order and seeded random value
/// order; restarts with a derived seed after the node budget.
Codeword sample_codeword(const FactorGraph& graph, std::uint64_t seed,
                         const SampleOptions& opts = {});

/// Solve with given observations fixed (erasures free). Same search as
/// sample_codeword. Throws CodewordSearchFailure if no completion exists.
Codeword complete_codeword(const FactorGraph& graph, const ReceivedWord& received,
                           std::uint64_t seed, const SampleOptions& opts = {});

bool satisfies_all_constraints(const FactorGraph& graph, const Codeword& cw);

/// q-ary erasure channel: each symbol independently erased with probability delta.
ReceivedWord erase(const Codeword& cw, double delta, std::uint64_t seed);

/// JSON object {q, dv, dc, n_vars, n_cons, edges:[[var,con],...], seed}.
std::string graph_to_json(const FactorGraph& graph);
FactorGraph graph_from_json(const std::string& text);

/// Row-major string of q^2 cells; '.' marks an erasure. Digits 1..9 for
/// q <= 9, letters 'A'.. beyond. Whitespace is ignored on parse.
std::string format_grid(const ReceivedWord& word, int q);
std::string format_grid(const Codeword& cw, int q);
ReceivedWord parse_grid(const std::string& text, int q);

}  // namespace sudoku_codes
