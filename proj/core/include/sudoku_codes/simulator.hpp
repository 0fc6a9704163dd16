#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sudoku_codes/codegraph.hpp"
#include "sudoku_codes/core_model.hpp"

namespace sudoku_codes {

enum class EnsembleKind {
  Regular,  // uniform random socket interleaver; codeword sampled per trial
  Planted,  // codeword fixed first, graph built around it (needs d_c = q)
};

struct SimConfig {
  CodeParams params;
  int n_vars = 0;
  std::vector<double> delta_grid;
  int trials = 1;
  std::uint64_t base_seed = 0;
  int max_iters = 200;
  EnsembleKind ensemble = EnsembleKind::Regular;
  SampleOptions sample_opts;
};

struct DeltaStats {
  double delta = 0.0;
  int trials = 0;
  double word_fail = 0.0;       // any posterior non-singleton at termination
  double sym_unresolved = 0.0;  // fraction of symbols left non-singleton
  double mean_iters = 0.0;
  int solved = 0;
  int stalled = 0;
  int budget = 0;  // decoder hit its iteration cap
  double wilson_lo = 0.0;  // 95% interval on word_fail
  double wilson_hi = 0.0;
};

struct SimStats {
  SimConfig config;
  std::vector<DeltaStats> per_delta;
};

/// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(int k, int n);

/// Deterministic Monte Carlo sweep: one graph per campaign (from base_seed),
/// a fresh codeword and erasure pattern per trial, seeds derived from
/// (base_seed, delta index, trial index). Trials run in parallel.
SimStats run_campaign(const SimConfig& config);

/// Header: delta,trials,word_fail,sym_unresolved,mean_iters,solved,stalled,
/// budget,wilson_lo,wilson_hi. One row per delta, >= 6 significant digits.
std::string stats_to_csv(const SimStats& stats);
void write_csv(const SimStats& stats, const std::string& path);

std::string stats_to_json(const SimStats& stats);

}  // namespace sudoku_codes
