#pragma once

#include <vector>

#include "sudoku_codes/codegraph.hpp"
#include "sudoku_codes/core_model.hpp"

namespace sudoku_codes {

enum class DecodeStatus { Solved, Stalled, MaxIterations, Contradiction };

const char* to_string(DecodeStatus s);

struct DecodeResult {
  DecodeStatus status = DecodeStatus::MaxIterations;
  int iterations = 0;
  std::vector<SymbolSet> posteriors;  // per-variable final candidate sets
};

/// Extrinsic variable rule: channel message intersected with all other
/// incoming constraint messages. An empty result is legal output; the
/// caller interprets it as a contradiction.
SymbolSet variable_update(const SymbolSet& channel_msg, const std::vector<SymbolSet>& incoming);

/// Extrinsic constraint rule: remove every bottleneck set (union of k
/// incoming messages with cardinality exactly k) from the full alphabet.
/// Enumerates all 2^(d_c - 1) - 1 nonempty index subsets.
SymbolSet constraint_update(const std::vector<SymbolSet>& incoming, int q);

/// Brute-force oracle for constraint_update: true iff the inputs admit a
/// system of distinct representatives avoiding v.
bool sdr_feasible(const std::vector<SymbolSet>& incoming, int v);

struct DecodeOptions {
  int max_iters = 200;
  bool record_messages = false;  // keep per-iteration edge messages (tests)
};

struct DecodeTraceEntry {
  std::vector<SymbolSet> v2c;
  std::vector<SymbolSet> c2v;
};

struct DecodeTrace {
  DecodeResult result;
  std::vector<DecodeTraceEntry> per_iteration;  // filled when record_messages
};

/// Flooding-schedule subset decoder. Per iteration all variable-to-constraint
/// messages update, then all constraint-to-variable messages. Terminates on
/// all-singleton posteriors (Solved), an exact message fixed point (Stalled),
/// any empty message (Contradiction), or the iteration cap.
DecodeResult decode(const FactorGraph& graph, const ReceivedWord& received,
                    int max_iters = 200);

DecodeTrace decode_traced(const FactorGraph& graph, const ReceivedWord& received,
                          const DecodeOptions& opts);

}  // namespace sudoku_codes
