#include "sudoku_codes/subset_bp.hpp"

#include <stdexcept>

namespace sudoku_codes {

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::Solved: return "solved";
    case DecodeStatus::Stalled: return "stalled";
    case DecodeStatus::MaxIterations: return "max_iterations";
    case DecodeStatus::Contradiction: return "contradiction";
  }
  return "?";
}

SymbolSet variable_update(const SymbolSet& channel_msg, const std::vector<SymbolSet>& incoming) {
  SymbolSet out = channel_msg;
  for (const auto& m : incoming) out = intersect(out, m);
  return out;
}

SymbolSet constraint_update(const std::vector<SymbolSet>& incoming, int q) {
  const int d = static_cast<int>(incoming.size());
  if (d >= 31) throw std::invalid_argument("constraint_update: too many inputs");
  SymbolSet blocked = SymbolSet::empty(q);
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    SymbolSet u = SymbolSet::empty(q);
    int k = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) {
        u = unite(u, incoming[static_cast<size_t>(i)]);
        ++k;
      }
    }
    // A set of k inputs confined to k values locks those values up.
    if (u.cardinality() == k) blocked = unite(blocked, u);
  }
  return complement(blocked);
}

namespace {

// Bipartite matching: can inputs[i..] pick distinct values from `avail`?
bool match_rec(const std::vector<SymbolSet>& inputs, size_t i, SymbolSet avail) {
  if (i == inputs.size()) return true;
  for (int v : intersect(inputs[i], avail).values()) {
    SymbolSet rest = intersect(avail, complement(SymbolSet::singleton(v, avail.q())));
    if (match_rec(inputs, i + 1, rest)) return true;
  }
  return false;
}

}  // namespace

bool sdr_feasible(const std::vector<SymbolSet>& incoming, int v) {
  if (incoming.empty()) return true;
  const int q = incoming.front().q();
  SymbolSet avail = complement(SymbolSet::singleton(v, q));
  return match_rec(incoming, 0, avail);
}

namespace {

struct Decoder {
  const FactorGraph& g;
  const ReceivedWord& rx;
  std::vector<SymbolSet> channel;
  std::vector<SymbolSet> v2c, c2v;

  Decoder(const FactorGraph& graph, const ReceivedWord& received) : g(graph), rx(received) {
    const int q = g.params.q;
    channel.reserve(static_cast<size_t>(g.n_vars));
    for (int v = 0; v < g.n_vars; ++v) {
      int obs = rx.observations[static_cast<size_t>(v)];
      channel.push_back(obs == kErasure ? SymbolSet::full(q) : SymbolSet::singleton(obs, q));
    }
    v2c.assign(g.edges.size(), SymbolSet::full(q));
    c2v.assign(g.edges.size(), SymbolSet::full(q));
  }

  std::vector<SymbolSet> posteriors() const {
    std::vector<SymbolSet> post = channel;
    for (size_t e = 0; e < g.edges.size(); ++e)
      post[static_cast<size_t>(g.edges[e].var)] =
          intersect(post[static_cast<size_t>(g.edges[e].var)], c2v[e]);
    return post;
  }

  bool all_singletons(const std::vector<SymbolSet>& post) const {
    for (const auto& s : post)
      if (s.cardinality() != 1) return false;
    return true;
  }

  bool any_empty(const std::vector<SymbolSet>& msgs) const {
    for (const auto& s : msgs)
      if (s.cardinality() == 0) return true;
    return false;
  }

  void update_v2c(std::vector<SymbolSet>& out) const {
    for (int v = 0; v < g.n_vars; ++v) {
      const auto& es = g.var_edges[static_cast<size_t>(v)];
      for (size_t i = 0; i < es.size(); ++i) {
        SymbolSet m = channel[static_cast<size_t>(v)];
        for (size_t j = 0; j < es.size(); ++j)
          if (j != i) m = intersect(m, c2v[static_cast<size_t>(es[j])]);
        out[static_cast<size_t>(es[i])] = m;
      }
    }
  }

  void update_c2v(std::vector<SymbolSet>& out) const {
    const int q = g.params.q;
    std::vector<SymbolSet> in;
    for (int c = 0; c < g.n_cons; ++c) {
      const auto& es = g.con_edges[static_cast<size_t>(c)];
      for (size_t i = 0; i < es.size(); ++i) {
        in.clear();
        for (size_t j = 0; j < es.size(); ++j)
          if (j != i) in.push_back(v2c[static_cast<size_t>(es[j])]);
        out[static_cast<size_t>(es[i])] = constraint_update(in, q);
      }
    }
  }
};

}  // namespace

DecodeTrace decode_traced(const FactorGraph& graph, const ReceivedWord& received,
                          const DecodeOptions& opts) {
  if (static_cast<int>(received.observations.size()) != graph.n_vars)
    throw std::invalid_argument("decode: received word length mismatch");
  Decoder dec(graph, received);
  DecodeTrace trace;
  DecodeResult& res = trace.result;

  auto post = dec.posteriors();
  if (dec.any_empty(post)) {
    res = {DecodeStatus::Contradiction, 0, std::move(post)};
    return trace;
  }
  if (dec.all_singletons(post)) {
    res = {DecodeStatus::Solved, 0, std::move(post)};
    return trace;
  }

  std::vector<SymbolSet> next_v2c = dec.v2c;
  std::vector<SymbolSet> next_c2v = dec.c2v;
  for (int it = 1; it <= opts.max_iters; ++it) {
    dec.update_v2c(next_v2c);
    std::swap(dec.v2c, next_v2c);
    dec.update_c2v(next_c2v);
    bool fixed_point = (next_c2v == dec.c2v) && (dec.v2c == next_v2c);
    std::swap(dec.c2v, next_c2v);
    if (opts.record_messages) trace.per_iteration.push_back({dec.v2c, dec.c2v});

    post = dec.posteriors();
    if (dec.any_empty(dec.v2c) || dec.any_empty(dec.c2v) || dec.any_empty(post)) {
      res = {DecodeStatus::Contradiction, it, std::move(post)};
      return trace;
    }
    if (dec.all_singletons(post)) {
      res = {DecodeStatus::Solved, it, std::move(post)};
      return trace;
    }
    if (fixed_point) {
      res = {DecodeStatus::Stalled, it, std::move(post)};
      return trace;
    }
  }
  res = {DecodeStatus::MaxIterations, opts.max_iters, std::move(post)};
  return trace;
}

DecodeResult decode(const FactorGraph& graph, const ReceivedWord& received, int max_iters) {
  DecodeOptions opts;
  opts.max_iters = max_iters;
  return decode_traced(graph, received, opts).result;
}

}  // namespace sudoku_codes
