#include "sudoku_codes/codegraph.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include <json.hpp>

namespace sudoku_codes {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

char value_to_char(int v) {
  if (v == kErasure) return '.';
  if (v <= 9) return static_cast<char>('0' + v);
  return static_cast<char>('A' + (v - 10));
}

int char_to_value(char c, int q) {
  int v;
  if (c == '.')
    v = kErasure;
  else if (c >= '1' && c <= '9')
    v = c - '0';
  else if (std::isalpha(static_cast<unsigned char>(c)))
    v = 10 + (std::toupper(static_cast<unsigned char>(c)) - 'A');
  else
    throw std::invalid_argument(std::string("parse_grid: bad cell character '") + c + "'");
  if (v > q) throw std::invalid_argument("parse_grid: cell value exceeds alphabet size");
  return v;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index_a, std::uint64_t index_b) {
  return mix64(mix64(base + 0x9e3779b97f4a7c15ULL * (index_a + 1)) +
               0xc2b2ae3d27d4eb4fULL * (index_b + 1));
}

std::vector<int> FactorGraph::constraint_vars(int con) const {
  std::vector<int> out;
  out.reserve(con_edges.at(static_cast<std::size_t>(con)).size());
  for (int e : con_edges[static_cast<std::size_t>(con)]) out.push_back(edges[static_cast<std::size_t>(e)].var);
  return out;
}

void FactorGraph::rebuild_adjacency() {
  var_edges.assign(static_cast<std::size_t>(n_vars), {});
  con_edges.assign(static_cast<std::size_t>(n_cons), {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    var_edges.at(static_cast<std::size_t>(edges[i].var)).push_back(static_cast<int>(i));
    con_edges.at(static_cast<std::size_t>(edges[i].con)).push_back(static_cast<int>(i));
  }
  // socket order within each node
  for (auto& ve : var_edges)
    std::sort(ve.begin(), ve.end(),
              [&](int a, int b) { return edges[static_cast<std::size_t>(a)].vsock < edges[static_cast<std::size_t>(b)].vsock; });
  for (auto& ce : con_edges)
    std::sort(ce.begin(), ce.end(),
              [&](int a, int b) { return edges[static_cast<std::size_t>(a)].csock < edges[static_cast<std::size_t>(b)].csock; });
}

void FactorGraph::validate() const {
  if (n_vars * params.dv != n_cons * params.dc)
    throw std::logic_error("FactorGraph: socket counts do not match");
  for (const auto& ve : var_edges)
    if (static_cast<int>(ve.size()) != params.dv)
      throw std::logic_error("FactorGraph: variable degree mismatch");
  for (int c = 0; c < n_cons; ++c) {
    auto vars = constraint_vars(c);
    if (static_cast<int>(vars.size()) != params.dc)
      throw std::logic_error("FactorGraph: constraint degree mismatch");
    std::set<int> distinct(vars.begin(), vars.end());
    if (distinct.size() != vars.size())
      throw std::logic_error("FactorGraph: repeated variable within a constraint");
  }
}

FactorGraph build_regular(const CodeParams& params, int n_vars, std::uint64_t seed) {
  if (n_vars <= 0 || (static_cast<long long>(n_vars) * params.dv) % params.dc != 0)
    throw std::invalid_argument("build_regular: n_vars*d_v must be divisible by d_c");
  const int n_cons = n_vars * params.dv / params.dc;

  std::mt19937_64 rng(seed);
  std::vector<int> sockets;
  sockets.reserve(static_cast<std::size_t>(n_vars) * static_cast<std::size_t>(params.dv));

  for (int attempt = 0; attempt < 1000; ++attempt) {
    sockets.clear();
    for (int v = 0; v < n_vars; ++v)
      for (int k = 0; k < params.dv; ++k) sockets.push_back(v);
    std::shuffle(sockets.begin(), sockets.end(), rng);

    bool simple = true;
    for (int c = 0; c < n_cons && simple; ++c) {
      std::uint64_t seen_lo = 0;  // cheap check only for dc values; use set for generality
      std::set<int> seen;
      (void)seen_lo;
      for (int s = 0; s < params.dc; ++s)
        if (!seen.insert(sockets[static_cast<std::size_t>(c * params.dc + s)]).second) simple = false;
    }
    if (!simple) continue;

    FactorGraph g{params};
    g.n_vars = n_vars;
    g.n_cons = n_cons;
    g.seed = seed;
    std::vector<int> next_vsock(static_cast<std::size_t>(n_vars), 0);
    for (int c = 0; c < n_cons; ++c)
      for (int s = 0; s < params.dc; ++s) {
        int v = sockets[static_cast<std::size_t>(c * params.dc + s)];
        g.edges.push_back(Edge{v, c, next_vsock[static_cast<std::size_t>(v)]++, s});
      }
    g.rebuild_adjacency();
    g.validate();
    return g;
  }
  throw std::runtime_error("build_regular: resampling limit exceeded (graph too dense to avoid repeats)");
}

FactorGraph build_classic_sudoku(int box_rows, int box_cols) {
  if (box_rows < 2 || box_cols < 2)
    throw std::invalid_argument("build_classic_sudoku: box dimensions must be >= 2");
  const int q = box_rows * box_cols;
  FactorGraph g{CodeParams(q, 3, q)};
  g.n_vars = q * q;
  g.n_cons = 3 * q;

  auto cell = [q](int r, int c) { return r * q + c; };
  std::vector<int> next_vsock(static_cast<std::size_t>(g.n_vars), 0);
  std::vector<int> next_csock(static_cast<std::size_t>(g.n_cons), 0);
  auto attach = [&](int var, int con) {
    g.edges.push_back(Edge{var, con, next_vsock[static_cast<std::size_t>(var)]++,
                           next_csock[static_cast<std::size_t>(con)]++});
  };
  // constraints 0..q-1 rows, q..2q-1 columns, 2q..3q-1 boxes
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) attach(cell(r, c), r);
  for (int c = 0; c < q; ++c)
    for (int r = 0; r < q; ++r) attach(cell(r, c), q + c);
  for (int b = 0; b < q; ++b) {
    int r0 = (b / box_rows) * box_rows;
    int c0 = (b % box_rows) * box_cols;
    for (int r = r0; r < r0 + box_rows; ++r)
      for (int c = c0; c < c0 + box_cols; ++c) attach(cell(r, c), 2 * q + b);
  }
  // edges are in variable-attachment order; re-order to constraint-socket order
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair{a.con, a.csock} < std::pair{b.con, b.csock};
  });
  g.rebuild_adjacency();
  g.validate();
  return g;
}

std::pair<FactorGraph, Codeword> build_planted(const CodeParams& params, int n_vars,
                                               std::uint64_t seed) {
  if (params.dc != params.q)
    throw std::invalid_argument("build_planted: requires d_c = q");
  if (n_vars <= 0 || n_vars % params.q != 0)
    throw std::invalid_argument("build_planted: requires q | n_vars");
  const int q = params.q;
  const int n_cons = n_vars * params.dv / params.dc;

  Codeword cw;
  cw.symbols.resize(static_cast<std::size_t>(n_vars));
  for (int v = 0; v < n_vars; ++v) cw.symbols[static_cast<std::size_t>(v)] = 1 + v % q;

  std::mt19937_64 rng(seed);
  FactorGraph g{params};
  g.n_vars = n_vars;
  g.n_cons = n_cons;
  g.seed = seed;
  g.edges.resize(static_cast<std::size_t>(n_cons) * static_cast<std::size_t>(q));
  std::vector<int> next_vsock(static_cast<std::size_t>(n_vars), 0);
  for (int value = 1; value <= q; ++value) {
    std::vector<int> socks;  // all sockets of variables carrying this value
    for (int v = value - 1; v < n_vars; v += q)
      for (int k = 0; k < params.dv; ++k) socks.push_back(v);
    std::shuffle(socks.begin(), socks.end(), rng);
    // one socket of each value class per constraint
    for (int c = 0; c < n_cons; ++c) {
      int v = socks[static_cast<std::size_t>(c)];
      g.edges[static_cast<std::size_t>(c * q + value - 1)] =
          Edge{v, c, next_vsock[static_cast<std::size_t>(v)]++, value - 1};
    }
  }
  g.rebuild_adjacency();
  g.validate();
  if (!satisfies_all_constraints(g, cw))
    throw std::logic_error("build_planted: planted codeword invalid");
  return {std::move(g), std::move(cw)};
}

namespace {

// MRV backtracking with forward checking. Complete: exhausting the search
// space without a budget stop proves infeasibility.
class BacktrackSearch {
 public:
  BacktrackSearch(const FactorGraph& g, long budget) : g_(g), budget_(budget) {}

  // fixed[v] in 1..q pins a variable, kErasure leaves it free
  std::optional<std::vector<int>> run(const std::vector<int>& fixed, std::uint64_t seed) {
    rng_.seed(seed);
    budget_hit_ = false;
    expansions_ = 0;
    const int q = g_.params.q;
    val_.assign(static_cast<std::size_t>(g_.n_vars), 0);
    cand_.assign(static_cast<std::size_t>(g_.n_vars), SymbolSet::full(q).bits());
    int assigned = 0;
    for (int v = 0; v < g_.n_vars; ++v)
      if (fixed[static_cast<std::size_t>(v)] != kErasure) {
        if (!place(v, fixed[static_cast<std::size_t>(v)])) return std::nullopt;
        ++assigned;
      }
    if (descend(assigned)) return val_;
    return std::nullopt;
  }

  bool budget_hit() const { return budget_hit_; }

 private:
  bool place(int v, int x) {
    if (!((cand_[static_cast<std::size_t>(v)] >> (x - 1)) & 1)) return false;
    val_[static_cast<std::size_t>(v)] = x;
    for (int e : g_.var_edges[static_cast<std::size_t>(v)])
      for (int e2 : g_.con_edges[static_cast<std::size_t>(g_.edges[static_cast<std::size_t>(e)].con)]) {
        int u = g_.edges[static_cast<std::size_t>(e2)].var;
        if (u != v && val_[static_cast<std::size_t>(u)] == 0)
          cand_[static_cast<std::size_t>(u)] &= ~(std::uint64_t{1} << (x - 1));
      }
    return true;
  }

  bool descend(int assigned) {
    if (assigned == g_.n_vars) return true;
    if (++expansions_ > budget_) {
      budget_hit_ = true;
      return false;
    }
    int best = -1, best_count = kMaxAlphabet + 1;
    for (int v = 0; v < g_.n_vars; ++v)
      if (val_[static_cast<std::size_t>(v)] == 0) {
        int c = __builtin_popcountll(cand_[static_cast<std::size_t>(v)]);
        if (c < best_count) {
          best_count = c;
          best = v;
          if (c <= 1) break;
        }
      }
    if (best_count == 0) return false;

    std::vector<int> order;
    for (int x = 1; x <= g_.params.q; ++x)
      if ((cand_[static_cast<std::size_t>(best)] >> (x - 1)) & 1) order.push_back(x);
    std::shuffle(order.begin(), order.end(), rng_);

    for (int x : order) {
      std::vector<std::pair<int, std::uint64_t>> undo;
      val_[static_cast<std::size_t>(best)] = x;
      bool dead = false;
      for (int e : g_.var_edges[static_cast<std::size_t>(best)])
        for (int e2 : g_.con_edges[static_cast<std::size_t>(g_.edges[static_cast<std::size_t>(e)].con)]) {
          int u = g_.edges[static_cast<std::size_t>(e2)].var;
          if (u != best && val_[static_cast<std::size_t>(u)] == 0 &&
              ((cand_[static_cast<std::size_t>(u)] >> (x - 1)) & 1)) {
            undo.emplace_back(u, cand_[static_cast<std::size_t>(u)]);
            cand_[static_cast<std::size_t>(u)] &= ~(std::uint64_t{1} << (x - 1));
            if (cand_[static_cast<std::size_t>(u)] == 0) dead = true;
          }
        }
      if (!dead && descend(assigned + 1)) return true;
      if (budget_hit_) {
        // unwind without exploring siblings
        for (auto& [u, m] : undo) cand_[static_cast<std::size_t>(u)] = m;
        val_[static_cast<std::size_t>(best)] = 0;
        return false;
      }
      for (auto& [u, m] : undo) cand_[static_cast<std::size_t>(u)] = m;
      val_[static_cast<std::size_t>(best)] = 0;
    }
    return false;
  }

  const FactorGraph& g_;
  long budget_;
  long expansions_ = 0;
  bool budget_hit_ = false;
  std::mt19937_64 rng_;
  std::vector<int> val_;
  std::vector<std::uint64_t> cand_;
};

Codeword search_codeword(const FactorGraph& graph, const std::vector<int>& fixed,
                         std::uint64_t seed, const SampleOptions& opts) {
  BacktrackSearch search(graph, opts.node_budget);
  bool all_exhausted = true;
  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    auto found = search.run(fixed, mix_seed(seed, static_cast<std::uint64_t>(restart)));
    if (found) {
      Codeword cw{std::move(*found)};
      if (!satisfies_all_constraints(graph, cw))
        throw std::logic_error("sample_codeword: internal audit failed");
      return cw;
    }
    if (!search.budget_hit())  // search space exhausted: provably infeasible
      throw CodewordSearchFailure(CodewordSearchError::Infeasible);
    all_exhausted = false;
  }
  (void)all_exhausted;
  throw CodewordSearchFailure(CodewordSearchError::BudgetExhausted);
}

}  // namespace

Codeword sample_codeword(const FactorGraph& graph, std::uint64_t seed, const SampleOptions& opts) {
  std::vector<int> fixed(static_cast<std::size_t>(graph.n_vars), kErasure);
  return search_codeword(graph, fixed, seed, opts);
}

Codeword complete_codeword(const FactorGraph& graph, const ReceivedWord& received,
                           std::uint64_t seed, const SampleOptions& opts) {
  if (static_cast<int>(received.observations.size()) != graph.n_vars)
    throw std::invalid_argument("complete_codeword: dimension mismatch");
  return search_codeword(graph, received.observations, seed, opts);
}

bool satisfies_all_constraints(const FactorGraph& graph, const Codeword& cw) {
  if (static_cast<int>(cw.symbols.size()) != graph.n_vars) return false;
  for (int s : cw.symbols)
    if (s < 1 || s > graph.params.q) return false;
  for (int c = 0; c < graph.n_cons; ++c) {
    std::uint64_t seen = 0;
    for (int v : graph.constraint_vars(c)) {
      std::uint64_t bit = std::uint64_t{1} << (cw.symbols[static_cast<std::size_t>(v)] - 1);
      if (seen & bit) return false;
      seen |= bit;
    }
  }
  return true;
}

ReceivedWord erase(const Codeword& cw, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("erase: delta outside [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  ReceivedWord out;
  out.observations.reserve(cw.symbols.size());
  for (int s : cw.symbols) out.observations.push_back(uniform(rng) < delta ? kErasure : s);
  return out;
}

std::string graph_to_json(const FactorGraph& graph) {
  nlohmann::json j;
  j["q"] = graph.params.q;
  j["dv"] = graph.params.dv;
  j["dc"] = graph.params.dc;
  j["n_vars"] = graph.n_vars;
  j["n_cons"] = graph.n_cons;
  auto edges = nlohmann::json::array();
  for (const Edge& e : graph.edges) edges.push_back({e.var, e.con});
  j["edges"] = std::move(edges);
  if (graph.seed)
    j["seed"] = *graph.seed;
  else
    j["seed"] = nullptr;
  return j.dump();
}

FactorGraph graph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FactorGraph g{CodeParams(j.at("q").get<int>(), j.at("dv").get<int>(), j.at("dc").get<int>())};
  g.n_vars = j.at("n_vars").get<int>();
  g.n_cons = j.at("n_cons").get<int>();
  if (!j.at("seed").is_null()) g.seed = j.at("seed").get<std::uint64_t>();
  std::vector<int> next_vsock(static_cast<std::size_t>(g.n_vars), 0);
  int i = 0;
  for (const auto& e : j.at("edges")) {
    int var = e.at(0).get<int>();
    int con = e.at(1).get<int>();
    g.edges.push_back(Edge{var, con, next_vsock.at(static_cast<std::size_t>(var))++, i % g.params.dc});
    ++i;
  }
  g.rebuild_adjacency();
  g.validate();
  return g;
}

std::string format_grid(const ReceivedWord& word, int q) {
  if (static_cast<int>(word.observations.size()) != q * q)
    throw std::invalid_argument("format_grid: word is not a q x q grid");
  std::string out;
  out.reserve(word.observations.size() + static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c)
      out.push_back(value_to_char(word.observations[static_cast<std::size_t>(r * q + c)]));
    out.push_back('\n');
  }
  return out;
}

std::string format_grid(const Codeword& cw, int q) {
  ReceivedWord w{cw.symbols};
  return format_grid(w, q);
}

ReceivedWord parse_grid(const std::string& text, int q) {
  ReceivedWord out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.observations.push_back(char_to_value(c, q));
  }
  if (static_cast<int>(out.observations.size()) != q * q)
    throw std::invalid_argument("parse_grid: expected " + std::to_string(q * q) + " cells");
  return out;
}

}  // namespace sudoku_codes
