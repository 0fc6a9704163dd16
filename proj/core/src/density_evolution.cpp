#include "sudoku_codes/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sudoku_codes/subset_bp.hpp"

namespace sudoku_codes {

std::int64_t count_nondecreasing(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("count_nondecreasing: a, b must be >= 1");
  std::vector<std::int64_t> n(static_cast<std::size_t>(a));
  for (int k = 1; k <= a; ++k) n[static_cast<std::size_t>(k - 1)] = k;
  for (int col = 2; col <= b; ++col) {
    std::int64_t acc = 0;
    for (int k = 1; k <= a; ++k) {
      acc += n[static_cast<std::size_t>(k - 1)];
      n[static_cast<std::size_t>(k - 1)] = acc;
    }
  }
  return n[static_cast<std::size_t>(a - 1)];
}

std::int64_t multiplicity(const std::vector<int>& tuple) {
  std::int64_t fact = 1;
  for (std::size_t i = 2; i <= tuple.size(); ++i) fact *= static_cast<std::int64_t>(i);
  std::vector<int> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    std::int64_t run_fact = 1;
    for (std::size_t k = 2; k <= j - i; ++k) run_fact *= static_cast<std::int64_t>(k);
    fact /= run_fact;
    i = j;
  }
  return fact;
}

namespace {

std::vector<std::vector<int>> nondecreasing_tuples(int q, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(len), 1);
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == q) --i;
    if (i < 0) break;
    int v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < len; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

// All cardinality-c subsets of {1..q} that contain `forced`.
std::vector<SymbolSet> subsets_with(int q, int c, int forced) {
  std::vector<SymbolSet> out;
  const std::uint64_t top = std::uint64_t{1} << q;
  const std::uint64_t fbit = std::uint64_t{1} << (forced - 1);
  for (std::uint64_t bits = fbit; bits < top; ++bits)
    if ((bits & fbit) && __builtin_popcountll(bits) == c) out.emplace_back(bits, q);
  return out;
}

// Walk the cartesian product of per-input subset choices, histogramming the
// output cardinality of `node`.
template <typename Node>
void enumerate_combos(const std::vector<std::vector<SymbolSet>>& choices, Node&& node,
                      std::vector<std::int64_t>& hist) {
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<SymbolSet> picked;
  picked.reserve(choices.size());
  while (true) {
    picked.clear();
    for (std::size_t i = 0; i < choices.size(); ++i) picked.push_back(choices[i][idx[i]]);
    int card = node(picked);
    if (card < 1) throw std::logic_error("conditional table: empty node output");
    ++hist[static_cast<std::size_t>(card - 1)];
    std::size_t i = choices.size();
    while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
}

template <typename RowFn>
ConditionalTable build_table(int q, int degree, RowFn&& row_fn) {
  ConditionalTable table;
  table.q = q;
  table.degree = degree;
  auto tuples = nondecreasing_tuples(q, degree - 1);
  table.rows.resize(tuples.size());

  auto fill_row = [&](std::size_t r) {
    ConditionalTable::Row& row = table.rows[r];
    row.tuple = tuples[r];
    row.mult = multiplicity(row.tuple);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q), 0);
    row_fn(row.tuple, hist);
    std::int64_t total = 0;
    for (std::int64_t h : hist) total += h;
    row.pmf.reserve(static_cast<std::size_t>(q));
    row.pmf_d.reserve(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
      Rational p(hist[static_cast<std::size_t>(k)]);
      p /= total;
      row.pmf_d.push_back(to_double(p));
      row.pmf.push_back(std::move(p));
    }
  };

  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(tuples.size()));
  if (workers <= 1) {
    for (std::size_t r = 0; r < tuples.size(); ++r) fill_row(r);
    return table;
  }
  std::vector<std::future<void>> futs;
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t r = w; r < tuples.size(); r += workers) fill_row(r);
    }));
  }
  for (auto& f : futs) f.get();
  return table;
}

}  // namespace

ConditionalTable build_variable_table(int q, int dv) {
  if (q < 2 || q > 8) throw std::invalid_argument("build_variable_table: need 2 <= q <= 8");
  if (dv < 2) throw std::invalid_argument("build_variable_table: need d_v >= 2");
  return build_table(q, dv, [q](const std::vector<int>& tuple, std::vector<std::int64_t>& hist) {
    std::vector<std::vector<SymbolSet>> choices;
    for (int c : tuple) choices.push_back(subsets_with(q, c, 1));
    enumerate_combos(choices,
                     [q](const std::vector<SymbolSet>& in) {
                       SymbolSet s = SymbolSet::full(q);
                       for (const auto& x : in) s = intersect(s, x);
                       return s.cardinality();
                     },
                     hist);
  });
}

ConditionalTable build_constraint_table(int q, int dc) {
  if (q < 2 || q > 8) throw std::invalid_argument("build_constraint_table: need 2 <= q <= 8");
  if (dc < 2 || dc > q) throw std::invalid_argument("build_constraint_table: need 2 <= d_c <= q");
  return build_table(q, dc, [q](const std::vector<int>& tuple, std::vector<std::int64_t>& hist) {
    // Input m holds the transmitted value m+2; the output edge holds value 1.
    std::vector<std::vector<SymbolSet>> choices;
    for (std::size_t m = 0; m < tuple.size(); ++m)
      choices.push_back(subsets_with(q, tuple[m], static_cast<int>(m) + 2));
    enumerate_combos(
        choices,
        [q](const std::vector<SymbolSet>& in) { return constraint_update(in, q).cardinality(); },
        hist);
  });
}

namespace {

CardinalityPmf contract(const ConditionalTable& table, const CardinalityPmf& pmf_in) {
  if (pmf_in.q() != table.q) throw std::invalid_argument("kernel map: alphabet size mismatch");
  CardinalityPmf out(table.q);
  for (const auto& row : table.rows) {
    double w = static_cast<double>(row.mult);
    for (int c : row.tuple) w *= pmf_in(c);
    if (w == 0.0) continue;
    for (int k = 1; k <= table.q; ++k) out.at(k) += w * row.pmf_d[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

}  // namespace

CardinalityPmf vn_map(const ConditionalTable& table, const CardinalityPmf& pmf_in) {
  return contract(table, pmf_in);
}

CardinalityPmf cn_map(const ConditionalTable& table, const CardinalityPmf& pmf_in) {
  return contract(table, pmf_in);
}

CardinalityPmf apply_channel(const CardinalityPmf& pmf, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("apply_channel: bad delta");
  CardinalityPmf out(pmf.q());
  out.at(1) = (1.0 - delta) + delta * pmf(1);
  for (int k = 2; k <= pmf.q(); ++k) out.at(k) = delta * pmf(k);
  return out;
}

const char* to_string(DeOutcome o) {
  switch (o) {
    case DeOutcome::Converged: return "converged";
    case DeOutcome::Stalled: return "stalled";
    case DeOutcome::Budget: return "budget";
  }
  return "?";
}

namespace {

// The maps are homogeneous of degree d-1, so any normalization drift gets
// amplified each iteration; renormalize every step and treat large drift as
// a kernel bug rather than numerical noise.
void check_and_normalize(CardinalityPmf& pmf) {
  double s = pmf.sum();
  if (std::abs(s - 1.0) > 1e-9)
    throw std::runtime_error("density evolution: pmf drifted off normalization");
  pmf.normalize();
}

}  // namespace

DeTrace de_iterate(const ConditionalTable& var_table, const ConditionalTable& con_table,
                   double delta, const DeOptions& opts) {
  if (var_table.q != con_table.q)
    throw std::invalid_argument("de_iterate: table alphabet mismatch");
  const int q = var_table.q;
  DeTrace trace;
  trace.delta = delta;

  CardinalityPmf v2c = apply_channel(CardinalityPmf::atomic(q, q), delta);
  if (opts.record_history) trace.v2c.push_back(v2c);

  for (int it = 1; it <= opts.max_iters; ++it) {
    CardinalityPmf c2v = cn_map(con_table, v2c);
    check_and_normalize(c2v);
    CardinalityPmf next = apply_channel(vn_map(var_table, c2v), delta);
    check_and_normalize(next);
    if (opts.record_history) {
      trace.c2v.push_back(c2v);
      trace.v2c.push_back(next);
    }
    trace.iterations = it;

    if (next.mass_above_one() <= opts.tol) {
      trace.outcome = DeOutcome::Converged;
      return trace;
    }
    double step = 0.0;
    for (int k = 1; k <= q; ++k) step = std::max(step, std::abs(next(k) - v2c(k)));
    v2c = std::move(next);
    if (step < opts.stall_tol) {
      trace.outcome = DeOutcome::Stalled;
      return trace;
    }
  }
  trace.outcome = DeOutcome::Budget;
  return trace;
}

DeTrace de_iterate(const CodeParams& params, double delta, int max_iters, double tol) {
  DeOptions opts;
  opts.max_iters = max_iters;
  opts.tol = tol;
  return de_iterate(build_variable_table(params.q, params.dv),
                    build_constraint_table(params.q, params.dc), delta, opts);
}

ThresholdResult find_threshold(const CodeParams& params, double precision, const DeOptions& opts) {
  if (!(precision > 0)) throw std::invalid_argument("find_threshold: precision must be positive");
  ConditionalTable vt = build_variable_table(params.q, params.dv);
  ConditionalTable ct = build_constraint_table(params.q, params.dc);
  DeOptions run = opts;
  run.record_history = false;

  auto converges = [&](double delta) {
    return de_iterate(vt, ct, delta, run).outcome == DeOutcome::Converged;
  };
  double lo = 0.0, hi = 1.0;
  if (!converges(lo)) throw std::runtime_error("find_threshold: delta = 0 does not converge");
  while (hi - lo > precision) {
    double mid = 0.5 * (lo + hi);
    (converges(mid) ? lo : hi) = mid;
  }
  ThresholdResult res;
  res.theta = 0.5 * (lo + hi);
  res.lower = lo;
  res.upper = hi;
  res.iterations_cap = run.max_iters;
  res.convergence_tol = run.tol;
  return res;
}

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

double rate_k(const CodeParams& params, int k) {
  if (k < 0) throw std::invalid_argument("rate_k: k must be >= 0");
  const double lnq = std::log(static_cast<double>(params.q));
  const double num =
      log_factorial(params.dc) + static_cast<double>(k) * (params.dv - 1) * log_factorial(params.dc - 1);
  const double den = params.dc + static_cast<double>(k) * (params.dc - 1) * (params.dv - 1);
  return num / (lnq * den);
}

double rate_limit(const CodeParams& params) {
  return log_factorial(params.dc - 1) / (std::log(static_cast<double>(params.q)) * (params.dc - 1));
}

namespace {

std::string tuple_string(const std::vector<int>& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(tuple[i]);
  }
  s += ')';
  return s;
}

}  // namespace

std::string table_to_csv(const ConditionalTable& table) {
  std::ostringstream os;
  os << "tuple,multiplicity";
  for (int k = 1; k <= table.q; ++k) os << ",p" << k;
  os << '\n';
  for (const auto& row : table.rows) {
    os << tuple_string(row.tuple) << ',' << row.mult;
    for (const auto& p : row.pmf) os << ',' << to_fraction_string(p);
    os << '\n';
  }
  return os.str();
}

std::string table_to_json(const ConditionalTable& table) {
  nlohmann::json j;
  j["q"] = table.q;
  j["degree"] = table.degree;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r;
    r["tuple"] = row.tuple;
    r["multiplicity"] = row.mult;
    nlohmann::json pmf = nlohmann::json::array();
    for (const auto& p : row.pmf) pmf.push_back(to_fraction_string(p));
    r["pmf"] = std::move(pmf);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2);
}

std::string trace_to_csv(const DeTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  int q = trace.v2c.empty() ? 0 : trace.v2c.front().q();
  os << "iteration";
  for (int k = 1; k <= q; ++k) os << ",p" << k;
  os << '\n';
  for (std::size_t it = 0; it < trace.v2c.size(); ++it) {
    os << it;
    for (int k = 1; k <= q; ++k) os << ',' << trace.v2c[it](k);
    os << '\n';
  }
  return os.str();
}

std::string trace_to_json(const DeTrace& trace) {
  nlohmann::json j;
  j["delta"] = trace.delta;
  j["outcome"] = to_string(trace.outcome);
  j["iterations"] = trace.iterations;
  auto dump = [](const std::vector<CardinalityPmf>& seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& pmf : seq) arr.push_back(pmf.raw());
    return arr;
  };
  j["v2c"] = dump(trace.v2c);
  j["c2v"] = dump(trace.c2v);
  return j.dump(2);
}

}  // namespace sudoku_codes
