#include "sudoku_codes/simulator.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sudoku_codes/subset_bp.hpp"

namespace sudoku_codes {

std::pair<double, double> wilson_interval(int k, int n) {
  if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double z2 = z * z;
  const double p = static_cast<double>(k) / n;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // pin the exact endpoints so k = 0 / k = n do not leak rounding noise
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

struct TrialOutcome {
  bool word_fail = false;
  double unresolved_fraction = 0.0;
  int iterations = 0;
  DecodeStatus status = DecodeStatus::MaxIterations;
};

TrialOutcome run_trial(const FactorGraph& graph, const Codeword* planted, double delta,
                       std::uint64_t trial_seed, const SimConfig& cfg) {
  Codeword cw = planted ? *planted : sample_codeword(graph, trial_seed, cfg.sample_opts);
  ReceivedWord rx = erase(cw, delta, mix_seed(trial_seed, 0x9e3779b9));
  DecodeResult res = decode(graph, rx, cfg.max_iters);

  TrialOutcome out;
  out.iterations = res.iterations;
  out.status = res.status;
  int unresolved = 0;
  for (const auto& post : res.posteriors)
    if (post.cardinality() != 1) ++unresolved;
  out.word_fail = unresolved > 0 || res.status == DecodeStatus::Contradiction;
  out.unresolved_fraction = static_cast<double>(unresolved) / graph.n_vars;
  return out;
}

}  // namespace

SimStats run_campaign(const SimConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_campaign: trials must be >= 1");
  for (double d : config.delta_grid)
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("run_campaign: delta outside [0,1]");

  Codeword planted;
  const bool use_planted = config.ensemble == EnsembleKind::Planted;
  FactorGraph graph = [&]() -> FactorGraph {
    if (use_planted) {
      auto [g, cw] = build_planted(config.params, config.n_vars, config.base_seed);
      planted = std::move(cw);
      return g;
    }
    return build_regular(config.params, config.n_vars, config.base_seed);
  }();

  SimStats stats{config, {}};
  for (std::size_t di = 0; di < config.delta_grid.size(); ++di) {
    const double delta = config.delta_grid[di];
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));

    auto worker = [&](int t) {
      std::uint64_t seed = mix_seed(config.base_seed, di + 1, static_cast<std::uint64_t>(t));
      outcomes[static_cast<std::size_t>(t)] =
          run_trial(graph, use_planted ? &planted : nullptr, delta, seed, config);
    };
    unsigned nthreads = std::min<unsigned>(std::thread::hardware_concurrency(),
                                           static_cast<unsigned>(config.trials));
    if (nthreads <= 1) {
      for (int t = 0; t < config.trials; ++t) worker(t);
    } else {
      std::vector<std::future<void>> futs;
      for (unsigned w = 0; w < nthreads; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
          for (int t = static_cast<int>(w); t < config.trials; t += static_cast<int>(nthreads))
            worker(t);
        }));
      for (auto& f : futs) f.get();
    }

    DeltaStats ds;
    ds.delta = delta;
    ds.trials = config.trials;
    int fails = 0;
    double unresolved_sum = 0.0, iter_sum = 0.0;
    for (const auto& o : outcomes) {
      fails += o.word_fail ? 1 : 0;
      unresolved_sum += o.unresolved_fraction;
      iter_sum += o.iterations;
      switch (o.status) {
        case DecodeStatus::Solved: ++ds.solved; break;
        case DecodeStatus::Stalled: ++ds.stalled; break;
        case DecodeStatus::Contradiction:
        case DecodeStatus::MaxIterations: ++ds.budget; break;
      }
    }
    ds.word_fail = static_cast<double>(fails) / config.trials;
    ds.sym_unresolved = unresolved_sum / config.trials;
    ds.mean_iters = iter_sum / config.trials;
    std::tie(ds.wilson_lo, ds.wilson_hi) = wilson_interval(fails, config.trials);
    stats.per_delta.push_back(ds);
  }
  return stats;
}

std::string stats_to_csv(const SimStats& stats) {
  std::ostringstream os;
  os.precision(9);  // well above the 6-significant-digit contract
  os << "delta,trials,word_fail,sym_unresolved,mean_iters,solved,stalled,budget,"
        "wilson_lo,wilson_hi\n";
  for (const auto& d : stats.per_delta) {
    os << d.delta << ',' << d.trials << ',' << d.word_fail << ',' << d.sym_unresolved << ','
       << d.mean_iters << ',' << d.solved << ',' << d.stalled << ',' << d.budget << ','
       << d.wilson_lo << ',' << d.wilson_hi << '\n';
  }
  return os.str();
}

void write_csv(const SimStats& stats, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << stats_to_csv(stats);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::string stats_to_json(const SimStats& stats) {
  nlohmann::json j;
  j["params"] = {{"q", stats.config.params.q},
                 {"dv", stats.config.params.dv},
                 {"dc", stats.config.params.dc}};
  j["n_vars"] = stats.config.n_vars;
  j["trials"] = stats.config.trials;
  j["base_seed"] = stats.config.base_seed;
  j["max_iters"] = stats.config.max_iters;
  j["ensemble"] = stats.config.ensemble == EnsembleKind::Planted ? "planted" : "regular";
  j["per_delta"] = nlohmann::json::array();
  for (const auto& d : stats.per_delta) {
    j["per_delta"].push_back({{"delta", d.delta},
                              {"trials", d.trials},
                              {"word_fail", d.word_fail},
                              {"sym_unresolved", d.sym_unresolved},
                              {"mean_iters", d.mean_iters},
                              {"solved", d.solved},
                              {"stalled", d.stalled},
                              {"budget", d.budget},
                              {"wilson_lo", d.wilson_lo},
                              {"wilson_hi", d.wilson_hi}});
  }
  return j.dump(2);
}

}  // namespace sudoku_codes
