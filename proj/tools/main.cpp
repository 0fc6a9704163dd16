// Command-line front end: kernel tables, density-evolution runs and
// thresholds, rate formulas, erasure-channel simulations, and Sudoku solving.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sudoku_codes/codegraph.hpp"
#include "sudoku_codes/density_evolution.hpp"
#include "sudoku_codes/simulator.hpp"
#include "sudoku_codes/subset_bp.hpp"

namespace sc = sudoku_codes;

namespace {

struct GlobalOpts {
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::string out;  // empty = stdout
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot open output file " + g.out);
  f << text;
}

std::string threshold_report(const sc::ThresholdResult& r, const std::string& format) {
  if (format == "json") {
    nlohmann::json j{{"theta", r.theta},
                     {"lower", r.lower},
                     {"upper", r.upper},
                     {"iterations_cap", r.iterations_cap},
                     {"convergence_tol", r.convergence_tol}};
    return j.dump(2);
  }
  std::ostringstream os;
  os << "theta,lower,upper,iterations_cap,convergence_tol\n";
  os.precision(5);
  os << std::fixed << r.theta << ',';
  os.precision(9);
  os.unsetf(std::ios::fixed);
  os << r.lower << ',' << r.upper << ',' << r.iterations_cap << ',' << r.convergence_tol << '\n';
  return os.str();
}

std::string candidates_report(const std::vector<sc::SymbolSet>& posts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < posts.size(); ++i)
    os << "cell " << i << ": " << posts[i].to_string() << '\n';
  return os.str();
}

sc::Codeword to_codeword(const std::vector<sc::SymbolSet>& posts) {
  sc::Codeword cw;
  for (const auto& s : posts) cw.symbols.push_back(s.values().front());
  return cw;
}

int run(int argc, char** argv) {
  CLI::App app{"SUDOKU-constraint erasure codes: decoding, density evolution, simulation"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--out", g.out, "Output path (default stdout)");

  int q = 4, dv = 3, dc = 4;
  auto add_params = [&](CLI::App* cmd, bool need_dv) {
    cmd->add_option("--q", q, "Alphabet size")->required();
    auto* o = cmd->add_option("--dv", dv, "Variable degree");
    if (need_dv) o->required();
    cmd->add_option("--dc", dc, "Constraint degree");
  };

  // tables
  auto* tables = app.add_subcommand("tables", "Dump a cardinality kernel table");
  std::string node = "variable";
  tables->add_option("--q", q, "Alphabet size")->required();
  tables->add_option("--node", node, "Node type")
      ->required()
      ->check(CLI::IsMember({"variable", "constraint"}));
  tables->add_option("--dv", dv, "Variable degree");
  tables->add_option("--dc", dc, "Constraint degree");
  tables->callback([&] {
    sc::ConditionalTable t = node == "variable" ? sc::build_variable_table(q, dv)
                                                : sc::build_constraint_table(q, dc);
    emit(g, g.format == "json" ? sc::table_to_json(t) : sc::table_to_csv(t));
  });

  // threshold
  auto* thr = app.add_subcommand("threshold", "Bisect the density-evolution threshold");
  double precision = 1e-6;
  add_params(thr, true);
  thr->add_option("--precision", precision, "Bisection bracket width");
  thr->callback([&] {
    auto r = sc::find_threshold(sc::CodeParams(q, dv, dc), precision);
    emit(g, threshold_report(r, g.format));
  });

  // de
  auto* de = app.add_subcommand("de", "Run density evolution at one erasure probability");
  double delta = 0.5;
  int max_iters = 5000;
  add_params(de, true);
  de->add_option("--delta", delta, "Erasure probability")->required();
  de->add_option("--max-iters", max_iters, "Iteration budget");
  de->callback([&] {
    sc::DeTrace t = sc::de_iterate(sc::CodeParams(q, dv, dc), delta, max_iters);
    std::cerr << "outcome: " << sc::to_string(t.outcome) << " after " << t.iterations
              << " iterations\n";
    emit(g, g.format == "json" ? sc::trace_to_json(t) : sc::trace_to_csv(t));
  });

  // rate
  auto* rate = app.add_subcommand("rate", "Conjectured design rates");
  int k = -1;
  add_params(rate, false);
  rate->add_option("--k", k, "Also report the rate after k decoder iterations");
  rate->callback([&] {
    sc::CodeParams p(q, dv, dc);
    if (g.format == "json") {
      nlohmann::json j{{"r_limit", sc::rate_limit(p)}};
      if (k >= 0) j["r_k"] = sc::rate_k(p, k);
      emit(g, j.dump(2));
      return;
    }
    std::ostringstream os;
    os.precision(9);
    if (k >= 0)
      os << "r_limit,r_k\n" << sc::rate_limit(p) << ',' << sc::rate_k(p, k) << '\n';
    else
      os << "r_limit\n" << sc::rate_limit(p) << '\n';
    emit(g, os.str());
  });

  // sim
  auto* sim = app.add_subcommand("sim", "Monte Carlo erasure-channel campaign");
  int n_vars = 0, trials = 100, dec_iters = 200;
  std::vector<double> deltas;
  std::string ensemble = "regular";
  add_params(sim, true);
  sim->add_option("--n", n_vars, "Number of variables")->required();
  sim->add_option("--deltas", deltas, "Erasure probabilities")->required()->expected(-1);
  sim->add_option("--trials", trials, "Trials per delta");
  sim->add_option("--max-iters", dec_iters, "Decoder iteration cap");
  sim->add_option("--ensemble", ensemble, "Graph/codeword ensemble")
      ->check(CLI::IsMember({"regular", "planted"}));
  sim->callback([&] {
    sc::SimConfig cfg{sc::CodeParams(q, dv, dc)};
    cfg.n_vars = n_vars;
    cfg.delta_grid = deltas;
    cfg.trials = trials;
    cfg.base_seed = g.seed;
    cfg.max_iters = dec_iters;
    cfg.ensemble = ensemble == "planted" ? sc::EnsembleKind::Planted : sc::EnsembleKind::Regular;
    sc::SimStats stats = sc::run_campaign(cfg);
    emit(g, g.format == "json" ? sc::stats_to_json(stats) : sc::stats_to_csv(stats));
  });

  // sudoku
  auto* sudoku = app.add_subcommand("sudoku", "Classic Sudoku via the subset decoder");
  sudoku->require_subcommand(1);
  int box_rows = 3, box_cols = 3;
  std::string grid_file;

  auto* solve = sudoku->add_subcommand("solve", "Solve a grid file ('.' = blank)");
  solve->add_option("grid-file", grid_file, "Path to the grid")->required();
  solve->add_option("--box-rows", box_rows, "Box height");
  solve->add_option("--box-cols", box_cols, "Box width");
  solve->callback([&] {
    sc::FactorGraph graph = sc::build_classic_sudoku(box_rows, box_cols);
    std::ifstream f(grid_file);
    if (!f) throw std::runtime_error("cannot read grid file " + grid_file);
    std::stringstream buf;
    buf << f.rdbuf();
    sc::ReceivedWord rx = sc::parse_grid(buf.str(), graph.params.q);
    // repeated givens are invisible to the elimination rule; reject up front
    for (int con = 0; con < graph.n_cons; ++con) {
      std::vector<bool> seen(static_cast<size_t>(graph.params.q) + 1, false);
      for (int var : graph.constraint_vars(con)) {
        int obs = rx.observations[static_cast<size_t>(var)];
        if (obs == sc::kErasure) continue;
        if (seen[static_cast<size_t>(obs)])
          throw std::runtime_error("grid is contradictory: repeated given in a constraint");
        seen[static_cast<size_t>(obs)] = true;
      }
    }
    sc::DecodeResult res = sc::decode(graph, rx, 1000);
    if (res.status == sc::DecodeStatus::Contradiction)
      throw std::runtime_error("grid is contradictory: candidates for a cell ran out");
    const bool solved = res.status == sc::DecodeStatus::Solved;
    const char* status = solved ? "solved" : "stalled";
    if (g.format == "json") {
      nlohmann::json j{{"status", status}, {"iterations", res.iterations}};
      if (solved) {
        j["grid"] = sc::format_grid(to_codeword(res.posteriors), graph.params.q);
      } else {
        nlohmann::json cand = nlohmann::json::array();
        for (const auto& s : res.posteriors) cand.push_back(s.values());
        j["candidates"] = std::move(cand);
      }
      emit(g, j.dump(2));
      return;
    }
    std::ostringstream os;
    os << "status: " << status << " (" << res.iterations << " iterations)\n";
    if (solved) {
      os << sc::format_grid(to_codeword(res.posteriors), graph.params.q);
    } else {
      sc::ReceivedWord partial;
      for (const auto& s : res.posteriors)
        partial.observations.push_back(s.cardinality() == 1 ? s.values().front() : sc::kErasure);
      os << sc::format_grid(partial, graph.params.q) << candidates_report(res.posteriors);
    }
    emit(g, os.str());
  });

  auto* sample = sudoku->add_subcommand("sample", "Sample a full valid grid");
  sample->add_option("--box-rows", box_rows, "Box height");
  sample->add_option("--box-cols", box_cols, "Box width");
  sample->callback([&] {
    sc::FactorGraph graph = sc::build_classic_sudoku(box_rows, box_cols);
    sc::Codeword cw = sc::sample_codeword(graph, g.seed);
    emit(g, sc::format_grid(cw, graph.params.q));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help/usage diagnostics
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
