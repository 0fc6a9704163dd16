#include <doctest.h>

#include <set>

#include "sudoku_codes/codegraph.hpp"

using namespace sudoku_codes;

TEST_CASE("mix_seed is deterministic and spreads indices") {
  CHECK(mix_seed(7, 1, 2) == mix_seed(7, 1, 2));
  CHECK(mix_seed(7, 1, 2) != mix_seed(7, 2, 1));
  CHECK(mix_seed(7, 1) != mix_seed(8, 1));
}

TEST_CASE("build_regular produces a valid regular graph") {
  CodeParams p(4, 3, 4);
  auto g = build_regular(p, 40, 123);
  CHECK(g.n_vars == 40);
  CHECK(g.n_cons == 30);  // n * dv / dc
  CHECK(g.edges.size() == 120);
  CHECK_NOTHROW(g.validate());
  for (int c = 0; c < g.n_cons; ++c) {
    auto vars = g.constraint_vars(c);
    CHECK(std::set<int>(vars.begin(), vars.end()).size() == vars.size());
  }
  // determinism
  auto g2 = build_regular(p, 40, 123);
  for (size_t i = 0; i < g.edges.size(); ++i) CHECK(g.edges[i].var == g2.edges[i].var);
  auto g3 = build_regular(p, 40, 124);
  bool same = true;
  for (size_t i = 0; i < g.edges.size(); ++i) same &= g.edges[i].var == g3.edges[i].var;
  CHECK_FALSE(same);
  // socket counts must divide evenly
  CHECK_THROWS_AS(build_regular(p, 41, 1), std::invalid_argument);
}

TEST_CASE("classic sudoku graph has rows, columns and boxes") {
  auto g = build_classic_sudoku(3, 3);
  CHECK(g.params.q == 9);
  CHECK(g.n_vars == 81);
  CHECK(g.n_cons == 27);
  CHECK_NOTHROW(g.validate());
  CHECK(g.constraint_vars(0) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});  // first row
  CHECK(g.constraint_vars(9)[0] == 0);  // first column starts at cell 0
  CHECK(g.constraint_vars(9)[1] == 9);
  // first box: cells (r,c) with r,c in 0..2
  CHECK(g.constraint_vars(18) == std::vector<int>{0, 1, 2, 9, 10, 11, 18, 19, 20});

  auto g6 = build_classic_sudoku(2, 3);
  CHECK(g6.params.q == 6);
  CHECK(g6.n_vars == 36);
  CHECK_NOTHROW(g6.validate());
}

TEST_CASE("planted construction always yields a valid codeword") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    auto [g, cw] = build_planted(CodeParams(4, 3, 4), 48, seed);
    CHECK_NOTHROW(g.validate());
    CHECK(satisfies_all_constraints(g, cw));
  }
  CHECK_THROWS_AS(build_planted(CodeParams(4, 3, 3), 48, 0), std::invalid_argument);  // d_c != q
  CHECK_THROWS_AS(build_planted(CodeParams(4, 3, 4), 50, 0), std::invalid_argument);  // 4 does not divide 50
}

TEST_CASE("sample_codeword on the classic sudoku graph") {
  auto g = build_classic_sudoku(2, 2);
  auto cw = sample_codeword(g, 5);
  CHECK(satisfies_all_constraints(g, cw));
  auto cw2 = sample_codeword(g, 5);
  CHECK(cw.symbols == cw2.symbols);  // deterministic
  auto cw3 = sample_codeword(g, 6);
  CHECK(satisfies_all_constraints(g, cw3));
}

TEST_CASE("complete_codeword respects givens") {
  auto g = build_classic_sudoku(2, 2);
  auto full = sample_codeword(g, 11);
  ReceivedWord rx{full.symbols};
  rx.observations[3] = kErasure;
  rx.observations[7] = kErasure;
  auto done = complete_codeword(g, rx, 0);
  CHECK(satisfies_all_constraints(g, done));
  for (size_t i = 0; i < rx.observations.size(); ++i)
    if (rx.observations[i] != kErasure) CHECK(done.symbols[i] == rx.observations[i]);
}

TEST_CASE("infeasible graphs are reported as such") {
  // Two values, two constraints sharing both variables with swapped sockets
  // still admit codewords; force infeasibility with contradictory givens.
  auto g = build_classic_sudoku(2, 2);
  auto full = sample_codeword(g, 2);
  ReceivedWord rx{full.symbols};
  rx.observations[1] = rx.observations[0];  // duplicate within the first row
  try {
    complete_codeword(g, rx, 0);
    FAIL("expected CodewordSearchFailure");
  } catch (const CodewordSearchFailure& e) {
    CHECK(e.kind == CodewordSearchError::Infeasible);
  }
}

TEST_CASE("erasure channel statistics and determinism") {
  Codeword cw;
  cw.symbols.assign(10000, 1);
  auto rx = erase(cw, 0.3, 77);
  auto rx2 = erase(cw, 0.3, 77);
  CHECK(rx.observations == rx2.observations);
  int erased = 0;
  for (int o : rx.observations) {
    CHECK((o == kErasure || o == 1));
    erased += o == kErasure;
  }
  CHECK(erased > 2700);
  CHECK(erased < 3300);
  CHECK(erase(cw, 0.0, 1).observations == cw.symbols);
  for (int o : erase(cw, 1.0, 1).observations) CHECK(o == kErasure);
}

TEST_CASE("graph JSON round trip") {
  auto g = build_regular(CodeParams(5, 3, 5), 25, 9);
  auto g2 = graph_from_json(graph_to_json(g));
  CHECK(g2.n_vars == g.n_vars);
  CHECK(g2.n_cons == g.n_cons);
  CHECK(g2.params.q == g.params.q);
  CHECK(g2.seed == g.seed);
  REQUIRE(g2.edges.size() == g.edges.size());
  for (size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(g2.edges[i].var == g.edges[i].var);
    CHECK(g2.edges[i].con == g.edges[i].con);
  }
  CHECK_NOTHROW(g2.validate());
}

TEST_CASE("grid formatting round trip") {
  auto g = build_classic_sudoku(3, 3);
  auto cw = sample_codeword(g, 3);
  auto text = format_grid(cw, 9);
  auto parsed = parse_grid(text, 9);
  CHECK(parsed.observations == cw.symbols);

  ReceivedWord rx{cw.symbols};
  rx.observations[0] = kErasure;
  auto text2 = format_grid(rx, 9);
  CHECK(text2[0] == '.');
  CHECK(parse_grid(text2, 9).observations == rx.observations);

  CHECK_THROWS_AS(parse_grid("123", 9), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid(std::string(81, 'x'), 9), std::invalid_argument);
}
