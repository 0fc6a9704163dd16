#include <doctest.h>

#include <random>

#include "sudoku_codes/soft_bp.hpp"
#include "sudoku_codes/subset_bp.hpp"

using namespace sudoku_codes;

namespace {

std::vector<std::vector<double>> identity_matrix(std::size_t n) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

}  // namespace

TEST_CASE("permanent small cases") {
  CHECK(permanent({{1, 2}, {3, 4}}) == doctest::Approx(10));
  CHECK(permanent(identity_matrix(3)) == doctest::Approx(1));
  CHECK(permanent(identity_matrix(6)) == doctest::Approx(1));  // Ryser path
  CHECK(permanent({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}) == doctest::Approx(6));
  CHECK(permanent({{5}}) == doctest::Approx(5));
  CHECK_THROWS_AS(permanent({{1, 2, 3}, {4, 5, 6}}), std::invalid_argument);
}

TEST_CASE("permanent: zero row annihilates; row and column order irrelevant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 5 + static_cast<std::size_t>(trial % 3);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m)
      for (double& x : row) x = u(rng);
    double p = permanent(m);

    auto zrow = m;
    for (double& x : zrow[2]) x = 0.0;
    CHECK(permanent(zrow) == doctest::Approx(0.0));

    auto swapped = m;
    std::swap(swapped[0], swapped[n - 1]);
    CHECK(permanent(swapped) == doctest::Approx(p));

    auto colswap = m;
    for (auto& row : colswap) std::swap(row[1], row[3]);
    CHECK(permanent(colswap) == doctest::Approx(p));
  }
}

TEST_CASE("Ryser agrees with direct permutation expansion") {
  // exercise both code paths on 4x4 (direct) vs the same matrix padded to 5x5
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> m(5, std::vector<double>(5, 0.0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m[i][j] = u(rng);
    m[4][4] = 1.0;  // block structure: perm = perm of the 4x4 block
    std::vector<std::vector<double>> block(4, std::vector<double>(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) block[i][j] = m[i][j];
    CHECK(permanent(m) == doctest::Approx(permanent(block)));
  }
}

TEST_CASE("soft_variable_update") {
  auto u4 = DistributionMessage::uniform(4);
  auto r = soft_variable_update(u4, {u4, u4});
  for (int v = 1; v <= 4; ++v) CHECK(r(v) == doctest::Approx(0.25));

  auto a3 = DistributionMessage::atomic(4, 3);
  auto out = soft_variable_update(a3, {u4});
  CHECK(out(3) == doctest::Approx(1.0));

  auto s12 = DistributionMessage::uniform_over(SymbolSet(0b0011, 4));
  auto s13 = DistributionMessage::uniform_over(SymbolSet(0b0101, 4));
  auto prod = soft_variable_update(DistributionMessage::uniform(4), {s12, s13});
  CHECK(prod(1) == doctest::Approx(1.0));

  auto a1 = DistributionMessage::atomic(4, 1);
  auto a2 = DistributionMessage::atomic(4, 2);
  CHECK_THROWS_AS(soft_variable_update(a1, {a2}), ContradictionError);
}

TEST_CASE("soft_constraint_update examples") {
  const int q = 3;
  auto u = DistributionMessage::uniform(q);
  MessageMatrix all_uniform{{u, u, u}};
  auto out = soft_constraint_update(all_uniform, 0);
  for (int v = 1; v <= q; ++v) CHECK(out(v) == doctest::Approx(1.0 / 3));

  MessageMatrix atoms{{u, DistributionMessage::atomic(q, 2), DistributionMessage::atomic(q, 3)}};
  auto forced = soft_constraint_update(atoms, 0);
  CHECK(forced(1) == doctest::Approx(1.0));

  MessageMatrix mix{{u, DistributionMessage::uniform_over(SymbolSet(0b011, q)),
                     DistributionMessage::uniform_over(SymbolSet(0b111, q))}};
  auto prop = soft_constraint_update(mix, 0);  // proportional to (1,1,2)
  CHECK(prop(1) == doctest::Approx(0.25));
  CHECK(prop(2) == doctest::Approx(0.25));
  CHECK(prop(3) == doctest::Approx(0.5));

  MessageMatrix clash{{DistributionMessage::atomic(q, 1), DistributionMessage::atomic(q, 1),
                       DistributionMessage::atomic(q, 2)}};
  CHECK_THROWS_AS(soft_constraint_update(clash, 2), InfeasibleConstraintError);
}

TEST_CASE("support_of") {
  CHECK(support_of(DistributionMessage::uniform(4)) == SymbolSet::full(4));
  CHECK(support_of(DistributionMessage::atomic(4, 2)) == SymbolSet::singleton(2, 4));
  DistributionMessage m;
  m.probs = {0.25, 0.25, 0.5};
  CHECK(support_of(m) == SymbolSet::full(3));
  CHECK(support_of(m, 0.3) == SymbolSet::singleton(3, 3));
  CHECK_THROWS_AS(support_of(m, -1.0), std::invalid_argument);
}

// Support equivalence with the subset rules holds on consistent inputs:
// at a variable node every message contains the transmitted value, and at a
// constraint node input m contains its own (distinct) transmitted value.
// That is exactly the situation erasure-channel decoding produces.

namespace {

std::vector<SymbolSet> supersets_of(int forced, int q) {
  std::vector<SymbolSet> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << q); ++bits)
    if (bits & (std::uint64_t{1} << (forced - 1))) out.emplace_back(bits, q);
  return out;
}

}  // namespace

TEST_CASE("support equivalence with subset rules, exhaustive q<=4") {
  for (int q = 2; q <= 4; ++q) {
    // variable node, d_v = 3, transmitted value 1
    for (const auto& ch : supersets_of(1, q))
      for (const auto& a : supersets_of(1, q))
        for (const auto& b : supersets_of(1, q)) {
          SymbolSet sub = variable_update(ch, {a, b});
          auto soft = soft_variable_update(
              DistributionMessage::uniform_over(ch),
              {DistributionMessage::uniform_over(a), DistributionMessage::uniform_over(b)});
          CHECK(support_of(soft) == sub);
        }
    // constraint node, d_c = 3; output edge holds value 1, inputs hold 2, 3
    if (q < 3) continue;
    for (const auto& a : supersets_of(2, q))
      for (const auto& b : supersets_of(3, q)) {
        SymbolSet sub = constraint_update({a, b}, q);
        MessageMatrix mm{{DistributionMessage::uniform(q), DistributionMessage::uniform_over(a),
                          DistributionMessage::uniform_over(b)}};
        CHECK(support_of(soft_constraint_update(mm, 0)) == sub);
      }
  }
}

TEST_CASE("support equivalence sampled at q=5") {
  const int q = 5;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint64_t> bits(0, (1u << q) - 1);
  auto consistent = [&](int forced) {
    return SymbolSet(bits(rng) | (std::uint64_t{1} << (forced - 1)), q);
  };
  for (int trial = 0; trial < 3000; ++trial) {
    SymbolSet a = consistent(2), b = consistent(3), c = consistent(4), d = consistent(5);
    SymbolSet sub = constraint_update({a, b, c, d}, q);
    MessageMatrix mm{{DistributionMessage::uniform(q), DistributionMessage::uniform_over(a),
                      DistributionMessage::uniform_over(b), DistributionMessage::uniform_over(c),
                      DistributionMessage::uniform_over(d)}};
    CHECK(support_of(soft_constraint_update(mm, 0)) == sub);

    SymbolSet ch = consistent(1), va = consistent(1), vb = consistent(1);
    SymbolSet vsub = variable_update(ch, {va, vb});
    auto soft = soft_variable_update(
        DistributionMessage::uniform_over(ch),
        {DistributionMessage::uniform_over(va), DistributionMessage::uniform_over(vb)});
    CHECK(support_of(soft) == vsub);
  }
}

TEST_CASE("subset and soft rules diverge only on inconsistent inputs") {
  // two copies of the same singleton admit no injective assignment, so the
  // exact Bayesian rule refuses while the bottleneck rule still returns a
  // non-empty (and harmless, since the case cannot arise from a codeword)
  // candidate set
  const int q = 3;
  auto s2 = DistributionMessage::atomic(q, 2);
  MessageMatrix mm{{DistributionMessage::uniform(q), s2, s2}};
  CHECK_THROWS_AS(soft_constraint_update(mm, 0), InfeasibleConstraintError);
  CHECK(constraint_update({support_of(s2), support_of(s2)}, q) ==
        unite(SymbolSet::singleton(1, q), SymbolSet::singleton(3, q)));
}

TEST_CASE("constraint outputs assemble into a doubly stochastic matrix") {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int q : {3, 4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      MessageMatrix p;
      for (int i = 0; i < q; ++i) {
        DistributionMessage row;
        double sum = 0;
        for (int j = 0; j < q; ++j) {
          row.probs.push_back(u(rng));
          sum += row.probs.back();
        }
        for (double& x : row.probs) x /= sum;
        p.rows.push_back(std::move(row));
      }
      std::vector<double> colsum(static_cast<std::size_t>(q), 0.0);
      for (int i = 0; i < q; ++i) {
        auto out = soft_constraint_update(p, i);
        double rowsum = 0;
        for (int j = 1; j <= q; ++j) {
          rowsum += out(j);
          colsum[static_cast<std::size_t>(j - 1)] += out(j);
        }
        CHECK(rowsum == doctest::Approx(1.0).epsilon(1e-10));
      }
      for (double c : colsum) CHECK(c == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("soft node updates obey Lemma-1 style symmetries") {
  const int q = 4;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<int> pi{3, 1, 4, 2};
  auto random_msg = [&] {
    DistributionMessage m;
    double s = 0;
    for (int j = 0; j < q; ++j) {
      m.probs.push_back(u(rng));
      s += m.probs.back();
    }
    for (double& x : m.probs) x /= s;
    return m;
  };
  auto permute = [&](const DistributionMessage& m) {
    DistributionMessage out;
    out.probs.assign(static_cast<std::size_t>(q), 0.0);
    for (int v = 1; v <= q; ++v)
      out.probs[static_cast<std::size_t>(pi[static_cast<std::size_t>(v - 1)] - 1)] = m(v);
    return out;
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_msg(), b = random_msg(), c = random_msg(), ch = random_msg();

    auto v1 = soft_variable_update(ch, {a, b});
    auto v2 = soft_variable_update(ch, {b, a});
    for (int j = 1; j <= q; ++j) CHECK(v1(j) == doctest::Approx(v2(j)));
    auto vp = soft_variable_update(permute(ch), {permute(a), permute(b)});
    auto v1p = permute(v1);
    for (int j = 1; j <= q; ++j) CHECK(vp(j) == doctest::Approx(v1p(j)));

    MessageMatrix m1{{ch, a, b, c}};
    MessageMatrix m2{{ch, c, b, a}};  // other rows shuffled, out row fixed
    auto o1 = soft_constraint_update(m1, 0);
    auto o2 = soft_constraint_update(m2, 0);
    for (int j = 1; j <= q; ++j) CHECK(o1(j) == doctest::Approx(o2(j)));
    MessageMatrix mp{{permute(ch), permute(a), permute(b), permute(c)}};
    auto op = soft_constraint_update(mp, 0);
    auto o1p = permute(o1);
    for (int j = 1; j <= q; ++j) CHECK(op(j) == doctest::Approx(o1p(j)));
  }
}
