#include "sudoku_codes/soft_bp.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace sudoku_codes {

DistributionMessage DistributionMessage::uniform(int q) {
  DistributionMessage m;
  m.probs.assign(static_cast<std::size_t>(q), 1.0 / q);
  return m;
}

DistributionMessage DistributionMessage::atomic(int q, int value) {
  DistributionMessage m;
  m.probs.assign(static_cast<std::size_t>(q), 0.0);
  m.probs.at(static_cast<std::size_t>(value - 1)) = 1.0;
  return m;
}

DistributionMessage DistributionMessage::uniform_over(const SymbolSet& s) {
  if (s.is_empty()) throw std::invalid_argument("uniform_over: empty set");
  DistributionMessage m;
  m.probs.assign(static_cast<std::size_t>(s.q()), 0.0);
  const double w = 1.0 / s.cardinality();
  for (int v : s.values()) m.probs[static_cast<std::size_t>(v - 1)] = w;
  return m;
}

double permanent(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("permanent: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("permanent: matrix not square");

  if (n <= 4) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    double sum = 0.0;
    do {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) prod *= m[i][static_cast<std::size_t>(sigma[i])];
      sum += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return sum;
  }

  // Ryser: perm = (-1)^n sum_{S nonempty} (-1)^|S| prod_i (sum_{j in S} m[i][j])
  double total = 0.0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double rs = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (s & (std::uint64_t{1} << j)) rs += m[i][j];
      prod *= rs;
    }
    int k = __builtin_popcountll(s);
    total += ((n - static_cast<std::size_t>(k)) % 2 == 0) ? prod : -prod;
  }
  return total;
}

DistributionMessage soft_variable_update(const DistributionMessage& channel_posterior,
                                         const std::vector<DistributionMessage>& incoming) {
  DistributionMessage out = channel_posterior;
  for (const auto& msg : incoming) {
    if (msg.q() != out.q()) throw std::invalid_argument("soft_variable_update: length mismatch");
    for (std::size_t j = 0; j < out.probs.size(); ++j) out.probs[j] *= msg.probs[j];
  }
  double total = std::accumulate(out.probs.begin(), out.probs.end(), 0.0);
  if (total < 1e-300) throw ContradictionError("soft_variable_update: all beliefs cancel");
  for (double& p : out.probs) p /= total;
  return out;
}

namespace {

// Sum over injective assignments of rows to columns in `cols` of the product
// of picked entries. The rectangular permanent; square minors are the d_c = q
// case.
double injective_sum(const std::vector<const DistributionMessage*>& rows, std::size_t i,
                     std::uint64_t cols) {
  if (i == rows.size()) return 1.0;
  double sum = 0.0;
  const auto& p = rows[i]->probs;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if ((cols & (std::uint64_t{1} << j)) && p[j] != 0.0)
      sum += p[j] * injective_sum(rows, i + 1, cols & ~(std::uint64_t{1} << j));
  }
  return sum;
}

}  // namespace

DistributionMessage soft_constraint_update(const MessageMatrix& p, int out_edge) {
  const int d = p.dc();
  const int q = p.q();
  if (out_edge < 0 || out_edge >= d) throw std::out_of_range("soft_constraint_update: bad edge");
  if (d > q) throw std::invalid_argument("soft_constraint_update: more rows than values");
  for (const auto& row : p.rows)
    if (row.q() != q) throw std::invalid_argument("soft_constraint_update: ragged matrix");

  std::vector<const DistributionMessage*> others;
  for (int i = 0; i < d; ++i)
    if (i != out_edge) others.push_back(&p.rows[static_cast<std::size_t>(i)]);

  const std::uint64_t all_cols = (q == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1;
  DistributionMessage out;
  out.probs.assign(static_cast<std::size_t>(q), 0.0);
  for (int j = 0; j < q; ++j) {
    double pj = p.rows[static_cast<std::size_t>(out_edge)].probs[static_cast<std::size_t>(j)];
    if (pj == 0.0) continue;
    out.probs[static_cast<std::size_t>(j)] =
        pj * injective_sum(others, 0, all_cols & ~(std::uint64_t{1} << j));
  }
  double total = std::accumulate(out.probs.begin(), out.probs.end(), 0.0);
  if (total < 1e-300)
    throw InfeasibleConstraintError("soft_constraint_update: no consistent assignment");
  for (double& x : out.probs) x /= total;
  return out;
}

SymbolSet support_of(const DistributionMessage& m, double tol) {
  if (tol < 0) throw std::invalid_argument("support_of: negative tolerance");
  SymbolSet s = SymbolSet::empty(m.q());
  for (int v = 1; v <= m.q(); ++v)
    if (m(v) > tol) s = unite(s, SymbolSet::singleton(v, m.q()));
  return s;
}

}  // namespace sudoku_codes
