#include "sudoku_codes/core_model.hpp"

#include <cmath>
#include <sstream>

namespace sudoku_codes {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_fraction_string(const Rational& r) {
  std::ostringstream os;
  if (denominator(r) == 1) {
    os << numerator(r);
  } else {
    os << numerator(r) << "/" << denominator(r);
  }
  return os.str();
}

std::vector<int> SymbolSet::values() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1)
    out.push_back(__builtin_ctzll(b) + 1);
  return out;
}

SymbolSet SymbolSet::apply_alphabet_permutation(const std::vector<int>& pi) const {
  if (!is_permutation(pi, q_))
    throw std::invalid_argument("apply_alphabet_permutation: pi is not a bijection on {1..q}");
  std::uint64_t out = 0;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    int v = __builtin_ctzll(b) + 1;
    out |= std::uint64_t{1} << (pi[static_cast<std::size_t>(v - 1)] - 1);
  }
  return SymbolSet(out, q_);
}

std::string SymbolSet::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int v : values()) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

int cardinality(const SymbolSet& a) { return a.cardinality(); }

double CardinalityPmf::sum() const {
  double s = 0.0;
  for (double x : p_) s += x;
  return s;
}

double CardinalityPmf::mass_above_one() const {
  double s = 0.0;
  for (std::size_t k = 1; k < p_.size(); ++k) s += p_[k];
  return s;
}

void CardinalityPmf::normalize() {
  double s = sum();
  if (!(s > 0.0)) throw std::runtime_error("CardinalityPmf: cannot normalize zero mass");
  for (double& x : p_) x /= s;
}

bool CardinalityPmf::is_normalized(double tol) const {
  if (std::abs(sum() - 1.0) > tol) return false;
  for (double x : p_)
    if (x < -tol || x > 1.0 + tol) return false;
  return true;
}

bool is_permutation(const std::vector<int>& pi, int q) {
  if (static_cast<int>(pi.size()) != q) return false;
  std::uint64_t seen = 0;
  for (int v : pi) {
    if (v < 1 || v > q) return false;
    std::uint64_t bit = std::uint64_t{1} << (v - 1);
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

}  // namespace sudoku_codes
