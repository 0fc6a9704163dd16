#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sudoku_codes {

/// Exact arithmetic for the density-evolution kernel tables. Stored in
/// lowest terms with positive denominator (boost keeps the invariant).
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
std::string to_fraction_string(const Rational& r);  // "num/den", "0", "1"

/// Alphabet size is capped so a SymbolSet fits in one machine word.
inline constexpr int kMaxAlphabet = 64;

/// (q, d_v, d_c) of a regular SUDOKU-constraint code.
struct CodeParams {
  int q;
  int dv;
  int dc;

  CodeParams(int q_, int dv_, int dc_) : q(q_), dv(dv_), dc(dc_) {
    if (q < 2 || q > kMaxAlphabet) throw std::invalid_argument("CodeParams: q must be in [2, 64]");
    if (dv < 2) throw std::invalid_argument("CodeParams: d_v must be >= 2");
    if (dc < 2) throw std::invalid_argument("CodeParams: d_c must be >= 2");
    if (dc > q) throw std::invalid_argument("CodeParams: d_c must be <= q");
  }
};

/// A subset of the alphabet {1..q}; the erasure-channel BP message.
/// Bit i-1 of the mask stores membership of value i.
class SymbolSet {
 public:
  SymbolSet() : bits_(0), q_(0) {}
  SymbolSet(std::uint64_t bits, int q) : bits_(bits), q_(q) {
    check_q(q);
    if (q < 64 && (bits >> q) != 0)
      throw std::invalid_argument("SymbolSet: bits outside {1..q}");
  }

  static SymbolSet empty(int q) { return SymbolSet(0, q); }
  static SymbolSet full(int q) {
    check_q(q);
    return SymbolSet(q == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1, q);
  }
  static SymbolSet singleton(int value, int q) {
    check_q(q);
    if (value < 1 || value > q) throw std::invalid_argument("SymbolSet: value outside 1..q");
    return SymbolSet(std::uint64_t{1} << (value - 1), q);
  }

  int q() const { return q_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(int value) const { return value >= 1 && value <= q_ && ((bits_ >> (value - 1)) & 1); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return *this == full(q_); }
  int cardinality() const { return __builtin_popcountll(bits_); }

  /// Values in ascending order.
  std::vector<int> values() const;

  /// Result contains v iff pi maps some member onto v. pi[i-1] = pi(i).
  SymbolSet apply_alphabet_permutation(const std::vector<int>& pi) const;

  std::string to_string() const;  // "{1,3}"

  friend SymbolSet intersect(const SymbolSet& a, const SymbolSet& b) {
    if (a.q_ != b.q_) throw std::invalid_argument("intersect: alphabet size mismatch");
    return SymbolSet(a.bits_ & b.bits_, a.q_);
  }
  friend SymbolSet unite(const SymbolSet& a, const SymbolSet& b) {
    if (a.q_ != b.q_) throw std::invalid_argument("unite: alphabet size mismatch");
    return SymbolSet(a.bits_ | b.bits_, a.q_);
  }
  friend SymbolSet complement(const SymbolSet& a) {
    return SymbolSet(full(a.q_).bits_ & ~a.bits_, a.q_);
  }
  friend bool operator==(const SymbolSet& a, const SymbolSet& b) = default;

 private:
  static void check_q(int q) {
    if (q < 1 || q > kMaxAlphabet) throw std::invalid_argument("SymbolSet: q must be in [1, 64]");
  }
  std::uint64_t bits_;
  int q_;
};

int cardinality(const SymbolSet& a);

/// Probability mass over message cardinalities 1..q; the DE state.
/// P(0) is identically zero on an erasure channel and is not stored.
class CardinalityPmf {
 public:
  explicit CardinalityPmf(int q) : p_(static_cast<std::size_t>(q), 0.0) {
    if (q < 1 || q > kMaxAlphabet) throw std::invalid_argument("CardinalityPmf: bad q");
  }
  static CardinalityPmf atomic(int q, int card) {
    CardinalityPmf pmf(q);
    pmf.at(card) = 1.0;
    return pmf;
  }

  int q() const { return static_cast<int>(p_.size()); }
  double operator()(int card) const { return p_.at(index(card)); }
  double& at(int card) { return p_.at(index(card)); }

  double sum() const;
  /// P(cardinality > 1): the DE decoding-error proxy.
  double mass_above_one() const;
  void normalize();  // throws if total mass is not positive
  bool is_normalized(double tol = 1e-12) const;

  const std::vector<double>& raw() const { return p_; }

 private:
  std::size_t index(int card) const {
    if (card < 1 || card > q()) throw std::out_of_range("CardinalityPmf: cardinality outside 1..q");
    return static_cast<std::size_t>(card - 1);
  }
  std::vector<double> p_;
};

bool is_permutation(const std::vector<int>& pi, int q);

}  // namespace sudoku_codes
