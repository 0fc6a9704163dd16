#include <doctest.h>

#include "sudoku_codes/core_model.hpp"

using namespace sudoku_codes;

TEST_CASE("CodeParams validates its ranges") {
  CHECK_NOTHROW(CodeParams(4, 3, 4));
  CHECK_THROWS_AS(CodeParams(1, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(CodeParams(65, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(CodeParams(4, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(CodeParams(4, 3, 5), std::invalid_argument);  // d_c > q
  CHECK_THROWS_AS(CodeParams(4, 3, 1), std::invalid_argument);
}

TEST_CASE("SymbolSet basics") {
  auto s = SymbolSet::singleton(3, 5);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(s.cardinality() == 1);
  CHECK(s.values() == std::vector<int>{3});
  CHECK(SymbolSet::full(5).cardinality() == 5);
  CHECK(SymbolSet::empty(5).is_empty());
  CHECK(s.to_string() == "{3}");
  CHECK_THROWS_AS(SymbolSet::singleton(6, 5), std::invalid_argument);
  CHECK_THROWS_AS(SymbolSet(0b100000, 5), std::invalid_argument);  // bit above q
}

TEST_CASE("SymbolSet algebra") {
  SymbolSet a(0b0110, 4);  // {2,3}
  SymbolSet b(0b1100, 4);  // {3,4}
  CHECK(intersect(a, b) == SymbolSet(0b0100, 4));
  CHECK(unite(a, b) == SymbolSet(0b1110, 4));
  CHECK(complement(a) == SymbolSet(0b1001, 4));
  CHECK(intersect(a, SymbolSet::full(4)) == a);
  CHECK(intersect(a, SymbolSet::empty(4)).is_empty());
  CHECK(unite(a, complement(a)) == SymbolSet::full(4));
  CHECK_THROWS_AS(intersect(a, SymbolSet::full(5)), std::invalid_argument);
}

TEST_CASE("SymbolSet alphabet permutation") {
  SymbolSet a(0b0011, 4);  // {1,2}
  std::vector<int> pi = {3, 1, 4, 2};  // 1->3, 2->1, 3->4, 4->2
  auto p = a.apply_alphabet_permutation(pi);
  CHECK(p.values() == std::vector<int>{1, 3});
  CHECK(p.cardinality() == a.cardinality());
  // permuting the full set is a no-op
  CHECK(SymbolSet::full(4).apply_alphabet_permutation(pi) == SymbolSet::full(4));
}

TEST_CASE("is_permutation") {
  CHECK(is_permutation({2, 1, 3}, 3));
  CHECK_FALSE(is_permutation({1, 1, 3}, 3));
  CHECK_FALSE(is_permutation({1, 2}, 3));
  CHECK_FALSE(is_permutation({0, 1, 2}, 3));
}

TEST_CASE("CardinalityPmf") {
  auto pmf = CardinalityPmf::atomic(4, 4);
  CHECK(pmf(4) == 1.0);
  CHECK(pmf(1) == 0.0);
  CHECK(pmf.sum() == 1.0);
  CHECK(pmf.mass_above_one() == 1.0);
  CHECK(pmf.is_normalized());
  CHECK_THROWS_AS(pmf(0), std::out_of_range);
  CHECK_THROWS_AS(pmf(5), std::out_of_range);

  CardinalityPmf p2(3);
  p2.at(1) = 2.0;
  p2.at(2) = 2.0;
  p2.normalize();
  CHECK(p2(1) == doctest::Approx(0.5));
  CHECK(p2.mass_above_one() == doctest::Approx(0.5));

  CardinalityPmf zero(3);
  CHECK_THROWS(zero.normalize());
}

TEST_CASE("Rational rendering") {
  Rational r(21, 27);
  CHECK(to_fraction_string(r) == "7/9");  // stored reduced
  CHECK(to_fraction_string(Rational(0)) == "0");
  CHECK(to_fraction_string(Rational(3, 3)) == "1");
  CHECK(to_double(Rational(1, 2)) == 0.5);
}
