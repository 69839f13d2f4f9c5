#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthsig/expected_signature.hpp"
#include "orthsig/hoffman.hpp"
#include "orthsig/tensor_poly.hpp"

using namespace orthsig;

namespace {
Word W(const std::string& s) { return Word::from_string(s); }
TensorPoly P(const std::string& s) { return TensorPoly(W(s)); }
const TimeHorizon T1{};
}  // namespace

TEST_CASE("fawcett pairing") {
  CHECK(fawcett_pair(P("11"), T1) == rat(1, 2));
  CHECK(fawcett_pair(P("12"), T1) == 0);
  CHECK(fawcett_pair(P("1122"), T1) == rat(1, 8));
  CHECK(fawcett_pair(P("121"), T1) == 0);        // odd length
  CHECK(fawcett_pair(P("1221"), T1) == 0);       // not consecutively doubled
  CHECK(fawcett_pair(TensorPoly::one(), T1) == 1);
  CHECK_THROWS(fawcett_pair(P("011"), T1));
  // Scaling: degree-2n homogeneous elements scale as T^n.
  CHECK(fawcett_pair(P("1122"), TimeHorizon{rat(3)}) == rat(9, 8));
}

TEST_CASE("fawcett inner product") {
  CHECK(inner_fawcett(P("1"), P("1"), T1) == 1);           // Var(B_1)
  CHECK(inner_fawcett(P("11"), P("11"), T1) == rat(3, 4)); // E[(B^2/2)^2]
  CHECK(inner_fawcett(P("1"), P("2"), T1) == 0);
}

TEST_CASE("ito pairing") {
  CHECK(ito_pair(P("000"), T1) == rat(1, 6));
  CHECK(ito_pair(P("011"), T1) == 0);
  CHECK(ito_pair(TensorPoly::one(), T1) == 1);
  CHECK(ito_pair(P("00"), TimeHorizon{rat(2)}) == rat(2));
}

TEST_CASE("ito inner product") {
  CHECK(inner_ito(P("01"), P("1"), T1) == rat(1, 2));
  CHECK(inner_ito(P("1"), P("2"), T1) == 0);
  CHECK(inner_ito(P("11"), P("11"), T1) == rat(1, 2));  // Var((B^2-T)/2) = T^2/2
}

TEST_CASE("binary inner closed form") {
  CHECK(binary_inner(W("01"), W("01"), T1) == rat(1, 3));
  CHECK(binary_inner(W("001"), W("01"), T1) == rat(1, 8));
  CHECK(binary_inner(W("1"), W("1"), TimeHorizon{rat(5)}) == rat(5));
  CHECK(binary_inner(W(""), W(""), T1) == 1);
  CHECK(binary_inner(W("1"), W("11"), T1) == 0);  // different 1-counts
  CHECK_THROWS(binary_inner(W("10"), W("1"), T1));
}

TEST_CASE("binary inner equals quasi-shuffle inner exhaustively") {
  // All pairs of words over {0,1,2} with weighted degree <= 5 that do not
  // end in 0 (plus the empty word): same stripped word implies the closed
  // form on patterns; different stripped words imply 0.
  std::vector<Word> words;
  for (const Word& w : words_up_to_degree(2, 5, true))
    if (w.weighted_degree() <= 5 && (w.empty() || w.back() != 0)) words.push_back(w);
  REQUIRE(words.size() > 50);
  int same_class_pairs = 0;
  for (const auto& u : words)
    for (const auto& v : words) {
      const Rat lhs = inner_ito(TensorPoly(u), TensorPoly(v), T1);
      if (u.stripped() == v.stripped()) {
        CHECK(lhs == binary_inner(u.binary_pattern(), v.binary_pattern(), T1));
        ++same_class_pairs;
      } else {
        CHECK(lhs == 0);
      }
    }
  CHECK(same_class_pairs > 100);
}

TEST_CASE("ito inner scales as T^(i+j+k)") {
  const TimeHorizon T3{rat(3)};
  CHECK(binary_inner(W("01"), W("011"), T3) == 0);
  // (001, 01): i=2, j=1, k=1 -> scales as T^4.
  CHECK(binary_inner(W("001"), W("01"), T3) == rat(1, 8) * rat_pow(rat(3), 4));
  CHECK(inner_ito(P("001"), P("01"), T3) == binary_inner(W("001"), W("01"), T3));
}

TEST_CASE("gram blocks") {
  auto inner = make_inner_fawcett(T1);
  GramBlock g1 = gram_block({P("1"), P("2")}, {P("1"), P("2")}, inner);
  CHECK(g1.entries.at(0, 0) == 1);
  CHECK(g1.entries.at(1, 1) == 1);
  CHECK(g1.entries.at(0, 1) == 0);
  CHECK(g1.entries.at(1, 0) == 0);

  GramBlock g0 = gram_block({TensorPoly::one()}, {TensorPoly::one()}, inner);
  CHECK(g0.entries.at(0, 0) == 1);

  std::vector<TensorPoly> deg2{P("11"), P("12"), P("21"), P("22")};
  GramBlock g2 = gram_block(deg2, deg2, inner);
  CHECK(g2.entries.at(0, 0) == rat(3, 4));
  CHECK(g2.entries.is_symmetric());
  CHECK(g2.entries.is_positive_semidefinite());
  // Oracle for every entry: brute-force shuffle + Fawcett word rule.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(g2.entries.at(i, j) == fawcett_pair(shuffle(deg2[i], deg2[j]), T1));
}

TEST_CASE("gram blocks positive semi-definite under both inner products") {
  // Fawcett on all words of degree <= 3, d = 2.
  {
    std::vector<TensorPoly> basis;
    for (const Word& w : words_up_to_degree(2, 3, false)) basis.emplace_back(w);
    GramBlock g = gram_block(basis, basis, make_inner_fawcett(T1));
    CHECK(g.entries.is_positive_semidefinite());
  }
  // Ito on words of degree <= 3 over {0,1,2}; degenerate directions allowed.
  {
    std::vector<TensorPoly> basis;
    for (const Word& w : words_up_to_degree(2, 3, true)) basis.emplace_back(w);
    GramBlock g = gram_block(basis, basis, make_inner_ito(T1));
    CHECK(g.entries.is_symmetric());
    CHECK(g.entries.is_positive_semidefinite());
  }
}
