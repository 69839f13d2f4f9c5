#ifndef ORTHSIG_LYNDON_HPP
#define ORTHSIG_LYNDON_HPP

#include <cstdint>
#include <vector>

#include "orthsig/tensor_poly.hpp"
#include "orthsig/word.hpp"

namespace orthsig {

// All Lyndon words over {1,...,d} grouped by length, result[m-1] holds the
// words of length m in lexicographic order (Duval's algorithm).
std::vector<std::vector<Word>> lyndon_words(int d, int max_len);

// Number of Lyndon words of length m over d letters: (1/m) sum_{k|m} mu(k) d^{m/k}.
std::uint64_t witt_number(int d, int m);

// A commutative monomial in Lyndon-word generators, stored as a sorted
// multiset. Its realization in the shuffle algebra is the shuffle product of
// its factors (Radford: Lyndon words freely generate Sh(V*) as a polynomial
// algebra).
class RadfordMonomial {
 public:
  RadfordMonomial() = default;
  explicit RadfordMonomial(std::vector<Word> factors);

  const std::vector<Word>& factors() const { return factors_; }
  std::size_t tensor_degree() const;   // sum of factor lengths
  std::size_t shuffle_degree() const { return factors_.size(); }

  RadfordMonomial times(const Word& lyndon) const;  // multiset union

  bool operator==(const RadfordMonomial& o) const = default;
  bool operator<(const RadfordMonomial& o) const;

  std::string to_string() const;  // e.g. "[1][1][12]"

 private:
  std::vector<Word> factors_;  // sorted by (length, lex)
};

TensorPoly radford_expand(const RadfordMonomial& m);

// All Radford monomials of total tensor degree n over d letters, in a fixed
// deterministic order. Their count is d^n.
std::vector<RadfordMonomial> radford_monomials(int d, int n);

}  // namespace orthsig

#endif
