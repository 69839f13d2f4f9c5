#ifndef ORTHSIG_TENSOR_POLY_HPP
#define ORTHSIG_TENSOR_POLY_HPP

#include <map>
#include <string>

#include "orthsig/rational.hpp"
#include "orthsig/word.hpp"

namespace orthsig {

// Sparse exact-rational linear combination of words. Zero coefficients are
// never stored; the term map is ordered by (tensor degree, lex) so iteration
// is deterministic. Immutable in spirit: operations return new values.
class TensorPoly {
 public:
  using TermMap = std::map<Word, Rat, GradedLex>;

  TensorPoly() = default;
  explicit TensorPoly(const Word& w, Rat c = 1) {
    if (c != 0) terms_[w] = std::move(c);
  }

  static TensorPoly zero() { return TensorPoly(); }
  static TensorPoly one() { return TensorPoly(Word{}); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rat coeff(const Word& w) const;

  // Largest tensor degree among stored terms (0 if zero polynomial).
  std::size_t max_degree() const;

  void add_term(const Word& w, const Rat& c);

  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  TensorPoly& operator*=(const Rat& c);

  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(TensorPoly a, const Rat& c) { return a *= c; }
  friend TensorPoly operator*(const Rat& c, TensorPoly a) { return a *= c; }

  bool operator==(const TensorPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const TensorPoly& o) const { return !(*this == o); }

  std::string to_string() const;  // e.g. "11112 - 1/80*211"

 private:
  TermMap terms_;
};

// Recursive shuffle of two words, extended bilinearly in the poly overloads.
TensorPoly shuffle(const Word& u, const Word& v);
TensorPoly shuffle(const TensorPoly& u, const TensorPoly& v);

// Quasi-shuffle with the Brownian bracket [a,b] = 0-letter if a = b != 0,
// zero otherwise.
TensorPoly quasi_shuffle(const Word& u, const Word& v);
TensorPoly quasi_shuffle(const TensorPoly& u, const TensorPoly& v);

// Concatenation product, extended bilinearly.
TensorPoly concat(const TensorPoly& u, const TensorPoly& v);

}  // namespace orthsig

#endif
