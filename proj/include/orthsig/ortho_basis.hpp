#ifndef ORTHSIG_ORTHO_BASIS_HPP
#define ORTHSIG_ORTHO_BASIS_HPP

#include <string>
#include <vector>

#include "orthsig/expected_signature.hpp"
#include "orthsig/tensor_poly.hpp"

namespace orthsig {

struct OrthoBasisEntry {
  Word key;
  TensorPoly poly;   // monic in key
  Rat sq_norm;       // inner(poly, poly)
};

// Ordered orthogonal (or block-orthogonal) family keyed by words.
struct OrthoBasis {
  std::string inner_tag;  // "fawcett", "ito", "binary-ito", "custom"
  int d = 0;
  Rat horizon = 1;
  std::vector<OrthoBasisEntry> entries;

  const OrthoBasisEntry* find(const Word& key) const;
};

// p_w = w - sum_{#u < #w} lambda_u u with (p_w, u) = 0 for every word u of
// lower tensor degree. lower_basis lists the candidate words (all degrees
// < #w); the full Gram on them must be invertible, otherwise the projection
// coefficients are not unique and the call fails.
TensorPoly block_orthogonalize(const Word& w, const InnerProduct& inner,
                               const std::vector<Word>& lower_basis);

// Convenience: lower basis = all words of degree < #w over {1..d} (Fawcett
// alphabet, no time letter).
TensorPoly block_orthogonalize_fawcett(const Word& w, int d, const TimeHorizon& horizon);

// Sequential Gram-Schmidt over an ordered word list. Entries whose squared
// norm vanishes are kept but never used as projection targets.
OrthoBasis gram_schmidt(const std::vector<Word>& words, const InnerProduct& inner);

// Rewrites w as a polynomial supported on the empty word and words not
// ending in 0, equal to w as a functional of the Ito signature of
// time-augmented Brownian motion.
TensorPoly reduce_trailing_zeros(const Word& w, const TimeHorizon& horizon);

// The Ito orthogonal basis on binary patterns: for every pattern ending in 1
// (plus the empty word) with weighted degree <= max_weighted_degree,
// Gram-Schmidt along its 1-count class in the order "fewer zeros first, then
// lexicographic".
OrthoBasis ito_orthogonal_basis(int max_weighted_degree, const TimeHorizon& horizon);

// Substitutes the given nonzero letters, in order, for the 1's of every term
// of a binary-pattern polynomial. By naturality this yields the orthogonal
// polynomial of the substituted word over any alphabet.
TensorPoly lift_pattern(const TensorPoly& pattern_poly, const std::vector<Letter>& letters);

// Ito orthogonal basis lifted to the alphabet {0,...,d}: one entry per word
// in [d]_0^circ (not ending in 0) with tensor degree <= max_tensor_degree.
// Ordered by (tensor degree, zero count, lex).
OrthoBasis lifted_ito_basis(int d, int max_tensor_degree, const TimeHorizon& horizon);

// All binary patterns (ending in 1, or empty) with weighted degree <= w_max,
// ordered by (weighted degree, zero count, lex).
std::vector<Word> binary_patterns_up_to(int max_weighted_degree);

}  // namespace orthsig

#endif
