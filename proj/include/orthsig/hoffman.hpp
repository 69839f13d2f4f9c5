#ifndef ORTHSIG_HOFFMAN_HPP
#define ORTHSIG_HOFFMAN_HPP

#include <map>
#include <vector>

#include "orthsig/tensor_poly.hpp"

namespace orthsig {

// Hoffman exponential specialized to the Brownian bracket: sums over sets of
// pairwise-disjoint adjacent positions carrying equal nonzero letters, each
// chosen pair merged into a single 0 with weight (1/2)^{#pairs}. Blocks of
// three or more never survive because [0, b] = 0. Algebra morphism from the
// shuffle to the quasi-shuffle product.
TensorPoly hoffman_exp(const Word& w);
TensorPoly hoffman_exp(const TensorPoly& p);

// Two-sided inverse of hoffman_exp; same expansion with weight (-1/2)^{#pairs}.
TensorPoly hoffman_log(const Word& w);
TensorPoly hoffman_log(const TensorPoly& p);

// Sparse matrix of hoffman_log (or hoffman_exp) on all words of tensor
// degree <= N over {0,...,d}. Applying the log matrix to a Stratonovich
// feature vector yields Ito features: <w, ItoSig> = <hoffman_log(w), StratSig>.
struct ConversionMatrix {
  int d = 0;
  int truncation = 0;
  bool is_log = true;
  // column word -> image polynomial
  std::map<Word, TensorPoly, GradedLex> columns;
};

ConversionMatrix strat_to_ito_map(int d, int truncation);  // hoffman_log columns
ConversionMatrix ito_to_strat_map(int d, int truncation);  // hoffman_exp columns

// All words of tensor degree <= max_degree over {0,...,d} in (degree, lex) order.
std::vector<Word> words_up_to_degree(int d, int max_degree, bool include_time_letter);

}  // namespace orthsig

#endif
