#ifndef ORTHSIG_EXPECTED_SIGNATURE_HPP
#define ORTHSIG_EXPECTED_SIGNATURE_HPP

#include <functional>
#include <string>
#include <vector>

#include "orthsig/rat_matrix.hpp"
#include "orthsig/tensor_poly.hpp"

namespace orthsig {

// Time horizon of the interval [0,T], carried exactly.
struct TimeHorizon {
  Rat T = 1;
};

// Pairing with the expected Stratonovich signature of d-dimensional Brownian
// motion, exp(T/2 sum_g gg): a word of length 2n contributes T^n/(2^n n!)
// iff it is a concatenation of doubled letters. Words containing the time
// letter 0 are rejected.
Rat fawcett_pair(const TensorPoly& ell, const TimeHorizon& horizon);

// (u,v) = fawcett_pair(u shuffle v).
Rat inner_fawcett(const TensorPoly& u, const TensorPoly& v, const TimeHorizon& horizon);

// Pairing with the expected Ito signature of time-augmented Brownian motion,
// sum_n T^n/n! 0^n.
Rat ito_pair(const TensorPoly& ell, const TimeHorizon& horizon);

// (u,v) = ito_pair(u qshuffle v).
Rat inner_ito(const TensorPoly& u, const TensorPoly& v, const TimeHorizon& horizon);

// Closed form of the Ito inner product on binary patterns 0^{i1}1...0^{ik}1:
//   T^{i+j+k}/(i+j+k)! * prod_{r=1..k} binom(i_r+j_r, i_r),
// zero when the 1-counts differ. Inputs must end in 1 or be empty. The
// source prints the product as r = 0..k with i_0, j_0 undefined; r = 1..k is
// the reading that reproduces the worked basis table.
Rat binary_inner(const Word& u, const Word& v, const TimeHorizon& horizon);

// Zero-block profile (i_1,...,i_k) of a binary pattern.
std::vector<std::size_t> zero_profile(const Word& pattern);

using InnerProduct = std::function<Rat(const TensorPoly&, const TensorPoly&)>;

InnerProduct make_inner_fawcett(TimeHorizon horizon);
InnerProduct make_inner_ito(TimeHorizon horizon);

// Matrix of pairwise inner products of two families.
struct GramBlock {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  RatMatrix entries;
};

GramBlock gram_block(const std::vector<TensorPoly>& basis_u, const std::vector<TensorPoly>& basis_v,
                     const InnerProduct& inner);

}  // namespace orthsig

#endif
