#ifndef ORTHSIG_NATURALITY_HPP
#define ORTHSIG_NATURALITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthsig/tensor_poly.hpp"

namespace orthsig {

// A set partition of {1,...,n} into blocks of size at most two. Pairs are
// the contractions of the ansatz; singletons remain as word positions.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;  // (i, j) with i < j, sorted
  std::vector<int> singletons;             // increasing

  bool is_identity() const { return pairs.empty(); }
  bool is_noncrossing_caps() const;  // no crossings, every covered node paired
  std::string to_string() const;
  bool operator==(const Pairing& o) const = default;
  bool operator<(const Pairing& o) const;
};

// All <=2-block set partitions of [n]; count is the involution number I(n).
std::vector<Pairing> pairings(int n);

std::uint64_t involution_number(int n);

// A delta monomial is a set of disjoint contracted symbol pairs, each stored
// with the smaller symbol first and the set sorted.
using DeltaMonomial = std::vector<std::pair<int, int>>;

// Exact-rational combination of (delta monomial, residual word of formal
// symbols) terms.
struct DeltaTerm {
  DeltaMonomial deltas;
  std::vector<int> word;
  auto operator<=>(const DeltaTerm&) const = default;
};
using DeltaPoly = std::map<DeltaTerm, Rat>;

// Expected Stratonovich signature of Brownian motion on a word of generic
// symbols (T = 1): a word of length 2m maps to (1/(2^m m!)) times the
// product of deltas on consecutive positions; odd lengths map to zero. The
// carried prefactor multiplies in.
DeltaPoly esig_generic(const std::vector<int>& symbols, const DeltaMonomial& prefactor);

// The linear system of the orthogonalization-map ansatz at degree n: one
// unknown per non-identity pairing, one equation per (test-word length,
// delta monomial) with the identity pairing supplying the constant term.
struct AnsatzSystem {
  int degree = 0;
  bool noncrossing_only = false;
  std::vector<Pairing> variables;  // non-identity pairings, deterministic order
  struct Row {
    int test_len;
    DeltaMonomial monomial;
    std::map<std::size_t, Rat> coeffs;  // variable index -> coefficient
    Rat rhs;                            // so that A x = b
  };
  std::vector<Row> rows;
};

AnsatzSystem build_system(int n, bool noncrossing_only = false);

struct RankReport {
  std::size_t variables = 0;
  std::size_t rank_A = 0;
  std::size_t rank_aug = 0;
  bool consistent = false;
  bool unique = false;
  std::optional<std::vector<Rat>> solution;  // free variables at zero
  // Farkas certificate when inconsistent: y with y^T A = 0, y^T b != 0,
  // supported on an irreducible infeasible row subset.
  std::vector<std::pair<std::size_t, Rat>> certificate;
};

RankReport rank_certify(const AnsatzSystem& system);

// Evaluates the solved ansatz on a concrete word: contractions become
// Kronecker deltas on the letters.
TensorPoly evaluate_ansatz(const AnsatzSystem& system, const std::vector<Rat>& solution,
                           const Word& w);

}  // namespace orthsig

#endif
