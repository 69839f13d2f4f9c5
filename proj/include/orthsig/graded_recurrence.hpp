#ifndef ORTHSIG_GRADED_RECURRENCE_HPP
#define ORTHSIG_GRADED_RECURRENCE_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "orthsig/expected_signature.hpp"
#include "orthsig/lyndon.hpp"
#include "orthsig/rat_matrix.hpp"
#include "orthsig/tensor_poly.hpp"

namespace orthsig {

// Graded commutative frame over W = L(V) realized by Lyndon generators:
// generators per degree m, Radford monomials per total degree n (r_n = d^n),
// all in a fixed deterministic order.
struct GradedFrame {
  int d = 0;
  int n_max = 0;
  std::vector<std::vector<Word>> generators;             // [m-1]: Lyndon words of length m
  std::vector<std::vector<RadfordMonomial>> monomials;   // [n]: monomials of total degree n
  std::vector<std::vector<TensorPoly>> expansions;       // shuffle realizations of monomials[n]

  std::size_t r(int n) const { return monomials[static_cast<std::size_t>(n)].size(); }
  std::size_t generator_count(int m) const { return generators[static_cast<std::size_t>(m - 1)].size(); }
};

GradedFrame make_graded_frame(int d, int n_max);

// Block-orthogonal polynomial vectors p_n with their Gram blocks H_n.
struct DegreeBlock {
  std::vector<TensorPoly> polys;  // length r_n, monic in the leading monomial
  RatMatrix H;                    // (p_n, p_n^T), exact
};

// Monic block orthogonalization degree by degree. Throws "functional not
// quasi-definite at degree n" when a Gram block goes singular.
std::vector<DegreeBlock> block_orth_polys(const GradedFrame& frame, const InnerProduct& inner);

// Recurrence matrices M^k_{n,m,i} with w_{m,i} p_{n-m} = sum_k M^k p_{n-m+k},
// k in [-m, m]. Inner products with degrees below n-2m are asserted to
// vanish; any nonzero block is recorded in below_cutoff_failures.
struct RecurrenceSet {
  int n_max = 0;
  std::map<std::tuple<int, int, int, int>, RatMatrix> M;  // key (n, m, i, k)
  std::vector<RatMatrix> H;                                // H[n]
  std::vector<std::string> below_cutoff_failures;

  bool has(int n, int m, int i, int k) const { return M.contains({n, m, i, k}); }
  const RatMatrix& at(int n, int m, int i, int k) const { return M.at({n, m, i, k}); }
};

RecurrenceSet recurrence_matrices(const GradedFrame& frame, const std::vector<DegreeBlock>& polys,
                                  const InnerProduct& inner);

// A = M^m_{n,m,i}; C via Eq. A_C: C^T = H_{n-m}^{-1} A H_n. Where the frame
// reaches degree n+m the directly computed M^{-m}_{n+m,m,i} is compared
// against the derived one.
RatMatrix a_matrix(const RecurrenceSet& rset, int n, int m, int i);
RatMatrix c_matrix(const RecurrenceSet& rset, int n, int m, int i);

// Row-selection matrix L_{n,m,i} with L w_n = w_{m,i} * w_{n-m} on monomials.
RatMatrix l_matrix(const GradedFrame& frame, int n, int m, int i);

struct RankAuditReport {
  struct Block {
    int n, m, i;
    std::size_t rank_A, rank_C, expected;  // expected = r_{n-m}
    bool L_orthonormal;                    // L L^T = I
    bool C_direct_matches;                 // only meaningful when n+m <= n_max
    bool C_checked_directly;
  };
  struct Joint {
    int n;
    std::size_t rank_A_joint, rank_C_joint, rank_L_joint, expected;  // expected = r_n
  };
  std::vector<Block> blocks;
  std::vector<Joint> joints;
  std::vector<std::string> m_identity_failures;   // Eq. M_identity residual != 0
  std::vector<std::string> reconstruction_failures;
  std::vector<std::string> below_cutoff_failures;
  bool all_ok = true;
};

RankAuditReport rank_audit(const GradedFrame& frame, const std::vector<DegreeBlock>& polys,
                           const RecurrenceSet& rset);

// Reconstructs p_n from lower-degree polynomials through a generalized left
// inverse of the joint matrix A_n; returns the reconstructed vector.
std::vector<TensorPoly> reconstruct_via_generalized_inverse(const GradedFrame& frame,
                                                            const std::vector<DegreeBlock>& polys,
                                                            const RecurrenceSet& rset, int n);

// Orthonormalized recurrence blocks and the banded Jacobi truncation for the
// generator (m, i). Degrees run 0..degree_cut with degree_cut + m <= n_max.
// Throws when some H_n is not numerically positive definite.
Eigen::MatrixXd jacobi_truncation(const RecurrenceSet& rset, const GradedFrame& frame, int m, int i,
                                  int degree_cut);

// Max-norm residual of the commutation identities between generator pairs,
// evaluated over all index tuples that fit inside the frame.
double commutativity_residual(const RecurrenceSet& rset, const GradedFrame& frame);

}  // namespace orthsig

#endif
