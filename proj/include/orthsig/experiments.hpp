#ifndef ORTHSIG_EXPERIMENTS_HPP
#define ORTHSIG_EXPERIMENTS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "orthsig/expansion.hpp"
#include "orthsig/ortho_basis.hpp"
#include "orthsig/path_engine.hpp"

namespace orthsig {

// Tidy experiment output row.
struct TidyRow {
  std::string method;
  int truncation = 0;
  int paths = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0;
};

// Spatial-only Stratonovich signature of an augmented batch path (time
// column dropped, letters 1..d).
SigTensor spatial_signature(const PathBatch& batch, int path_index, int truncation);

// ---------------------------------------------------------------------------
// Orthogonality check over sampled paths (heatmap-style data).

struct OrthcheckConfig {
  int d = 2;
  int truncation = 4;
  int paths = 20000;
  int steps = 500;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  int threads = 1;
};

struct OrthcheckResult {
  std::vector<Word> words;   // non-degenerate words, degree 1..N
  Eigen::MatrixXd strat;     // empirical correlations
  Eigen::MatrixXd ito;
  Eigen::MatrixXd orth;
  double strat_max_offdiag = 0;
  double ito_max_interchaos = 0;  // across different 1-counts
  double ito_interchaos_max_se_ratio = 0;  // |moment| / SE across chaos blocks
  double orth_max_offdiag = 0;
  // max over pairs of |empirical (p_u, p_v) - exact| / standard error
  double orth_max_se_ratio = 0;
};

OrthcheckResult orthcheck_experiment(const OrthcheckConfig& config);

// ---------------------------------------------------------------------------
// Linear-SDE comparison: truncated stochastic Taylor vs orthogonal expansion.

struct SdeCompareConfig {
  int d = 2;          // driving dimension
  int state_dim = 2;  // SDE state dimension; the target is the first component
  int n_mats = 10;
  int max_truncation = 5;
  int train_paths = 10000;
  int test_paths = 2000;
  int steps = 200;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  int threads = 1;
};

std::vector<TidyRow> sde_compare_experiment(const SdeCompareConfig& config);

// ---------------------------------------------------------------------------
// Black-Scholes payoffs: OLS regression vs orthogonal expansion.

struct BlackScholesConfig {
  double sigma = 0.2;
  double mu = 0.0;
  double S0 = 1.0;
  double strike = 1.0;
  double horizon = 1.0;
  int max_truncation = 5;
  int train_paths = 10000;
  int test_paths = 2000;
  int steps = 300;
  std::uint64_t seed = 1;
  double ridge = 0.0;
  int threads = 1;
};

std::vector<TidyRow> black_scholes_experiment(const BlackScholesConfig& config);

// ---------------------------------------------------------------------------
// Estimator agreement on an in-span target.

struct AgreementConfig {
  int d = 2;
  int truncation = 3;
  int train_paths = 100000;
  int test_paths = 5000;
  int steps = 100;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  int threads = 1;
};

struct AgreementResult {
  double relative_gap = 0;  // |OLS - expansion| / |target| on the test set
  double ols_r2 = 0;
  double expansion_r2 = 0;
};

AgreementResult estimator_agreement_experiment(const AgreementConfig& config);

}  // namespace orthsig

#endif
