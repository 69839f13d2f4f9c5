#ifndef ORTHSIG_EXPANSION_HPP
#define ORTHSIG_EXPANSION_HPP

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orthsig/ortho_basis.hpp"
#include "orthsig/path_engine.hpp"

namespace orthsig {

// Orthogonalized feature matrix: one column per basis entry of tensor degree
// <= truncation, each a combination of Ito feature columns.
FeatureMatrix orthogonal_features(const FeatureMatrix& ito, const OrthoBasis& basis, int truncation);

std::string basis_id(const OrthoBasis& basis);

// Basis entries restricted to keys of weighted degree <= bound (the time
// letter counts double), matching the inhomogeneous truncation used for the
// orthogonal expansions.
OrthoBasis restrict_weighted(const OrthoBasis& basis, int max_weighted_degree);

// Truncated orthogonal series fitted by Monte Carlo: the coefficient of w is
// the sample mean of Y <p_w, Sig> divided by the exact squared norm.
struct ExpansionModel {
  std::string basis_id;
  int truncation = 0;
  std::map<Word, double, GradedLex> coefficients;
};

ExpansionModel fit_expansion(std::span<const double> targets, const FeatureMatrix& ito,
                             const OrthoBasis& basis, int truncation, double horizon);

std::vector<double> evaluate_expansion(const ExpansionModel& model, const OrthoBasis& basis,
                                       const FeatureMatrix& ito);

// Truncate a fitted model to a lower degree; coefficients are untouched
// (block stability).
ExpansionModel truncate_expansion(const ExpansionModel& model, int lower_truncation);

// Series estimate of E[Y1 Y2] from two fitted expansions on a shared basis.
double covariance_series(const ExpansionModel& m1, const ExpansionModel& m2, const OrthoBasis& basis);

// Ordinary least squares on raw feature columns of degree <= truncation,
// solved by column-pivoted QR; optional ridge. On rank deficiency at ridge 0
// the fit falls back to a tiny ridge and reports it.
struct RegressionModel {
  std::string feature_tag;
  int truncation = 0;
  double ridge = 0;
  std::vector<Word> columns;
  Eigen::VectorXd beta;
  bool rank_deficient = false;
  double effective_ridge = 0;
};

RegressionModel ols_fit(std::span<const double> targets, const FeatureMatrix& features,
                        int truncation, double ridge = 0);

std::vector<double> evaluate_regression(const RegressionModel& model, const FeatureMatrix& features);

// Linear Stratonovich SDE dY = A_a Y dW^a with identity observable.
struct LinearSDESpec {
  Eigen::VectorXd y0;
  std::vector<Eigen::MatrixXd> coefficients;  // one n x n matrix per letter 1..d
};

// Truncated stochastic Taylor value sum_{n<=N} A_{a1}...A_{an} y0 <a1..an, S>.
Eigen::VectorXd linear_sde_taylor(const LinearSDESpec& spec, const SigTensor& sig, int truncation);

// Exact terminal state on the piecewise-linear path: ordered product of
// segment matrix exponentials applied to y0.
Eigen::VectorXd linear_sde_exact(const LinearSDESpec& spec, const std::vector<double>& increments,
                                 int dim, int steps, bool first_column_is_time);

struct Metrics {
  double l2 = 0;  // root mean square error
  double r2 = 0;  // coefficient of determination
};

// Throws on zero-variance targets (R^2 undefined).
Metrics metrics(std::span<const double> predictions, std::span<const double> targets);

}  // namespace orthsig

#endif
