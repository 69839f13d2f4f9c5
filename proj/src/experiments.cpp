#include "orthsig/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "orthsig/parallel.hpp"

namespace orthsig {

SigTensor spatial_signature(const PathBatch& batch, int path_index, int truncation) {
  if (!batch.spec().augment_time)
    return strat_signature(batch, path_index, truncation);
  const auto inc = batch.increments(path_index);
  const int d = batch.spec().d;
  const int dim = batch.dim();
  std::vector<double> spatial(static_cast<std::size_t>(batch.spec().steps) * static_cast<std::size_t>(d));
  for (int s = 0; s < batch.spec().steps; ++s)
    for (int a = 0; a < d; ++a)
      spatial[static_cast<std::size_t>(s) * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] =
          inc[static_cast<std::size_t>(s) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a + 1)];
  SigTensor sig = strat_signature(spatial, d, batch.spec().steps, truncation);
  sig.letter_base = 1;
  return sig;
}

namespace {

Eigen::MatrixXd correlation_matrix(const FeatureMatrix& fm, const std::vector<std::size_t>& cols) {
  const std::size_t k = cols.size();
  const std::size_t n = fm.paths;
  std::vector<double> means(k), sds(k);
  std::vector<std::vector<double>> centered(k, std::vector<double>(n));
  for (std::size_t c = 0; c < k; ++c) {
    auto col = fm.column(cols[c]);
    means[c] = mean(col);
    for (std::size_t p = 0; p < n; ++p) centered[c][p] = col[p] - means[c];
    sds[c] = std::sqrt(variance(col));
  }
  Eigen::MatrixXd corr(k, k);
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < k; ++i) {
    corr(static_cast<long>(i), static_cast<long>(i)) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t p = 0; p < n; ++p) prod[p] = centered[i][p] * centered[j][p];
      const double cov = pairwise_sum(prod) / static_cast<double>(n - 1);
      const double r = (sds[i] > 0 && sds[j] > 0) ? cov / (sds[i] * sds[j]) : 0.0;
      corr(static_cast<long>(i), static_cast<long>(j)) = r;
      corr(static_cast<long>(j), static_cast<long>(i)) = r;
    }
  }
  return corr;
}

TimeHorizon horizon_of(double h) {
  const long rounded = static_cast<long>(h);
  if (std::abs(h - static_cast<double>(rounded)) > 1e-12)
    throw std::invalid_argument("experiments: integral horizons only (basis is exact in T)");
  return TimeHorizon{rat(rounded)};
}

double max_offdiag(const Eigen::MatrixXd& m) {
  double mx = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (i != j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

}  // namespace

OrthcheckResult orthcheck_experiment(const OrthcheckConfig& config) {
  PathSpec spec{.d = config.d,
                .augment_time = true,
                .horizon = config.horizon,
                .steps = config.steps,
                .paths = config.paths,
                .seed = config.seed};
  PathBatch batch = sample_paths(spec);
  FeatureMatrix strat = strat_features(batch, config.truncation, config.threads);
  FeatureMatrix ito = ito_features_from_strat(strat);
  const TimeHorizon T = horizon_of(config.horizon);
  OrthoBasis basis = lifted_ito_basis(config.d, config.truncation, T);
  FeatureMatrix orth = orthogonal_features(ito, basis, config.truncation);

  OrthcheckResult result;
  // Non-degenerate, non-constant words: degree >= 1, not ending in 0.
  std::vector<std::size_t> raw_cols, orth_cols;
  for (std::size_t c = 0; c < strat.columns.size(); ++c) {
    const Word& w = strat.columns[c];
    if (w.empty() || w.back() == 0) continue;
    result.words.push_back(w);
    raw_cols.push_back(c);
  }
  for (const Word& w : result.words) orth_cols.push_back(orth.column_index(w));

  result.strat = correlation_matrix(strat, raw_cols);
  result.ito = correlation_matrix(ito, raw_cols);
  result.orth = correlation_matrix(orth, orth_cols);
  result.strat_max_offdiag = max_offdiag(result.strat);
  result.orth_max_offdiag = max_offdiag(result.orth);
  {
    const std::size_t n = ito.paths;
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < result.words.size(); ++i)
      for (std::size_t j = i + 1; j < result.words.size(); ++j) {
        if (result.words[i].stripped().tensor_degree() == result.words[j].stripped().tensor_degree())
          continue;
        result.ito_max_interchaos = std::max(
            result.ito_max_interchaos,
            std::abs(result.ito(static_cast<long>(i), static_cast<long>(j))));
        const auto ci = ito.column(raw_cols[i]);
        const auto cj = ito.column(raw_cols[j]);
        for (std::size_t p = 0; p < n; ++p) prod[p] = ci[p] * cj[p];
        const double m = mean(prod);
        const double se = std::sqrt(variance(prod) / static_cast<double>(n));
        if (se > 0)
          result.ito_interchaos_max_se_ratio =
              std::max(result.ito_interchaos_max_se_ratio, std::abs(m) / se);
      }
  }

  // Exact second moments: (p_u, p_v) = 0 off the diagonal, sq_norm on it.
  const std::size_t n = orth.paths;
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < orth_cols.size(); ++i) {
    const auto ci = orth.column(orth_cols[i]);
    const double norm_i = rat_to_double(basis.find(result.words[i])->sq_norm);
    for (std::size_t j = i; j < orth_cols.size(); ++j) {
      const auto cj = orth.column(orth_cols[j]);
      for (std::size_t p = 0; p < n; ++p) prod[p] = ci[p] * cj[p];
      const double m = mean(prod);
      const double se = std::sqrt(variance(prod) / static_cast<double>(n));
      const double exact = (i == j) ? norm_i : 0.0;
      if (se > 0)
        result.orth_max_se_ratio = std::max(result.orth_max_se_ratio, std::abs(m - exact) / se);
    }
  }
  return result;
}

namespace {

LinearSDESpec random_unit_sde(int d, int state_dim, std::uint64_t seed) {
  PathRng rng(seed, 0xA5A5A5A5ULL);
  LinearSDESpec spec;
  spec.y0 = Eigen::VectorXd::Zero(state_dim);
  spec.y0(0) = 1.0;
  double sq = 0;
  for (int a = 0; a < d; ++a) {
    Eigen::MatrixXd A(state_dim, state_dim);
    for (long i = 0; i < state_dim; ++i)
      for (long j = 0; j < state_dim; ++j) {
        A(i, j) = rng.normal();
        sq += A(i, j) * A(i, j);
      }
    spec.coefficients.push_back(std::move(A));
  }
  const double inv = 1.0 / std::sqrt(sq);  // joint Euclidean norm 1
  for (auto& A : spec.coefficients) A *= inv;
  return spec;
}

std::vector<double> exact_sde_targets(const LinearSDESpec& sde, const PathBatch& batch, int threads) {
  std::vector<double> out(static_cast<std::size_t>(batch.spec().paths));
  parallel_for(out.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto inc = batch.increments(static_cast<int>(p));
      out[p] = linear_sde_exact(sde, inc, batch.dim(), batch.spec().steps,
                                batch.spec().augment_time)(0);
    }
  });
  return out;
}

std::vector<double> taylor_predictions(const LinearSDESpec& sde, const PathBatch& batch,
                                       int truncation, int threads) {
  std::vector<double> out(static_cast<std::size_t>(batch.spec().paths));
  parallel_for(out.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const SigTensor sig = spatial_signature(batch, static_cast<int>(p), truncation);
      out[p] = linear_sde_taylor(sde, sig, truncation)(0);
    }
  });
  return out;
}

}  // namespace

std::vector<TidyRow> sde_compare_experiment(const SdeCompareConfig& config) {
  std::vector<TidyRow> rows;
  const TimeHorizon T = horizon_of(config.horizon);
  OrthoBasis basis = lifted_ito_basis(config.d, config.max_truncation, T);
  for (int rep = 0; rep < config.n_mats; ++rep) {
    const std::uint64_t rep_seed = config.seed + static_cast<std::uint64_t>(rep);
    LinearSDESpec sde = random_unit_sde(config.d, config.state_dim, 0x5DE000ULL + rep_seed);
    PathSpec train_spec{.d = config.d,
                        .augment_time = true,
                        .horizon = config.horizon,
                        .steps = config.steps,
                        .paths = config.train_paths,
                        .seed = 0x7123400ULL + rep_seed};
    PathSpec test_spec = train_spec;
    test_spec.paths = config.test_paths;
    test_spec.seed = 0x9988000ULL + rep_seed;  // disjoint stream from training
    PathBatch train = sample_paths(train_spec);
    PathBatch test = sample_paths(test_spec);

    const std::vector<double> y_train = exact_sde_targets(sde, train, config.threads);
    const std::vector<double> y_test = exact_sde_targets(sde, test, config.threads);

    FeatureMatrix ito_train = ito_features(train, config.max_truncation, config.threads);
    FeatureMatrix ito_test = ito_features(test, config.max_truncation, config.threads);

    for (int N = 1; N <= config.max_truncation; ++N) {
      const auto taylor = taylor_predictions(sde, test, N, config.threads);
      const Metrics mt = metrics(taylor, y_test);
      rows.push_back({"taylor", N, config.train_paths, rep_seed, "l2", mt.l2});
      rows.push_back({"taylor", N, config.train_paths, rep_seed, "r2", mt.r2});

      // Inhomogeneous truncation: basis keys of weighted degree <= N.
      const OrthoBasis pruned = restrict_weighted(basis, N);
      ExpansionModel model = fit_expansion(y_train, ito_train, pruned, N, config.horizon);
      const auto pred = evaluate_expansion(model, pruned, ito_test);
      const Metrics mo = metrics(pred, y_test);
      rows.push_back({"orth", N, config.train_paths, rep_seed, "l2", mo.l2});
      rows.push_back({"orth", N, config.train_paths, rep_seed, "r2", mo.r2});
    }
  }
  return rows;
}

std::vector<TidyRow> black_scholes_experiment(const BlackScholesConfig& config) {
  std::vector<TidyRow> rows;
  const TimeHorizon T = horizon_of(config.horizon);
  OrthoBasis basis = lifted_ito_basis(1, config.max_truncation, T);
  PathSpec train_spec{.d = 1,
                      .augment_time = true,
                      .horizon = config.horizon,
                      .steps = config.steps,
                      .paths = config.train_paths,
                      .seed = 0xB5000ULL + config.seed};
  PathSpec test_spec = train_spec;
  test_spec.paths = config.test_paths;
  test_spec.seed = 0xC6000ULL + config.seed;
  PathBatch train = sample_paths(train_spec);
  PathBatch test = sample_paths(test_spec);

  const GbmBatch gbm_train = geometric_bm(train, config.S0, config.sigma, config.mu, config.threads);
  const GbmBatch gbm_test = geometric_bm(test, config.S0, config.sigma, config.mu, config.threads);
  auto call = [&](const GbmBatch& g) {
    std::vector<double> out(g.terminal.size());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = std::max(g.terminal[p] - config.strike, 0.0);
    return out;
  };
  const std::vector<double> call_train = call(gbm_train), call_test = call(gbm_test);
  const std::vector<double>&lookback_train = gbm_train.running_max, &lookback_test = gbm_test.running_max;

  FeatureMatrix ito_train = ito_features(train, config.max_truncation, config.threads);
  FeatureMatrix ito_test = ito_features(test, config.max_truncation, config.threads);

  struct Payoff {
    const char* name;
    const std::vector<double>* train;
    const std::vector<double>* test;
  };
  for (const Payoff& payoff : {Payoff{"call", &call_train, &call_test},
                               Payoff{"lookback", &lookback_train, &lookback_test}}) {
    for (int N = 1; N <= config.max_truncation; ++N) {
      RegressionModel reg = ols_fit(*payoff.train, ito_train, N, config.ridge);
      const auto pred_reg = evaluate_regression(reg, ito_test);
      const Metrics mr = metrics(pred_reg, *payoff.test);
      rows.push_back({std::string("regr.") + payoff.name, N, config.train_paths, config.seed, "l2", mr.l2});
      rows.push_back({std::string("regr.") + payoff.name, N, config.train_paths, config.seed, "r2", mr.r2});

      const OrthoBasis pruned = restrict_weighted(basis, N);
      ExpansionModel model = fit_expansion(*payoff.train, ito_train, pruned, N, config.horizon);
      const auto pred_orth = evaluate_expansion(model, pruned, ito_test);
      const Metrics mo = metrics(pred_orth, *payoff.test);
      rows.push_back({std::string("orth.") + payoff.name, N, config.train_paths, config.seed, "l2", mo.l2});
      rows.push_back({std::string("orth.") + payoff.name, N, config.train_paths, config.seed, "r2", mo.r2});
    }
  }
  return rows;
}

AgreementResult estimator_agreement_experiment(const AgreementConfig& config) {
  const TimeHorizon T = horizon_of(config.horizon);
  OrthoBasis basis = lifted_ito_basis(config.d, config.truncation, T);
  PathSpec train_spec{.d = config.d,
                      .augment_time = true,
                      .horizon = config.horizon,
                      .steps = config.steps,
                      .paths = config.train_paths,
                      .seed = 0xAA100ULL + config.seed};
  PathSpec test_spec = train_spec;
  test_spec.paths = config.test_paths;
  test_spec.seed = 0xBB200ULL + config.seed;
  PathBatch train = sample_paths(train_spec);
  PathBatch test = sample_paths(test_spec);
  FeatureMatrix ito_train = ito_features(train, config.truncation, config.threads);
  FeatureMatrix ito_test = ito_features(test, config.truncation, config.threads);

  // Fixed target inside the degree-3 feature span.
  auto target = [&](const FeatureMatrix& fm) {
    const std::size_t c1 = fm.column_index(Word::from_string("12"));
    const std::size_t c2 = fm.column_index(Word::from_string("011"));
    const std::size_t c3 = fm.column_index(Word::from_string("1"));
    std::vector<double> out(fm.paths);
    for (std::size_t p = 0; p < fm.paths; ++p)
      out[p] = 2.0 * fm.at(p, c1) + fm.at(p, c2) - 3.0 * fm.at(p, c3) + 0.5;
    return out;
  };
  const std::vector<double> y_train = target(ito_train);
  const std::vector<double> y_test = target(ito_test);

  RegressionModel reg = ols_fit(y_train, ito_train, config.truncation, 0.0);
  ExpansionModel exp_model =
      fit_expansion(y_train, ito_train, basis, config.truncation, config.horizon);
  const auto pred_reg = evaluate_regression(reg, ito_test);
  const auto pred_exp = evaluate_expansion(exp_model, basis, ito_test);

  AgreementResult result;
  std::vector<double> diff_sq(pred_reg.size()), target_sq(pred_reg.size());
  for (std::size_t p = 0; p < pred_reg.size(); ++p) {
    const double d = pred_reg[p] - pred_exp[p];
    diff_sq[p] = d * d;
    target_sq[p] = y_test[p] * y_test[p];
  }
  result.relative_gap = std::sqrt(pairwise_sum(diff_sq) / pairwise_sum(target_sq));
  result.ols_r2 = metrics(pred_reg, y_test).r2;
  result.expansion_r2 = metrics(pred_exp, y_test).r2;
  return result;
}

}  // namespace orthsig
