#include "orthsig/expansion.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "orthsig/parallel.hpp"

namespace orthsig {

std::string basis_id(const OrthoBasis& basis) {
  return basis.inner_tag + ":d=" + std::to_string(basis.d) + ":T=" + rat_to_string(basis.horizon);
}

OrthoBasis restrict_weighted(const OrthoBasis& basis, int max_weighted_degree) {
  OrthoBasis out;
  out.inner_tag = basis.inner_tag + ":w" + std::to_string(max_weighted_degree);
  out.d = basis.d;
  out.horizon = basis.horizon;
  for (const auto& e : basis.entries)
    if (e.key.weighted_degree() <= static_cast<std::size_t>(max_weighted_degree))
      out.entries.push_back(e);
  return out;
}

FeatureMatrix orthogonal_features(const FeatureMatrix& ito, const OrthoBasis& basis, int truncation) {
  FeatureMatrix fm;
  fm.tag = "orthogonal";
  fm.paths = ito.paths;
  std::vector<std::vector<std::pair<std::size_t, double>>> mapping;
  for (const auto& entry : basis.entries) {
    if (entry.key.tensor_degree() > static_cast<std::size_t>(truncation)) continue;
    fm.columns.push_back(entry.key);
    std::vector<std::pair<std::size_t, double>> cols;
    for (const auto& [w, c] : entry.poly.terms())
      cols.emplace_back(ito.column_index(w), rat_to_double(c));
    mapping.push_back(std::move(cols));
  }
  fm.data.resize(fm.paths * fm.columns.size());
  for (std::size_t p = 0; p < fm.paths; ++p) {
    const double* src = ito.data.data() + p * ito.columns.size();
    double* dst = fm.data.data() + p * fm.columns.size();
    for (std::size_t c = 0; c < fm.columns.size(); ++c) {
      double acc = 0;
      for (const auto& [s, coeff] : mapping[c]) acc += coeff * src[s];
      dst[c] = acc;
    }
  }
  return fm;
}

ExpansionModel fit_expansion(std::span<const double> targets, const FeatureMatrix& ito,
                             const OrthoBasis& basis, int truncation, double horizon) {
  if (targets.size() != ito.paths)
    throw std::invalid_argument("fit_expansion: targets/features size mismatch");
  if (ito.tag != "ito") throw std::invalid_argument("fit_expansion: features must be Ito features");
  if (std::abs(rat_to_double(basis.horizon) - horizon) > 1e-12)
    throw std::invalid_argument("fit_expansion: basis horizon does not match the sampled paths");
  for (const Word& w : ito.columns)
    if (w.max_letter() > basis.d)
      throw std::invalid_argument("fit_expansion: feature alphabet exceeds the basis alphabet");

  FeatureMatrix orth = orthogonal_features(ito, basis, truncation);
  ExpansionModel model;
  model.basis_id = basis_id(basis);
  model.truncation = truncation;
  std::vector<double> prod(targets.size());
  for (std::size_t c = 0; c < orth.columns.size(); ++c) {
    for (std::size_t p = 0; p < targets.size(); ++p) prod[p] = targets[p] * orth.at(p, c);
    const OrthoBasisEntry* entry = basis.find(orth.columns[c]);
    model.coefficients[orth.columns[c]] = mean(prod) / rat_to_double(entry->sq_norm);
  }
  return model;
}

std::vector<double> evaluate_expansion(const ExpansionModel& model, const OrthoBasis& basis,
                                       const FeatureMatrix& ito) {
  if (basis_id(basis) != model.basis_id)
    throw std::invalid_argument("evaluate_expansion: basis mismatch");
  FeatureMatrix orth = orthogonal_features(ito, basis, model.truncation);
  std::vector<double> out(ito.paths, 0.0);
  for (std::size_t c = 0; c < orth.columns.size(); ++c) {
    const auto it = model.coefficients.find(orth.columns[c]);
    if (it == model.coefficients.end()) continue;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += it->second * orth.at(p, c);
  }
  return out;
}

ExpansionModel truncate_expansion(const ExpansionModel& model, int lower_truncation) {
  ExpansionModel out;
  out.basis_id = model.basis_id;
  out.truncation = lower_truncation;
  for (const auto& [w, c] : model.coefficients)
    if (w.tensor_degree() <= static_cast<std::size_t>(lower_truncation)) out.coefficients[w] = c;
  return out;
}

double covariance_series(const ExpansionModel& m1, const ExpansionModel& m2, const OrthoBasis& basis) {
  if (m1.basis_id != m2.basis_id || m1.basis_id != basis_id(basis))
    throw std::invalid_argument("covariance_series: basis mismatch");
  double acc = 0;
  for (const auto& [w, c1] : m1.coefficients) {
    const auto it = m2.coefficients.find(w);
    if (it == m2.coefficients.end()) continue;
    acc += c1 * it->second * rat_to_double(basis.find(w)->sq_norm);
  }
  return acc;
}

namespace {

Eigen::MatrixXd design_matrix(const FeatureMatrix& features, int truncation,
                              std::vector<Word>& kept) {
  kept.clear();
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < features.columns.size(); ++c)
    if (features.columns[c].tensor_degree() <= static_cast<std::size_t>(truncation)) {
      kept.push_back(features.columns[c]);
      idx.push_back(c);
    }
  Eigen::MatrixXd phi(features.paths, kept.size());
  for (std::size_t p = 0; p < features.paths; ++p)
    for (std::size_t c = 0; c < idx.size(); ++c)
      phi(static_cast<long>(p), static_cast<long>(c)) = features.at(p, idx[c]);
  return phi;
}

}  // namespace

RegressionModel ols_fit(std::span<const double> targets, const FeatureMatrix& features,
                        int truncation, double ridge) {
  if (targets.size() != features.paths) throw std::invalid_argument("ols_fit: size mismatch");
  if (targets.empty()) throw std::invalid_argument("ols_fit: need at least one row");
  RegressionModel model;
  model.feature_tag = features.tag;
  model.truncation = truncation;
  model.ridge = ridge;
  Eigen::MatrixXd phi = design_matrix(features, truncation, model.columns);
  Eigen::VectorXd y(targets.size());
  for (std::size_t p = 0; p < targets.size(); ++p) y(static_cast<long>(p)) = targets[p];

  const long cols = phi.cols();
  auto solve_ridge = [&](double lambda) {
    Eigen::MatrixXd gram = phi.transpose() * phi;
    gram.diagonal().array() += lambda;
    return Eigen::VectorXd(gram.ldlt().solve(phi.transpose() * y));
  };

  if (ridge > 0) {
    model.beta = solve_ridge(ridge);
    model.effective_ridge = ridge;
    return model;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
  if (qr.rank() < cols) {
    // Rank-deficient design: fall back to a tiny ridge and say so.
    model.rank_deficient = true;
    model.effective_ridge = 1e-10 * phi.squaredNorm() / static_cast<double>(cols);
    model.beta = solve_ridge(model.effective_ridge);
    return model;
  }
  model.beta = qr.solve(y);
  return model;
}

std::vector<double> evaluate_regression(const RegressionModel& model, const FeatureMatrix& features) {
  std::vector<double> out(features.paths, 0.0);
  std::vector<std::size_t> idx;
  for (const Word& w : model.columns) idx.push_back(features.column_index(w));
  for (std::size_t p = 0; p < features.paths; ++p) {
    double acc = 0;
    for (std::size_t c = 0; c < idx.size(); ++c)
      acc += model.beta(static_cast<long>(c)) * features.at(p, idx[c]);
    out[p] = acc;
  }
  return out;
}

Eigen::VectorXd linear_sde_taylor(const LinearSDESpec& spec, const SigTensor& sig, int truncation) {
  const int d = static_cast<int>(spec.coefficients.size());
  const long n = spec.y0.size();
  for (const auto& A : spec.coefficients)
    if (A.rows() != n || A.cols() != n)
      throw std::invalid_argument("linear_sde_taylor: coefficient shape mismatch");
  if (truncation > sig.truncation)
    throw std::invalid_argument("linear_sde_taylor: truncation beyond the signature");
  if (sig.dim != d)
    throw std::invalid_argument("linear_sde_taylor: signature alphabet does not match coefficients");
  Eigen::VectorXd value = spec.y0;  // n = 0 term
  // The word a1...ak (time-ordered letters) carries the matrix
  // A_{ak} ... A_{a1}: iterating the integral equation composes the vector
  // fields with the latest letter acting last, i.e. leftmost.
  std::vector<Eigen::MatrixXd> products{Eigen::MatrixXd::Identity(n, n)};
  for (int k = 1; k <= truncation; ++k) {
    std::vector<Eigen::MatrixXd> next;
    next.reserve(products.size() * static_cast<std::size_t>(d));
    const auto& level = sig.levels[static_cast<std::size_t>(k)];
    std::size_t flat = 0;
    for (const auto& u : products)
      for (int a = 0; a < d; ++a) {
        next.push_back(spec.coefficients[static_cast<std::size_t>(a)] * u);
        value += next.back() * spec.y0 * level[flat++];
      }
    products = std::move(next);
  }
  return value;
}

Eigen::VectorXd linear_sde_exact(const LinearSDESpec& spec, const std::vector<double>& increments,
                                 int dim, int steps, bool first_column_is_time) {
  const int d = static_cast<int>(spec.coefficients.size());
  const int offset = first_column_is_time ? 1 : 0;
  if (dim < d + offset) throw std::invalid_argument("linear_sde_exact: increment width too small");
  const long n = spec.y0.size();
  Eigen::VectorXd y = spec.y0;
  Eigen::MatrixXd gen(n, n);
  for (int s = 0; s < steps; ++s) {
    gen.setZero();
    for (int a = 0; a < d; ++a)
      gen += spec.coefficients[static_cast<std::size_t>(a)] *
             increments[static_cast<std::size_t>(s) * static_cast<std::size_t>(dim) +
                        static_cast<std::size_t>(a + offset)];
    y = gen.exp() * y;
  }
  return y;
}

Metrics metrics(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) throw std::invalid_argument("metrics: length mismatch");
  const std::size_t n = targets.size();
  if (n == 0) throw std::invalid_argument("metrics: empty");
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = predictions[i] - targets[i];
    sq[i] = e * e;
  }
  const double sse = pairwise_sum(sq);
  const double tmean = mean(targets);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = targets[i] - tmean;
    sq[i] = c * c;
  }
  const double sst = pairwise_sum(sq);
  if (sst == 0) throw std::invalid_argument("metrics: zero-variance targets, R^2 undefined");
  Metrics m;
  m.l2 = std::sqrt(sse / static_cast<double>(n));
  m.r2 = 1.0 - sse / sst;
  return m;
}

}  // namespace orthsig
