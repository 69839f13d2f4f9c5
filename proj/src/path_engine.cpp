#include "orthsig/path_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "orthsig/hoffman.hpp"
#include "orthsig/parallel.hpp"

namespace orthsig {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index) {
  // Mix the pair into one stream key; consecutive indices land far apart.
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  s = path_index ^ 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(s);
  state_ = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::uint64_t PathRng::next_raw() { return splitmix64(state_); }

double PathRng::uniform() {
  // 53-bit mantissa, shifted into (0, 1).
  const double u = static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
  return u == 0.0 ? 0x1.0p-53 : u;
}

double PathRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

PathBatch::PathBatch(const PathSpec& spec) : spec_(spec) {
  if (spec.d < 1 || spec.steps < 1 || spec.paths < 1 || spec.horizon <= 0)
    throw std::invalid_argument("PathBatch: need d >= 1, steps >= 1, paths >= 1, horizon > 0");
}

std::vector<double> PathBatch::increments(int path_index) const {
  if (path_index < 0 || path_index >= spec_.paths)
    throw std::out_of_range("PathBatch::increments: bad path index");
  const int dim_total = dim();
  const double dt = spec_.horizon / spec_.steps;
  const double vol = std::sqrt(dt);
  PathRng rng(spec_.seed, static_cast<std::uint64_t>(path_index));
  std::vector<double> out(static_cast<std::size_t>(spec_.steps) * static_cast<std::size_t>(dim_total));
  for (int s = 0; s < spec_.steps; ++s) {
    double* row = out.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(dim_total);
    int col = 0;
    if (spec_.augment_time) row[col++] = dt;
    for (int k = 0; k < spec_.d; ++k) row[col++] = vol * rng.normal();
  }
  return out;
}

double PathBatch::terminal(int path_index, int letter) const {
  const auto inc = increments(path_index);
  const int dim_total = dim();
  const int col = spec_.augment_time ? letter : letter - 1;
  double sum = 0;
  for (int s = 0; s < spec_.steps; ++s)
    sum += inc[static_cast<std::size_t>(s) * static_cast<std::size_t>(dim_total) +
               static_cast<std::size_t>(col)];
  return sum;
}

PathBatch sample_paths(const PathSpec& spec) { return PathBatch(spec); }

double SigTensor::coeff(const Word& w) const {
  const int n = static_cast<int>(w.tensor_degree());
  if (n > truncation) throw std::out_of_range("SigTensor::coeff: word degree beyond truncation");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.tensor_degree(); ++i) {
    const int slot = w[i] - letter_base;
    if (slot < 0 || slot >= dim) throw std::out_of_range("SigTensor::coeff: letter outside alphabet");
    idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(slot);
  }
  return levels[static_cast<std::size_t>(n)][idx];
}

SigTensor segment_signature(const std::vector<double>& increment, int dim, int truncation) {
  SigTensor sig;
  sig.dim = dim;
  sig.truncation = truncation;
  sig.levels.resize(static_cast<std::size_t>(truncation) + 1);
  sig.levels[0] = {1.0};
  std::size_t size = 1;
  for (int k = 1; k <= truncation; ++k) {
    size *= static_cast<std::size_t>(dim);
    auto& lvl = sig.levels[static_cast<std::size_t>(k)];
    lvl.resize(size);
    const auto& prev = sig.levels[static_cast<std::size_t>(k - 1)];
    const double inv = 1.0 / k;
    std::size_t pos = 0;
    for (double p : prev)
      for (int a = 0; a < dim; ++a) lvl[pos++] = p * increment[static_cast<std::size_t>(a)] * inv;
  }
  return sig;
}

void chen_concat(SigTensor& left, const SigTensor& right) {
  const int N = left.truncation;
  for (int n = N; n >= 1; --n) {
    auto& dest = left.levels[static_cast<std::size_t>(n)];
    // Cross terms a_k (x) b_{n-k} for 0 < k < n.
    for (int k = n - 1; k >= 1; --k) {
      const auto& a = left.levels[static_cast<std::size_t>(k)];
      const auto& b = right.levels[static_cast<std::size_t>(n - k)];
      std::size_t pos = 0;
      for (double av : a)
        for (double bv : b) dest[pos++] += av * bv;
    }
    const auto& b = right.levels[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < b.size(); ++i) dest[i] += b[i];
  }
}

SigTensor strat_signature(const std::vector<double>& increments, int dim, int steps, int truncation) {
  std::vector<double> seg(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) seg[static_cast<std::size_t>(a)] = increments[static_cast<std::size_t>(a)];
  SigTensor sig = segment_signature(seg, dim, truncation);
  for (int s = 1; s < steps; ++s) {
    for (int a = 0; a < dim; ++a)
      seg[static_cast<std::size_t>(a)] =
          increments[static_cast<std::size_t>(s) * static_cast<std::size_t>(dim) +
                     static_cast<std::size_t>(a)];
    chen_concat(sig, segment_signature(seg, dim, truncation));
  }
  return sig;
}

SigTensor strat_signature(const PathBatch& batch, int path_index, int truncation) {
  SigTensor sig =
      strat_signature(batch.increments(path_index), batch.dim(), batch.spec().steps, truncation);
  sig.letter_base = batch.spec().augment_time ? 0 : 1;
  return sig;
}

std::vector<double> FeatureMatrix::column(std::size_t col) const {
  std::vector<double> out(paths);
  for (std::size_t p = 0; p < paths; ++p) out[p] = at(p, col);
  return out;
}

std::size_t FeatureMatrix::column_index(const Word& w) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == w) return c;
  throw std::out_of_range("FeatureMatrix: no column for word " + w.to_string());
}

namespace {

// Columns for a batch: words over the batch alphabet. For augmented batches
// letters are {0..d} with 0 the time letter mapped to tensor slot 0; without
// augmentation letters are {1..d} mapped to slots {0..d-1}.
std::vector<Word> batch_columns(int d, bool augmented, int truncation) {
  return words_up_to_degree(d, truncation, augmented);
}

}  // namespace

FeatureMatrix strat_features(const PathBatch& batch, int truncation, int threads) {
  FeatureMatrix fm;
  fm.tag = "stratonovich";
  fm.columns = batch_columns(batch.spec().d, batch.spec().augment_time, truncation);
  fm.paths = static_cast<std::size_t>(batch.spec().paths);
  fm.data.resize(fm.paths * fm.columns.size());
  parallel_for(fm.paths, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const SigTensor sig = strat_signature(batch, static_cast<int>(p), truncation);
      double* row = fm.data.data() + p * fm.columns.size();
      std::size_t c = 0;
      for (int n = 0; n <= truncation; ++n) {
        const auto& lvl = sig.levels[static_cast<std::size_t>(n)];
        for (double v : lvl) row[c++] = v;
      }
    }
  });
  return fm;
}

FeatureMatrix ito_features_from_strat(const FeatureMatrix& strat) {
  FeatureMatrix fm;
  fm.tag = "ito";
  fm.columns = strat.columns;
  fm.paths = strat.paths;
  fm.data.assign(strat.data.size(), 0.0);
  // Sparse triangular map: column w of the Ito features reads the
  // Stratonovich coordinates of hoffman_log(w).
  std::vector<std::vector<std::pair<std::size_t, double>>> mapping(fm.columns.size());
  for (std::size_t c = 0; c < fm.columns.size(); ++c) {
    const TensorPoly img = hoffman_log(fm.columns[c]);
    for (const auto& [u, coeff] : img.terms())
      mapping[c].emplace_back(strat.column_index(u), rat_to_double(coeff));
  }
  for (std::size_t p = 0; p < fm.paths; ++p) {
    const double* src = strat.data.data() + p * fm.columns.size();
    double* dst = fm.data.data() + p * fm.columns.size();
    for (std::size_t c = 0; c < fm.columns.size(); ++c) {
      double acc = 0;
      for (const auto& [s, coeff] : mapping[c]) acc += coeff * src[s];
      dst[c] = acc;
    }
  }
  return fm;
}

FeatureMatrix ito_features(const PathBatch& batch, int truncation, int threads) {
  if (!batch.spec().augment_time)
    throw std::invalid_argument("ito_features: batch must be time-augmented (needs the 0 letter)");
  FeatureMatrix strat = strat_features(batch, truncation, threads);
  return ito_features_from_strat(strat);
}

std::vector<double> gbm_path(const PathBatch& batch, int path_index, double S0, double sigma,
                             double mu) {
  if (sigma < 0) throw std::invalid_argument("gbm_path: sigma >= 0");
  if (batch.spec().d != 1) throw std::invalid_argument("gbm_path: scalar spatial dimension required");
  const auto inc = batch.increments(path_index);
  const int dim = batch.dim();
  const int bcol = batch.spec().augment_time ? 1 : 0;
  const double dt = batch.spec().horizon / batch.spec().steps;
  std::vector<double> out(static_cast<std::size_t>(batch.spec().steps) + 1);
  out[0] = S0;
  double b = 0, t = 0;
  for (int s = 0; s < batch.spec().steps; ++s) {
    b += inc[static_cast<std::size_t>(s) * static_cast<std::size_t>(dim) +
             static_cast<std::size_t>(bcol)];
    t += dt;
    out[static_cast<std::size_t>(s) + 1] = S0 * std::exp(sigma * b + (mu - 0.5 * sigma * sigma) * t);
  }
  return out;
}

GbmBatch geometric_bm(const PathBatch& batch, double S0, double sigma, double mu, int threads) {
  if (sigma < 0) throw std::invalid_argument("geometric_bm: sigma >= 0");
  GbmBatch out;
  out.terminal.resize(static_cast<std::size_t>(batch.spec().paths));
  out.running_max.resize(static_cast<std::size_t>(batch.spec().paths));
  parallel_for(out.terminal.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto series = gbm_path(batch, static_cast<int>(p), S0, sigma, mu);
      double mx = series[0];
      for (double v : series) mx = std::max(mx, v);
      out.terminal[p] = series.back();
      out.running_max[p] = mx;
    }
  });
  return out;
}

std::size_t feature_count(int alphabet, int truncation) {
  std::size_t total = 0, level = 1;
  for (int n = 0; n <= truncation; ++n) {
    total += level;
    level *= static_cast<std::size_t>(alphabet);
  }
  return total;
}

}  // namespace orthsig
