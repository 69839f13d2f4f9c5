#ifndef ORTHSIG_PATH_ENGINE_HPP
#define ORTHSIG_PATH_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "orthsig/word.hpp"

namespace orthsig {

// Deterministic per-path random stream: the state is derived from
// (seed, path index) alone, so batches can be partitioned or re-generated
// freely without changing any path.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index);
  double uniform();  // (0, 1)
  double normal();   // standard Gaussian, Box-Muller

 private:
  std::uint64_t next_raw();
  std::uint64_t state_;
  double cached_ = 0;
  bool has_cached_ = false;
};

struct PathSpec {
  int d = 1;                 // spatial dimension
  bool augment_time = true;  // prepend the 0-th time coordinate
  double horizon = 1.0;
  int steps = 100;
  int paths = 1;
  std::uint64_t seed = 0;
};

// Brownian path batch. Increments are regenerated on demand from
// (seed, path index); nothing is stored per path.
class PathBatch {
 public:
  explicit PathBatch(const PathSpec& spec);

  const PathSpec& spec() const { return spec_; }
  int dim() const { return spec_.d + (spec_.augment_time ? 1 : 0); }

  // Row-major steps x dim array; column 0 is the time increment when the
  // batch is augmented.
  std::vector<double> increments(int path_index) const;

  // Spatial terminal value of one coordinate (1-based letter).
  double terminal(int path_index, int letter) const;

 private:
  PathSpec spec_;
};

PathBatch sample_paths(const PathSpec& spec);

// Truncated tensor-series of a path: dense levels 0..N, level k has dim^k
// entries, level 0 is {1}.
struct SigTensor {
  int dim = 0;
  int truncation = 0;
  int letter_base = 0;  // 0: letters 0..dim-1 (augmented); 1: letters 1..dim
  std::vector<std::vector<double>> levels;

  double coeff(const Word& w) const;  // letters over the batch alphabet
};

// Signature of one straight segment: levels are the tensor powers of the
// increment divided by k!.
SigTensor segment_signature(const std::vector<double>& increment, int dim, int truncation);

// Chen concatenation: left becomes the signature of the concatenated path.
void chen_concat(SigTensor& left, const SigTensor& right);

// Stratonovich signature of the piecewise-linear path with the given
// increments (row-major steps x dim).
SigTensor strat_signature(const std::vector<double>& increments, int dim, int steps, int truncation);

SigTensor strat_signature(const PathBatch& batch, int path_index, int truncation);

// Flattened features, one row per path, columns indexed by words of tensor
// degree <= N in (degree, lex) order.
struct FeatureMatrix {
  std::string tag;  // "stratonovich" or "ito"
  std::vector<Word> columns;
  std::size_t paths = 0;
  std::vector<double> data;  // row-major

  double at(std::size_t path, std::size_t col) const { return data[path * columns.size() + col]; }
  std::vector<double> column(std::size_t col) const;
  std::size_t column_index(const Word& w) const;  // throws when missing
};

FeatureMatrix strat_features(const PathBatch& batch, int truncation, int threads = 1);

// Ito features through the Hoffman logarithm applied to the Stratonovich
// signature; the batch must carry the time coordinate.
FeatureMatrix ito_features(const PathBatch& batch, int truncation, int threads = 1);
FeatureMatrix ito_features_from_strat(const FeatureMatrix& strat);

// Geometric Brownian motion S_t = S0 exp(sigma B_t + (mu - sigma^2/2) t) on
// the grid of a scalar batch.
std::vector<double> gbm_path(const PathBatch& batch, int path_index, double S0, double sigma,
                             double mu);

struct GbmBatch {
  std::vector<double> terminal;
  std::vector<double> running_max;
};
GbmBatch geometric_bm(const PathBatch& batch, double S0, double sigma, double mu, int threads = 1);

// Number of words of degree <= N over an alphabet of size a: (a^{N+1}-1)/(a-1).
std::size_t feature_count(int alphabet, int truncation);

}  // namespace orthsig

#endif
