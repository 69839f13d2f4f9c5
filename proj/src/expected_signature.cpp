#include "orthsig/expected_signature.hpp"

#include <stdexcept>

namespace orthsig {

namespace {

// T^n/(2^n n!) when the word is a concatenation of doubled letters, else 0.
Rat fawcett_word(const Word& w, const Rat& T) {
  const std::size_t len = w.tensor_degree();
  for (std::size_t i = 0; i < len; ++i)
    if (w[i] == 0)
      throw std::invalid_argument("fawcett_pair: word contains the time letter: " + w.to_string());
  if (len % 2 != 0) return 0;
  const std::size_t n = len / 2;
  for (std::size_t i = 0; i < n; ++i)
    if (w[2 * i] != w[2 * i + 1]) return 0;
  return rat_pow(T, n) / (rat_pow(2, n) * rat_factorial(n));
}

}  // namespace

Rat fawcett_pair(const TensorPoly& ell, const TimeHorizon& horizon) {
  Rat sum = 0;
  for (const auto& [w, c] : ell.terms()) sum += c * fawcett_word(w, horizon.T);
  return sum;
}

Rat inner_fawcett(const TensorPoly& u, const TensorPoly& v, const TimeHorizon& horizon) {
  return fawcett_pair(shuffle(u, v), horizon);
}

Rat ito_pair(const TensorPoly& ell, const TimeHorizon& horizon) {
  Rat sum = 0;
  for (const auto& [w, c] : ell.terms()) {
    bool all_zero = true;
    for (std::size_t i = 0; i < w.tensor_degree(); ++i)
      if (w[i] != 0) {
        all_zero = false;
        break;
      }
    if (!all_zero) continue;
    const std::size_t n = w.tensor_degree();
    sum += c * rat_pow(horizon.T, n) / rat_factorial(n);
  }
  return sum;
}

Rat inner_ito(const TensorPoly& u, const TensorPoly& v, const TimeHorizon& horizon) {
  return ito_pair(quasi_shuffle(u, v), horizon);
}

std::vector<std::size_t> zero_profile(const Word& pattern) {
  std::vector<std::size_t> profile;
  std::size_t run = 0;
  for (std::size_t i = 0; i < pattern.tensor_degree(); ++i) {
    if (pattern[i] == 0) {
      ++run;
    } else {
      profile.push_back(run);
      run = 0;
    }
  }
  return profile;
}

Rat binary_inner(const Word& u, const Word& v, const TimeHorizon& horizon) {
  auto check = [](const Word& w) {
    if (w.empty()) return;
    for (std::size_t i = 0; i < w.tensor_degree(); ++i)
      if (w[i] > 1) throw std::invalid_argument("binary_inner: not a binary pattern: " + w.to_string());
    if (w.back() != 1)
      throw std::invalid_argument("binary_inner: pattern ends in 0: " + w.to_string());
  };
  check(u);
  check(v);
  const auto iu = zero_profile(u);
  const auto iv = zero_profile(v);
  if (iu.size() != iv.size()) return 0;  // different 1-counts: different chaos
  const std::size_t k = iu.size();
  std::size_t i = 0, j = 0;
  Rat prod = 1;
  for (std::size_t r = 0; r < k; ++r) {
    i += iu[r];
    j += iv[r];
    prod *= rat_binomial(iu[r] + iv[r], iu[r]);
  }
  return prod * rat_pow(horizon.T, i + j + k) / rat_factorial(i + j + k);
}

InnerProduct make_inner_fawcett(TimeHorizon horizon) {
  return [horizon](const TensorPoly& u, const TensorPoly& v) { return inner_fawcett(u, v, horizon); };
}

InnerProduct make_inner_ito(TimeHorizon horizon) {
  return [horizon](const TensorPoly& u, const TensorPoly& v) { return inner_ito(u, v, horizon); };
}

GramBlock gram_block(const std::vector<TensorPoly>& basis_u, const std::vector<TensorPoly>& basis_v,
                     const InnerProduct& inner) {
  GramBlock g;
  g.entries = RatMatrix(basis_u.size(), basis_v.size());
  for (const auto& p : basis_u) g.row_labels.push_back(p.to_string());
  for (const auto& p : basis_v) g.col_labels.push_back(p.to_string());
  const bool same = basis_u.size() == basis_v.size();
  for (std::size_t i = 0; i < basis_u.size(); ++i)
    for (std::size_t j = 0; j < basis_v.size(); ++j) {
      if (same && j < i && basis_u[j] == basis_v[j] && basis_u[i] == basis_v[i]) {
        g.entries.at(i, j) = g.entries.at(j, i);  // symmetric case
        continue;
      }
      g.entries.at(i, j) = inner(basis_u[i], basis_v[j]);
    }
  return g;
}

}  // namespace orthsig
