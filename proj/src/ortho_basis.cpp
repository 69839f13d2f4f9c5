#include "orthsig/ortho_basis.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "orthsig/hoffman.hpp"
#include "orthsig/rat_matrix.hpp"

namespace orthsig {

const OrthoBasisEntry* OrthoBasis::find(const Word& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

TensorPoly block_orthogonalize(const Word& w, const InnerProduct& inner,
                               const std::vector<Word>& lower_basis) {
  const std::size_t m = lower_basis.size();
  RatMatrix gram(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const TensorPoly pi(lower_basis[i]);
    for (std::size_t j = i; j < m; ++j) {
      gram.at(i, j) = inner(pi, TensorPoly(lower_basis[j]));
      gram.at(j, i) = gram.at(i, j);
    }
  }
  std::vector<Rat> rhs(m);
  const TensorPoly pw(w);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = inner(pw, TensorPoly(lower_basis[i]));
  std::vector<Rat> lambda;
  try {
    lambda = gram.solve(rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("block_orthogonalize: degenerate inner product; no canonical complement chosen");
  }
  TensorPoly out(w);
  for (std::size_t i = 0; i < m; ++i) out.add_term(lower_basis[i], -lambda[i]);
  return out;
}

TensorPoly block_orthogonalize_fawcett(const Word& w, int d, const TimeHorizon& horizon) {
  const int n = static_cast<int>(w.tensor_degree());
  std::vector<Word> lower = words_up_to_degree(d, n - 1, /*include_time_letter=*/false);
  return block_orthogonalize(w, make_inner_fawcett(horizon), lower);
}

OrthoBasis gram_schmidt(const std::vector<Word>& words, const InnerProduct& inner) {
  OrthoBasis basis;
  basis.inner_tag = "custom";
  for (const Word& w : words) {
    TensorPoly p(w);
    for (const auto& prev : basis.entries) {
      if (prev.sq_norm == 0) continue;  // skip rule of the orthogonalisation
      const Rat c = inner(TensorPoly(w), prev.poly) / prev.sq_norm;
      if (c != 0) p -= c * prev.poly;
    }
    Rat nrm = inner(p, p);
    basis.entries.push_back(OrthoBasisEntry{w, std::move(p), std::move(nrm)});
  }
  return basis;
}

namespace {

TensorPoly reduce_word(const Word& w, const Rat& T, std::map<Word, TensorPoly, GradedLex>& memo) {
  if (w.empty() || w.back() != 0) return TensorPoly(w);
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  const Word u = w.prefix(w.tensor_degree() - 1);
  // 0 qshuffle u = all single-0 insertions into u; the bracket never fires.
  TensorPoly q = quasi_shuffle(Word(std::vector<Letter>{0}), u);
  const Rat mu = q.coeff(w);
  q.add_term(w, -mu);
  // As Ito-signature functionals: mu*w = T*u - (other insertions).
  TensorPoly out = reduce_word(u, T, memo) * T;
  for (const auto& [v, c] : q.terms()) out -= c * reduce_word(v, T, memo);
  out *= Rat(1) / mu;
  memo.emplace(w, out);
  return out;
}

}  // namespace

TensorPoly reduce_trailing_zeros(const Word& w, const TimeHorizon& horizon) {
  std::map<Word, TensorPoly, GradedLex> memo;
  return reduce_word(w, horizon.T, memo);
}

std::vector<Word> binary_patterns_up_to(int max_weighted_degree) {
  // Pattern with k ones and i zeros has weighted degree k + 2i.
  std::vector<Word> out{Word{}};
  struct Key {
    std::size_t wdeg, zeros;
    Word w;
  };
  std::vector<Key> keys;
  for (int k = 1; k <= max_weighted_degree; ++k) {
    for (int i = 0; k + 2 * i <= max_weighted_degree; ++i) {
      // Enumerate zero profiles (i_1,...,i_k) summing to i.
      std::vector<std::size_t> profile(static_cast<std::size_t>(k), 0);
      std::vector<Word> block;
      auto emit = [&]() {
        std::vector<Letter> ls;
        for (int r = 0; r < k; ++r) {
          ls.insert(ls.end(), profile[static_cast<std::size_t>(r)], Letter{0});
          ls.push_back(Letter{1});
        }
        block.push_back(Word(std::move(ls)));
      };
      // Recursive composition enumeration.
      auto rec = [&](auto&& self, int r, int left) -> void {
        if (r == k - 1) {
          profile[static_cast<std::size_t>(r)] = static_cast<std::size_t>(left);
          emit();
          return;
        }
        for (int take = 0; take <= left; ++take) {
          profile[static_cast<std::size_t>(r)] = static_cast<std::size_t>(take);
          self(self, r + 1, left - take);
        }
      };
      rec(rec, 0, i);
      std::sort(block.begin(), block.end(), lex_less);
      for (auto& w : block)
        keys.push_back(Key{static_cast<std::size_t>(k + 2 * i), static_cast<std::size_t>(i), w});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.wdeg != b.wdeg) return a.wdeg < b.wdeg;
    if (a.zeros != b.zeros) return a.zeros < b.zeros;
    return lex_less(a.w, b.w);
  });
  for (auto& k : keys) out.push_back(std::move(k.w));
  return out;
}

OrthoBasis ito_orthogonal_basis(int max_weighted_degree, const TimeHorizon& horizon) {
  OrthoBasis basis;
  basis.inner_tag = "binary-ito";
  basis.d = 1;
  basis.horizon = horizon.T;

  auto pattern_inner = [&horizon](const Word& a, const TensorPoly& p) {
    Rat s = 0;
    for (const auto& [w, c] : p.terms()) s += c * binary_inner(a, w, horizon);
    return s;
  };

  // Classes share the 1-count; Gram-Schmidt runs inside each class in the
  // order "fewer zeros first, then lexicographic". Entries land in the basis
  // in global (weighted degree, zeros, lex) order afterwards.
  std::map<std::size_t, std::vector<OrthoBasisEntry>> classes;
  for (const Word& w : binary_patterns_up_to(max_weighted_degree)) {
    const std::size_t ones = w.count(1);
    auto& cls = classes[ones];
    TensorPoly p(w);
    for (const auto& prev : cls) {
      const Rat c = pattern_inner(w, prev.poly) / prev.sq_norm;
      if (c != 0) p -= c * prev.poly;
    }
    Rat nrm = pattern_inner(w, p);  // = (p,p) by orthogonality to predecessors
    if (nrm <= 0)
      throw std::runtime_error("ito_orthogonal_basis: non-positive norm at " + w.to_string());
    cls.push_back(OrthoBasisEntry{w, std::move(p), std::move(nrm)});
  }
  for (auto& [ones, cls] : classes)
    for (auto& e : cls) basis.entries.push_back(std::move(e));
  std::sort(basis.entries.begin(), basis.entries.end(), [](const OrthoBasisEntry& a, const OrthoBasisEntry& b) {
    if (a.key.weighted_degree() != b.key.weighted_degree())
      return a.key.weighted_degree() < b.key.weighted_degree();
    if (a.key.count(0) != b.key.count(0)) return a.key.count(0) < b.key.count(0);
    return lex_less(a.key, b.key);
  });
  return basis;
}

TensorPoly lift_pattern(const TensorPoly& pattern_poly, const std::vector<Letter>& letters) {
  for (Letter a : letters)
    if (a == 0) throw std::invalid_argument("lift_pattern: letters must be nonzero");
  TensorPoly out;
  for (const auto& [w, c] : pattern_poly.terms()) {
    if (w.count(1) != letters.size())
      throw std::invalid_argument("lift_pattern: 1-count of term " + w.to_string() +
                                  " does not match letter count");
    std::vector<Letter> ls;
    ls.reserve(w.tensor_degree());
    std::size_t next = 0;
    for (std::size_t i = 0; i < w.tensor_degree(); ++i)
      ls.push_back(w[i] == 0 ? Letter{0} : letters[next++]);
    out.add_term(Word(std::move(ls)), c);
  }
  return out;
}

OrthoBasis lifted_ito_basis(int d, int max_tensor_degree, const TimeHorizon& horizon) {
  OrthoBasis basis;
  basis.inner_tag = "ito";
  basis.d = d;
  basis.horizon = horizon.T;
  // Binary basis needs weighted degree up to 2*max_tensor_degree (a word of
  // degree n has at most n - 1 zeros, pattern weighted degree <= 2n - 1).
  OrthoBasis binary = ito_orthogonal_basis(2 * max_tensor_degree, horizon);

  struct Key {
    std::size_t wdeg, zeros;
    Word w;
  };
  std::vector<Key> keys;
  for (const Word& w : words_up_to_degree(d, max_tensor_degree, /*include_time_letter=*/true)) {
    if (!w.empty() && w.back() == 0) continue;  // nullspace complement only
    keys.push_back(Key{w.weighted_degree(), w.count(0), w});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.wdeg != b.wdeg) return a.wdeg < b.wdeg;
    if (a.zeros != b.zeros) return a.zeros < b.zeros;
    return lex_less(a.w, b.w);
  });
  for (const auto& k : keys) {
    if (k.w.empty()) {
      basis.entries.push_back(OrthoBasisEntry{k.w, TensorPoly::one(), 1});
      continue;
    }
    const Word pattern = k.w.binary_pattern();
    const OrthoBasisEntry* bin = binary.find(pattern);
    if (bin == nullptr) throw std::runtime_error("lifted_ito_basis: missing pattern " + pattern.to_string());
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < k.w.tensor_degree(); ++i)
      if (k.w[i] != 0) letters.push_back(k.w[i]);
    basis.entries.push_back(OrthoBasisEntry{k.w, lift_pattern(bin->poly, letters), bin->sq_norm});
  }
  return basis;
}

}  // namespace orthsig
