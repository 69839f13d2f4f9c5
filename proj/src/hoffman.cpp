#include "orthsig/hoffman.hpp"

namespace orthsig {

namespace {

// Expands sum over disjoint mergeable adjacent pairs with the given per-merge
// weight. Recursion over the first position: either keep letter i, or merge
// (i, i+1) when both carry the same nonzero letter.
void expand_merges(const Word& w, std::size_t pos, std::vector<Letter>& acc, const Rat& coeff,
                   const Rat& merge_weight, TensorPoly& out) {
  const std::size_t n = w.tensor_degree();
  if (pos == n) {
    out.add_term(Word(acc), coeff);
    return;
  }
  acc.push_back(w[pos]);
  expand_merges(w, pos + 1, acc, coeff, merge_weight, out);
  acc.pop_back();
  if (pos + 1 < n && w[pos] == w[pos + 1] && w[pos] != 0) {
    acc.push_back(0);
    expand_merges(w, pos + 2, acc, coeff * merge_weight, merge_weight, out);
    acc.pop_back();
  }
}

TensorPoly merge_expansion(const Word& w, const Rat& merge_weight) {
  TensorPoly out;
  std::vector<Letter> acc;
  acc.reserve(w.tensor_degree());
  expand_merges(w, 0, acc, 1, merge_weight, out);
  return out;
}

}  // namespace

TensorPoly hoffman_exp(const Word& w) { return merge_expansion(w, Rat(1, 2)); }

TensorPoly hoffman_exp(const TensorPoly& p) {
  TensorPoly out;
  for (const auto& [w, c] : p.terms()) {
    TensorPoly e = hoffman_exp(w);
    e *= c;
    out += e;
  }
  return out;
}

TensorPoly hoffman_log(const Word& w) { return merge_expansion(w, Rat(-1, 2)); }

TensorPoly hoffman_log(const TensorPoly& p) {
  TensorPoly out;
  for (const auto& [w, c] : p.terms()) {
    TensorPoly e = hoffman_log(w);
    e *= c;
    out += e;
  }
  return out;
}

std::vector<Word> words_up_to_degree(int d, int max_degree, bool include_time_letter) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  const Letter lo = include_time_letter ? 0 : 1;
  for (int n = 1; n <= max_degree; ++n) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (Letter a = lo; a <= static_cast<Letter>(d); ++a) out.push_back(out[i].append(a));
    level_begin = level_end;
  }
  return out;
}

namespace {

ConversionMatrix build_conversion(int d, int truncation, bool is_log) {
  ConversionMatrix m;
  m.d = d;
  m.truncation = truncation;
  m.is_log = is_log;
  for (const Word& w : words_up_to_degree(d, truncation, /*include_time_letter=*/true))
    m.columns[w] = is_log ? hoffman_log(w) : hoffman_exp(w);
  return m;
}

}  // namespace

ConversionMatrix strat_to_ito_map(int d, int truncation) { return build_conversion(d, truncation, true); }

ConversionMatrix ito_to_strat_map(int d, int truncation) { return build_conversion(d, truncation, false); }

}  // namespace orthsig
