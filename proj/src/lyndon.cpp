#include "orthsig/lyndon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orthsig {

std::vector<std::vector<Word>> lyndon_words(int d, int max_len) {
  if (d < 1 || max_len < 1) throw std::invalid_argument("lyndon_words: d, max_len >= 1");
  std::vector<std::vector<Word>> out(static_cast<std::size_t>(max_len));
  // Duval's algorithm over the alphabet {1,...,d}.
  std::vector<Letter> w{1};
  while (!w.empty()) {
    out[w.size() - 1].push_back(Word(w));
    std::size_t k = w.size();
    while (w.size() < static_cast<std::size_t>(max_len)) w.push_back(w[w.size() - k]);
    while (!w.empty() && w.back() == static_cast<Letter>(d)) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  for (auto& group : out) std::sort(group.begin(), group.end(), lex_less);
  return out;
}

namespace {

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::uint64_t witt_number(int d, int m) {
  std::int64_t sum = 0;
  for (int k = 1; k <= m; ++k)
    if (m % k == 0) sum += moebius(k) * static_cast<std::int64_t>(ipow(d, m / k));
  return static_cast<std::uint64_t>(sum / m);
}

RadfordMonomial::RadfordMonomial(std::vector<Word> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (!is_lyndon(f)) throw std::invalid_argument("RadfordMonomial: factor is not Lyndon: " + f.to_string());
  std::sort(factors_.begin(), factors_.end(), GradedLex{});
}

std::size_t RadfordMonomial::tensor_degree() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.tensor_degree();
  return n;
}

RadfordMonomial RadfordMonomial::times(const Word& lyndon) const {
  std::vector<Word> fs = factors_;
  fs.push_back(lyndon);
  return RadfordMonomial(std::move(fs));
}

bool RadfordMonomial::operator<(const RadfordMonomial& o) const {
  if (tensor_degree() != o.tensor_degree()) return tensor_degree() < o.tensor_degree();
  if (factors_.size() != o.factors_.size()) return factors_.size() < o.factors_.size();
  return std::lexicographical_compare(factors_.begin(), factors_.end(), o.factors_.begin(),
                                      o.factors_.end(), GradedLex{});
}

std::string RadfordMonomial::to_string() const {
  if (factors_.empty()) return "[]";
  std::string s;
  for (const auto& f : factors_) s += "[" + f.to_string() + "]";
  return s;
}

TensorPoly radford_expand(const RadfordMonomial& m) {
  TensorPoly p = TensorPoly::one();
  for (const auto& f : m.factors()) p = shuffle(p, TensorPoly(f));
  return p;
}

namespace {

// Enumerates multisets of Lyndon words (drawn from gens[pos:]) of total
// length n, appending to out.
void enumerate(const std::vector<Word>& gens, std::size_t pos, int n, std::vector<Word>& stack,
               std::vector<RadfordMonomial>& out) {
  if (n == 0) {
    out.emplace_back(stack);
    return;
  }
  for (std::size_t i = pos; i < gens.size(); ++i) {
    const int len = static_cast<int>(gens[i].tensor_degree());
    if (len > n) continue;
    stack.push_back(gens[i]);
    enumerate(gens, i, n - len, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<RadfordMonomial> radford_monomials(int d, int n) {
  if (n < 0) throw std::invalid_argument("radford_monomials: n >= 0");
  auto by_len = lyndon_words(d, std::max(n, 1));
  std::vector<Word> gens;
  for (const auto& group : by_len) gens.insert(gens.end(), group.begin(), group.end());
  std::vector<RadfordMonomial> out;
  std::vector<Word> stack;
  enumerate(gens, 0, n, stack, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace orthsig
