#include "orthsig/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace orthsig {

Word Word::from_string(const std::string& digits) {
  std::vector<Letter> ls;
  ls.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad word string: " + digits);
    ls.push_back(static_cast<Letter>(c - '0'));
  }
  return Word(std::move(ls));
}

std::size_t Word::weighted_degree() const {
  std::size_t zeros = 0;
  for (Letter a : letters_)
    if (a == 0) ++zeros;
  return letters_.size() + zeros;
}

Word Word::prefix(std::size_t n) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
}

Word Word::suffix_from(std::size_t start) const {
  return Word(std::vector<Letter>(letters_.begin() + start, letters_.end()));
}

Word Word::append(Letter a) const {
  std::vector<Letter> ls = letters_;
  ls.push_back(a);
  return Word(std::move(ls));
}

std::size_t Word::count(Letter a) const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), a));
}

Letter Word::max_letter() const {
  Letter m = 0;
  for (Letter a : letters_) m = std::max(m, a);
  return m;
}

Word Word::stripped() const {
  std::vector<Letter> ls;
  for (Letter a : letters_)
    if (a != 0) ls.push_back(a);
  return Word(std::move(ls));
}

Word Word::binary_pattern() const {
  std::vector<Letter> ls;
  ls.reserve(letters_.size());
  for (Letter a : letters_) ls.push_back(a == 0 ? 0 : 1);
  return Word(std::move(ls));
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter a : letters_) s.push_back(static_cast<char>('0' + a));
  return s;
}

Word concat(const Word& u, const Word& v) {
  std::vector<Letter> ls = u.letters();
  ls.insert(ls.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(ls));
}

bool GradedLex::operator()(const Word& a, const Word& b) const {
  if (a.tensor_degree() != b.tensor_degree()) return a.tensor_degree() < b.tensor_degree();
  return a.letters() < b.letters();
}

bool lex_less(const Word& a, const Word& b) { return a.letters() < b.letters(); }

bool is_lyndon(const Word& w) {
  const auto& ls = w.letters();
  const std::size_t n = ls.size();
  if (n == 0) return false;
  for (Letter a : ls)
    if (a == 0) return false;
  std::vector<Letter> rot = ls;
  for (std::size_t r = 1; r < n; ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (!(ls < rot)) return false;
  }
  return true;
}

}  // namespace orthsig
