#ifndef ORTHSIG_WORD_HPP
#define ORTHSIG_WORD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace orthsig {

// A letter of the alphabet {0,1,...,d}. 0 is the time letter.
using Letter = std::uint8_t;

// A word over {0,...,d}. Tensor degree is the letter count; the weighted
// degree counts the time letter twice.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word from_string(const std::string& digits);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t tensor_degree() const { return letters_.size(); }
  std::size_t weighted_degree() const;
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }

  Word prefix(std::size_t n) const;             // first n letters
  Word suffix_from(std::size_t start) const;    // letters [start, end)
  Word append(Letter a) const;
  std::size_t count(Letter a) const;
  Letter max_letter() const;                    // 0 for the empty word

  // Letters equal to 0 removed.
  Word stripped() const;
  // Non-zero letters replaced by 1.
  Word binary_pattern() const;

  std::string to_string() const;  // digits, empty word rendered ""

  bool operator==(const Word& o) const = default;
  bool operator!=(const Word& o) const = default;

 private:
  std::vector<Letter> letters_;
};

Word concat(const Word& u, const Word& v);

// Graded lexicographic order: tensor degree first, then lexicographic with
// 0 < 1 < ... < d. Used by every sorted container of words in the library.
struct GradedLex {
  bool operator()(const Word& a, const Word& b) const;
};

// Plain lexicographic order (0 < 1 < ... < d), prefixes first.
bool lex_less(const Word& a, const Word& b);

// True iff w is nonempty, avoids the letter 0, and is strictly smaller than
// all of its proper rotations.
bool is_lyndon(const Word& w);

}  // namespace orthsig

#endif
