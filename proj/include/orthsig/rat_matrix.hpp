#ifndef ORTHSIG_RAT_MATRIX_HPP
#define ORTHSIG_RAT_MATRIX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "orthsig/rational.hpp"

namespace orthsig {

// Dense exact-rational matrix with the elimination routines the library
// needs: rank, solve, inverse. Sizes stay at desk scale (a few hundred), so
// plain fraction arithmetic with partial pivoting is enough.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  bool is_zero() const;
  bool is_symmetric() const;

  std::size_t rank() const;
  RatMatrix inverse() const;  // throws on singular

  // Solves A x = b for square A; throws on singular.
  std::vector<Rat> solve(const std::vector<Rat>& b) const;

  // Least-squares-free exact solve: returns a solution of A x = b if the
  // system is consistent (any shape), nullopt otherwise.
  std::optional<std::vector<Rat>> solve_consistent(const std::vector<Rat>& b) const;

  // Left inverse D^T with D^T A = I; requires full column rank (throws otherwise).
  RatMatrix left_inverse() const;

  // PSD certification for symmetric matrices: eliminates pivots in order,
  // requiring each pivot > 0 or a fully zero row/column (degenerate
  // direction, skipped).
  bool is_positive_semidefinite() const;
  bool is_positive_definite() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// Streaming row-echelon accumulator. Rows are fed one at a time; the rank is
// maintained incrementally. Optionally tracks each stored row as an exact
// combination of the original rows, which yields Farkas certificates.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols, bool track_combinations = false)
      : cols_(cols), track_(track_combinations) {}

  // Feeds a row (dense). Returns true if the rank increased.
  bool add_row(std::vector<Rat> row, std::size_t original_index = 0);

  std::size_t rank() const { return pivots_.size(); }

  struct StoredRow {
    std::vector<Rat> values;
    std::size_t pivot_col;
    std::map<std::size_t, Rat> combination;  // over original row indices
  };
  const std::vector<StoredRow>& rows() const { return rows_; }

 private:
  std::size_t cols_;
  bool track_;
  std::vector<StoredRow> rows_;
  std::vector<std::size_t> pivots_;  // pivot column per stored row
};

}  // namespace orthsig

#endif
