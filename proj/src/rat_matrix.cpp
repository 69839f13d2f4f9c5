#include "orthsig/rat_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace orthsig {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in product");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rat& b = o.at(k, j);
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMatrix: shape mismatch");
  RatMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

bool RatMatrix::is_zero() const {
  for (const Rat& v : data_)
    if (v != 0) return false;
  return true;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::size_t RatMatrix::rank() const {
  RowEchelon ech(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::vector<Rat> row(cols_);
    for (std::size_t j = 0; j < cols_; ++j) row[j] = at(i, j);
    ech.add_row(std::move(row));
  }
  return ech.rank();
}

namespace {

// Gauss-Jordan on [A | B]; returns B' with A reduced to I. Throws on singular A.
RatMatrix gauss_jordan(RatMatrix a, RatMatrix b, const char* what) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("gauss_jordan: shape");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) throw std::runtime_error(what);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b.at(piv, j), b.at(col, j));
    }
    const Rat inv = Rat(1) / a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) a.at(col, j) *= inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b.at(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Rat f = a.at(i, col);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b.at(i, j) -= f * b.at(col, j);
    }
  }
  return b;
}

}  // namespace

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: square required");
  return gauss_jordan(*this, identity(rows_), "inverse: singular matrix");
}

std::vector<Rat> RatMatrix::solve(const std::vector<Rat>& b) const {
  if (rows_ != cols_ || b.size() != rows_) throw std::invalid_argument("solve: shape");
  RatMatrix rhs(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) rhs.at(i, 0) = b[i];
  RatMatrix x = gauss_jordan(*this, rhs, "solve: singular matrix");
  std::vector<Rat> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = x.at(i, 0);
  return out;
}

std::optional<std::vector<Rat>> RatMatrix::solve_consistent(const std::vector<Rat>& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve_consistent: shape");
  // Echelon on [A | b], then back-substitute with free variables at zero.
  RowEchelon ech(cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::vector<Rat> row(cols_ + 1);
    for (std::size_t j = 0; j < cols_; ++j) row[j] = at(i, j);
    row[cols_] = b[i];
    ech.add_row(std::move(row));
  }
  std::vector<Rat> x(cols_, 0);
  std::vector<const RowEchelon::StoredRow*> rows;
  for (const auto& r : ech.rows()) {
    if (r.pivot_col == cols_) return std::nullopt;  // 0 = nonzero
    rows.push_back(&r);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto* a, const auto* b) { return a->pivot_col > b->pivot_col; });
  for (const auto* r : rows) {
    Rat rhs = r->values[cols_];
    for (std::size_t j = r->pivot_col + 1; j < cols_; ++j)
      if (r->values[j] != 0) rhs -= r->values[j] * x[j];
    x[r->pivot_col] = rhs / r->values[r->pivot_col];
  }
  return x;
}

RatMatrix RatMatrix::left_inverse() const {
  RatMatrix gram = transpose() * *this;
  RatMatrix inv = gram.inverse();  // throws if column rank deficient
  return inv * transpose();
}

bool RatMatrix::is_positive_semidefinite() const {
  if (!is_symmetric()) return false;
  RatMatrix a = *this;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Rat& p = a.at(k, k);
    if (p < 0) return false;
    if (p == 0) {
      // Degenerate direction: whole row and column must vanish.
      for (std::size_t j = k; j < n; ++j)
        if (a.at(k, j) != 0 || a.at(j, k) != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rat f = a.at(i, k) / p;
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
    for (std::size_t j = k + 1; j < n; ++j) a.at(k, j) = 0;
  }
  return true;
}

bool RatMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  RatMatrix a = *this;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Rat& p = a.at(k, k);
    if (p <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rat f = a.at(i, k) / p;
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return true;
}

bool RowEchelon::add_row(std::vector<Rat> row, std::size_t original_index) {
  if (row.size() != cols_) throw std::invalid_argument("RowEchelon: row width");
  std::map<std::size_t, Rat> comb;
  if (track_) comb[original_index] = 1;
  for (const auto& stored : rows_) {
    const std::size_t pc = stored.pivot_col;
    if (row[pc] == 0) continue;
    const Rat f = row[pc] / stored.values[pc];
    for (std::size_t j = pc; j < cols_; ++j)
      if (stored.values[j] != 0) row[j] -= f * stored.values[j];
    if (track_)
      for (const auto& [idx, c] : stored.combination) {
        auto [it, inserted] = comb.emplace(idx, -f * c);
        if (!inserted) {
          it->second -= f * c;
          if (it->second == 0) comb.erase(it);
        }
      }
  }
  std::size_t pc = 0;
  while (pc < cols_ && row[pc] == 0) ++pc;
  if (pc == cols_) return false;
  rows_.push_back(StoredRow{std::move(row), pc, std::move(comb)});
  pivots_.push_back(pc);
  return true;
}

}  // namespace orthsig
