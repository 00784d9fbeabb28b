#include "gsact/linalg.hpp"

#include <cassert>

namespace gsact {

RFMatrix::RFMatrix(ContextPtr ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  data_.assign(static_cast<size_t>(rows) * cols, RationalFunction::zero(ctx_));
}

RFMatrix RFMatrix::identity(ContextPtr ctx, int n) {
  RFMatrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RationalFunction::one(ctx);
  return m;
}

RFMatrix RFMatrix::operator*(const RFMatrix& o) const {
  assert(cols_ == o.rows_);
  RFMatrix r(ctx_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    }
  return r;
}

RFMatrix RFMatrix::operator+(const RFMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RFMatrix r(ctx_, rows_, cols_);
  for (int i = 0; i < rows_ * cols_; ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

RFMatrix RFMatrix::operator-(const RFMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RFMatrix r(ctx_, rows_, cols_);
  for (int i = 0; i < rows_ * cols_; ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

RFMatrix RFMatrix::power(long long e) const {
  assert(rows_ == cols_ && e >= 0);
  RFMatrix r = identity(ctx_, rows_);
  RFMatrix b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool RFMatrix::operator==(const RFMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RFMatrix::is_zero() const {
  for (auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<RationalFunction> RFMatrix::apply(
    const std::vector<RationalFunction>& v) const {
  assert(static_cast<int>(v.size()) == cols_);
  std::vector<RationalFunction> out(rows_, RationalFunction::zero(ctx_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + at(i, j) * v[j];
  return out;
}

std::vector<int> RFMatrix::rref(RFMatrix& m) const {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols_ && row < m.rows_; ++col) {
    int pr = -1;
    for (int r = row; r < m.rows_; ++r)
      if (!m.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = 0; c < m.cols_; ++c) std::swap(m.at(pr, c), m.at(row, c));
    RationalFunction inv = m.at(row, col).inverse();
    for (int c = col; c < m.cols_; ++c) m.at(row, c) = m.at(row, c) * inv;
    for (int r = 0; r < m.rows_; ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      RationalFunction f = m.at(r, col);
      for (int c = col; c < m.cols_; ++c)
        m.at(r, c) = m.at(r, c) - f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int RFMatrix::rank() const {
  RFMatrix m = *this;
  return static_cast<int>(rref(m).size());
}

RFMatrix RFMatrix::stacked(const RFMatrix& below) const {
  assert(cols_ == below.cols_);
  RFMatrix r(ctx_, rows_ + below.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < below.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
  return r;
}

RFMatrix RFMatrix::augmented(const RFMatrix& right) const {
  assert(rows_ == right.rows_);
  RFMatrix r(ctx_, rows_, cols_ + right.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < right.cols_; ++j) r.at(i, cols_ + j) = right.at(i, j);
  }
  return r;
}

std::vector<std::vector<RationalFunction>> RFMatrix::nullspace() const {
  RFMatrix m = *this;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<RationalFunction>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RationalFunction> v(cols_, RationalFunction::zero(ctx_));
    v[free] = RationalFunction::one(ctx_);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = -m.at(static_cast<int>(pi), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<RationalFunction>> solve_linear(
    const RFMatrix& a, const std::vector<RationalFunction>& b) {
  assert(static_cast<int>(b.size()) == a.rows());
  RFMatrix rhs(a.ctx(), a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
  RFMatrix aug = a.augmented(rhs);
  std::vector<int> pivots = aug.rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<RationalFunction> x(a.cols(), RationalFunction::zero(a.ctx()));
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug.at(static_cast<int>(pi), a.cols());
  return x;
}

bool column_space_contains(const RFMatrix& a, const std::vector<RationalFunction>& v) {
  return solve_linear(a, v).has_value();
}

bool column_space_equals_nullspace(const RFMatrix& image_of, const RFMatrix& kernel_of) {
  // Im(A) == Ker(B) iff B*A = 0 and rank(A) + rank(B) = dim.
  RFMatrix prod = kernel_of * image_of;
  if (!prod.is_zero()) return false;
  return image_of.rank() + kernel_of.rank() == kernel_of.cols();
}

}  // namespace gsact
