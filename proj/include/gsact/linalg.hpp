#pragma once

// Exact dense linear algebra over K = F_p(x_1,...,x_n) with deterministic
// pivoting (first nonzero entry in row-major order).

#include <optional>
#include <vector>

#include "gsact/field.hpp"

namespace gsact {

class RFMatrix {
 public:
  RFMatrix() = default;
  RFMatrix(ContextPtr ctx, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const ContextPtr& ctx() const { return ctx_; }

  RationalFunction& at(int r, int c) { return data_[r * cols_ + c]; }
  const RationalFunction& at(int r, int c) const { return data_[r * cols_ + c]; }

  static RFMatrix identity(ContextPtr ctx, int n);
  RFMatrix operator*(const RFMatrix& o) const;
  RFMatrix operator+(const RFMatrix& o) const;
  RFMatrix operator-(const RFMatrix& o) const;
  RFMatrix power(long long e) const;
  bool operator==(const RFMatrix& o) const;
  bool is_zero() const;

  std::vector<RationalFunction> apply(const std::vector<RationalFunction>& v) const;

  int rank() const;
  // Row-reduced echelon form; returns pivot column indices.
  std::vector<int> rref(RFMatrix& m) const;

  // Stacks rows of `below` underneath.
  RFMatrix stacked(const RFMatrix& below) const;
  // Appends columns of `right`.
  RFMatrix augmented(const RFMatrix& right) const;

  // Basis of the right null space, each vector canonical (one free variable 1).
  std::vector<std::vector<RationalFunction>> nullspace() const;

 private:
  ContextPtr ctx_;
  int rows_ = 0, cols_ = 0;
  std::vector<RationalFunction> data_;
};

// Canonical solution of A x = b with all free coordinates zero, or nullopt
// when the system is inconsistent.
std::optional<std::vector<RationalFunction>> solve_linear(
    const RFMatrix& a, const std::vector<RationalFunction>& b);

// Column-space membership and subspace comparisons, used for the image/kernel
// laws of nilpotent operators.
bool column_space_contains(const RFMatrix& a, const std::vector<RationalFunction>& v);
bool column_space_equals_nullspace(const RFMatrix& image_of, const RFMatrix& kernel_of);

}  // namespace gsact
