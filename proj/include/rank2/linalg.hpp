#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "rank2/affine.hpp"

namespace rank2 {

struct UniqueSolution {
  ConstantAssignment values;
};

/// Free constants are pinned to zero in `values`.
struct Underdetermined {
  ConstantAssignment values;
  std::vector<int> free;
};

/// `reduced` is the nonzero constant the equation `equation` collapsed to
/// after elimination against the earlier equations.
struct Inconsistent {
  std::size_t equation;
  AffineForm original;
  AffineForm reduced;
};

using LinearVerdict = std::variant<UniqueSolution, Underdetermined, Inconsistent>;

/// Solves {eq = 0 : eq in equations} for the constants by exact Gauss-Jordan
/// elimination. `unknowns` lists constants that must appear in the answer even
/// when no equation mentions them.
LinearVerdict solve_linear(std::span<const AffineForm> equations,
                           std::span<const int> unknowns = {});

/// Dense row-major matrix of exact scalars.
class ScalarMatrix {
 public:
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Determinant by Bareiss fraction-free elimination with row pivoting.
Scalar determinant(ScalarMatrix m);

}  // namespace rank2
