#pragma once

#include <cstddef>
#include <vector>

namespace rolevec {

/// Dense row-major matrix, just enough for embedding and classifier code.
template <typename Real>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Real> data;

  Matrix() = default;
  Matrix(int r, int c, Real fill = Real(0))
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  Real* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const Real* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }

  Real& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  Real at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

}  // namespace rolevec
