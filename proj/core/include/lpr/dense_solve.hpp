#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lpr {

/// Row-major square matrix small enough to factor directly.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit DenseMatrix(std::size_t order) : n(order), a(order * order, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
///
/// A pivot whose magnitude falls below singular_rel times the largest
/// initial diagonal magnitude raises SingularSystem.
std::vector<double> solve_pivoted(DenseMatrix matrix, std::span<const double> rhs, double singular_rel = 1e-12);

}  // namespace lpr
