#include "lpr/dense_solve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lpr/errors.hpp"

namespace lpr {

std::vector<double> solve_pivoted(DenseMatrix m, std::span<const double> rhs, double singular_rel) {
  const std::size_t n = m.n;
  if (rhs.size() != n) throw ValidationError("right-hand side length does not match matrix order");
  std::vector<double> b(rhs.begin(), rhs.end());

  double diag_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_max = std::max(diag_max, std::abs(m(i, i)));
  const double threshold = singular_rel * diag_max;
  if (!(diag_max > 0.0)) throw SingularSystem("moment matrix has a zero diagonal");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    }
    if (!(std::abs(m(piv, col)) >= threshold) || m(piv, col) == 0.0) {
      throw SingularSystem("pivot " + std::to_string(col) + " below singularity threshold");
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      m(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
      b[r] -= f * b[col];
    }
  }

  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m(i, c) * x[c];
    x[i] = s / m(i, i);
  }
  return x;
}

}  // namespace lpr
