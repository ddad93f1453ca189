#pragma once

#include <string_view>
#include <vector>

#include "lpr/design.hpp"
#include "lpr/kernel_analysis.hpp"
#include "lpr/lpr_engine.hpp"

namespace lpr {

enum class Parity { even, odd, neither };

std::string_view to_string(Parity parity) noexcept;

/// Even / odd / neither by comparing K at mirrored design points, to within
/// tol * max|K|. Asymmetric designs always report neither.
Parity parity_check(const KernelVector& kernel, const Design& design, double t, double tol = kDefaultEqualityTol);

struct EquivalenceReport {
  std::vector<WeightScheme> schemes;
  std::vector<KernelVector> kernels;
  std::vector<std::vector<double>> pairwise_max_diff;
  std::vector<Parity> parity;
  double max_kernel = 0.0;
  double max_pairwise = 0.0;
  double tol = kDefaultEqualityTol;
  bool equal = false;

  double t = 0.0;
  int q = 0;
  int p = 1;
  double h = 1.0;
  bool symmetric_design = false;
  bool p_minus_q_even = false;
};

/// Equivalent kernels of every scheme on one design, compared pairwise. The
/// verdict is max pairwise difference <= tol * max kernel magnitude.
/// SingularSystem from any scheme is rethrown naming that scheme.
EquivalenceReport compare_weightings(const Design& design, double t, double h, int q, int p,
                                     const std::vector<WeightScheme>& schemes, double tol = kDefaultEqualityTol);

/// The three schemes 1 - y, 1 + y, 1 - y^2.
std::vector<WeightScheme> linear_quadratic_schemes();

struct DegreeDropReport {
  FactorPolynomial quadratic_factor;
  int degree = 0;
  int bound = 0;  // p - 2
  // max_i |W3(y_i) Q3(y_i) - W1(y_i) (1 + y_i) Q3(y_i)| relative to max|W3 Q3|
  double identity_residual = 0.0;
  bool passed = false;
};

/// Factor polynomial of the 1 - y^2 fit and its effective degree. Requires a
/// symmetric design and even p - q; otherwise throws ValidationError.
DegreeDropReport degree_drop_check(const Design& design, double t, double h, int q, int p,
                                   double degree_tol = kDefaultDegreeTol);

}  // namespace lpr
