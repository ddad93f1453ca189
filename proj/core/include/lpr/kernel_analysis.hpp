#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lpr/design.hpp"
#include "lpr/lpr_engine.hpp"

namespace lpr {

inline constexpr double kDefaultMomentTol = 1e-8;
inline constexpr double kDefaultZeroTol = 1e-12;
inline constexpr double kDefaultEqualityTol = 1e-10;
inline constexpr double kDefaultDegreeTol = 1e-8;

/// r_m = (1/m!) sum_i (x_i - t)^m K_i - [m == q] for m < p, each tested
/// against tol * n_m with n_m = 1 + (1/m!) sum_i |x_i - t|^m |K_i|.
struct MomentReport {
  std::vector<double> residuals;
  std::vector<double> normalizers;
  double tol = kDefaultMomentTol;
  bool passed = false;
};

MomentReport moment_residuals(const KernelVector& kernel, const Design& design, double t, int q, int p,
                              double tol = kDefaultMomentTol);

/// Each span (j, k) marks opposite strict signs at j and k with only
/// zero-classified entries strictly between them. Indices are 0-based.
struct SignChangeReport {
  std::size_t count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> change_spans;
  double zero_tol = kDefaultZeroTol;
};

/// -1, 0 or +1 per entry; |v| <= zero_tol_rel * max|v| counts as zero.
std::vector<int> classify_signs(std::span<const double> values, double zero_tol_rel);

SignChangeReport count_sign_changes(std::span<const double> values, double zero_tol_rel = kDefaultZeroTol);

/// Difference of two kernels and its sums against the scaled monomials
/// ((x_i - t)/h)^m, m < p.
struct LemmaReport {
  double max_difference = 0.0;
  std::size_t worst_index = 0;
  std::vector<double> orthogonality_sums;
  double max_kernel = 0.0;
  double tol = kDefaultEqualityTol;
  bool equal = false;
};

/// Throws ValidationError when the kernels do not share the design size,
/// estimation point and bandwidth.
LemmaReport check_lemma_equivalence(const KernelVector& k1, const KernelVector& k2, const Design& design, double t,
                                    int p, double tol = kDefaultEqualityTol);

/// Largest k with |c_k| > rel_tol * max_j |c_j|, or 0 if none.
int effective_degree(const FactorPolynomial& poly, double rel_tol = kDefaultDegreeTol);
int effective_degree(std::span<const double> coeffs, double rel_tol = kDefaultDegreeTol);

}  // namespace lpr
