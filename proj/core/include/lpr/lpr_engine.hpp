#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpr/design.hpp"
#include "lpr/errors.hpp"

namespace lpr {

/// Scaled Gram matrix d_kj = (1/(N h)) sum_i y_i^(k+j) w_i with y_i = (x_i - t)/h.
struct MomentMatrix {
  int order = 0;
  std::vector<double> entries;  // row-major, order x order
  double scale = 1.0;
  std::size_t effective_support = 0;

  double operator()(int k, int j) const { return entries[static_cast<std::size_t>(k * order + j)]; }
};

MomentMatrix moment_matrix(const Design& design, std::span<const double> weights, double t, double h, int p);

/// Local polynomial fit at one point. coefficients are a_j of
/// sum_j a_j (x - t)^j; value is q! a_q.
struct Estimate {
  double value = 0.0;
  std::vector<double> coefficients;
  LprSpec spec;
};

/// Coefficients K_i of the linear estimator sum_i K_i y_i equivalent to a fit.
struct KernelVector {
  std::vector<double> values;
  double t = 0.0;
  int q = 0;
  int p = 1;
  double h = 1.0;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// P(y) = sum_k coeffs[k] y^k in the scaled variable y = (x - t)/h, with the
/// q!/(N h^(q+1)) prefactor folded into the coefficients. K_i = w_i P(y_i).
struct FactorPolynomial {
  std::vector<double> coeffs;
  double t = 0.0;
  double h = 1.0;

  double operator()(double scaled) const;
  double at(double x) const { return (*this)((x - t) / h); }
};

/// Weighted least-squares fit with the weights implied by spec.scheme.
/// Throws SingularSystem when fewer than p points carry weight or the
/// pivoted solve breaks down.
Estimate fit_local_poly(const Design& design, const SampleSet& samples, const LprSpec& spec);

KernelVector equivalent_kernel(const Design& design, const LprSpec& spec);

FactorPolynomial factor_polynomial(const Design& design, const LprSpec& spec);

/// Same three operations with caller-supplied non-negative weights. h only
/// scales the moment system; it does not select the support.
Estimate fit_with_weights(const Design& design, const SampleSet& samples, std::span<const double> weights, double t,
                          int q, int p, double h);
KernelVector kernel_with_weights(const Design& design, std::span<const double> weights, double t, int q, int p,
                                 double h);
FactorPolynomial factor_with_weights(const Design& design, std::span<const double> weights, double t, int q, int p,
                                     double h);

/// Raised by estimate_curve after every grid point has been tried; carries
/// the estimation points whose systems were singular.
class CurveError : public SingularSystem {
 public:
  CurveError(const std::string& what, std::vector<double> failed) : SingularSystem(what), failed_(std::move(failed)) {}
  const std::vector<double>& failed_points() const noexcept { return failed_; }

 private:
  std::vector<double> failed_;
};

/// One fit per grid point, spec.t replaced by the grid value. A
/// non-positive base_spec.h selects default_bandwidth() at each point.
std::vector<Estimate> estimate_curve(const Design& design, const SampleSet& samples, const LprSpec& base_spec,
                                     std::span<const double> grid);

}  // namespace lpr
