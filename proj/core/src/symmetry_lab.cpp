#include "lpr/symmetry_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpr {

std::string_view to_string(Parity parity) noexcept {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::neither: return "neither";
  }
  return "neither";
}

Parity parity_check(const KernelVector& kernel, const Design& design, double t, double tol) {
  if (kernel.size() != design.size()) throw ValidationError("kernel length does not match design size");
  const double h = design.size() > 0 ? std::max(default_bandwidth(design, t), 1e-300) : 1.0;
  if (!is_symmetric_design(design, t, h)) return Parity::neither;

  double scale = 0.0;
  for (double v : kernel.values) scale = std::max(scale, std::abs(v));
  const double bound = tol * scale;
  bool even = true;
  bool odd = true;
  const std::size_t n = kernel.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = kernel[i];
    const double b = kernel[n - 1 - i];
    if (std::abs(a - b) > bound) even = false;
    if (std::abs(a + b) > bound) odd = false;
  }
  if (even) return Parity::even;
  if (odd) return Parity::odd;
  return Parity::neither;
}

std::vector<WeightScheme> linear_quadratic_schemes() {
  return {WeightScheme(WeightKind::linear_minus), WeightScheme(WeightKind::linear_plus),
          WeightScheme(WeightKind::quadratic)};
}

EquivalenceReport compare_weightings(const Design& design, double t, double h, int q, int p,
                                     const std::vector<WeightScheme>& schemes, double tol) {
  EquivalenceReport rep;
  rep.schemes = schemes;
  rep.tol = tol;
  rep.t = t;
  rep.q = q;
  rep.p = p;
  rep.h = h;
  rep.symmetric_design = is_symmetric_design(design, t, h);
  rep.p_minus_q_even = (p - q) % 2 == 0;

  for (const WeightScheme& scheme : schemes) {
    LprSpec spec{t, q, p, h, scheme};
    try {
      rep.kernels.push_back(equivalent_kernel(design, spec));
    } catch (const SingularSystem& e) {
      throw SingularSystem(std::string(scheme.name()) + ": " + e.what());
    }
    const auto& values = rep.kernels.back().values;
    for (double v : values) rep.max_kernel = std::max(rep.max_kernel, std::abs(v));
    rep.parity.push_back(parity_check(rep.kernels.back(), design, t, tol));
  }

  const std::size_t m = schemes.size();
  rep.pairwise_max_diff.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < design.size(); ++i) {
        d = std::max(d, std::abs(rep.kernels[a][i] - rep.kernels[b][i]));
      }
      rep.pairwise_max_diff[a][b] = d;
      rep.pairwise_max_diff[b][a] = d;
      rep.max_pairwise = std::max(rep.max_pairwise, d);
    }
  }
  rep.equal = rep.max_pairwise <= tol * rep.max_kernel;
  return rep;
}

DegreeDropReport degree_drop_check(const Design& design, double t, double h, int q, int p, double degree_tol) {
  if ((p - q) % 2 != 0) throw ValidationError("degree drop needs p - q even");
  if (!is_symmetric_design(design, t, h)) throw ValidationError("degree drop needs a design symmetric about t");

  const WeightScheme quadratic(WeightKind::quadratic);
  const WeightScheme linear(WeightKind::linear_minus);
  DegreeDropReport rep;
  rep.quadratic_factor = factor_polynomial(design, LprSpec{t, q, p, h, quadratic});
  rep.degree = effective_degree(rep.quadratic_factor, degree_tol);
  rep.bound = p - 2;
  rep.passed = rep.degree <= std::max(rep.bound, 0);

  double scale = 0.0;
  double worst = 0.0;
  for (double y : scaled_abscissae(design, t, h)) {
    const double q3 = rep.quadratic_factor(y);
    const double lhs = quadratic(y) * q3;
    const double rhs = linear(y) * ((1.0 + y) * q3);
    scale = std::max(scale, std::abs(lhs));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  rep.identity_residual = scale > 0.0 ? worst / scale : worst;
  return rep;
}

}  // namespace lpr
