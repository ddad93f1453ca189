#include "lpr/kernel_analysis.hpp"

#include <algorithm>
#include <cmath>

namespace lpr {
namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

MomentReport moment_residuals(const KernelVector& kernel, const Design& design, double t, int q, int p, double tol) {
  if (kernel.size() != design.size()) throw ValidationError("kernel length does not match design size");
  if (p < 1 || q < 0 || q >= p) throw ValidationError("moment check needs 0 <= q < p");

  const auto order = static_cast<std::size_t>(p);
  MomentReport rep;
  rep.tol = tol;
  rep.residuals.assign(order, 0.0);
  rep.normalizers.assign(order, 0.0);
  for (std::size_t i = 0; i < design.size(); ++i) {
    const double d = design[i] - t;
    double pw = kernel[i];
    double apw = std::abs(kernel[i]);
    for (std::size_t m = 0; m < order; ++m) {
      rep.residuals[m] += pw;
      rep.normalizers[m] += apw;
      pw *= d;
      apw *= std::abs(d);
    }
  }
  double inv_fact = 1.0;
  rep.passed = true;
  for (std::size_t m = 0; m < order; ++m) {
    if (m > 0) inv_fact /= static_cast<double>(m);
    rep.residuals[m] *= inv_fact;
    rep.normalizers[m] = 1.0 + rep.normalizers[m] * inv_fact;
    if (m == static_cast<std::size_t>(q)) rep.residuals[m] -= 1.0;
    if (!(std::abs(rep.residuals[m]) <= tol * rep.normalizers[m])) rep.passed = false;
  }
  return rep;
}

std::vector<int> classify_signs(std::span<const double> values, double zero_tol_rel) {
  const double threshold = zero_tol_rel * max_abs(values);
  std::vector<int> signs;
  signs.reserve(values.size());
  for (double v : values) {
    if (std::abs(v) <= threshold || v == 0.0) {
      signs.push_back(0);
    } else {
      signs.push_back(v > 0.0 ? 1 : -1);
    }
  }
  return signs;
}

SignChangeReport count_sign_changes(std::span<const double> values, double zero_tol_rel) {
  SignChangeReport rep;
  rep.zero_tol = zero_tol_rel;
  const auto signs = classify_signs(values, zero_tol_rel);
  bool have_prev = false;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 0) continue;
    if (have_prev && signs[prev] != signs[i]) rep.change_spans.emplace_back(prev, i);
    prev = i;
    have_prev = true;
  }
  rep.count = rep.change_spans.size();
  return rep;
}

LemmaReport check_lemma_equivalence(const KernelVector& k1, const KernelVector& k2, const Design& design, double t,
                                    int p, double tol) {
  if (k1.size() != design.size() || k2.size() != design.size()) {
    throw ValidationError("kernels must both match the design size");
  }
  if (k1.t != t || k2.t != t) throw ValidationError("kernels must share the estimation point");
  if (k1.h != k2.h) throw ValidationError("kernels must share the bandwidth");
  if (p < 1) throw ValidationError("p must be at least 1");

  LemmaReport rep;
  rep.tol = tol;
  rep.orthogonality_sums.assign(static_cast<std::size_t>(p), 0.0);
  rep.max_kernel = std::max(max_abs(k1.values), max_abs(k2.values));
  for (std::size_t i = 0; i < design.size(); ++i) {
    const double diff = k1[i] - k2[i];
    if (std::abs(diff) > rep.max_difference) {
      rep.max_difference = std::abs(diff);
      rep.worst_index = i;
    }
    const double y = (design[i] - t) / k1.h;
    double pw = diff;
    for (double& s : rep.orthogonality_sums) {
      s += pw;
      pw *= y;
    }
  }
  rep.equal = rep.max_difference <= tol * rep.max_kernel;
  return rep;
}

int effective_degree(std::span<const double> coeffs, double rel_tol) {
  const double threshold = rel_tol * max_abs(coeffs);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (std::abs(coeffs[k]) > threshold) return static_cast<int>(k);
  }
  return 0;
}

int effective_degree(const FactorPolynomial& poly, double rel_tol) { return effective_degree(poly.coeffs, rel_tol); }

}  // namespace lpr
