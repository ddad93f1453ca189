#include "lpr/lpr_engine.hpp"

#include <cmath>
#include <sstream>

#include "lpr/dense_solve.hpp"

namespace lpr {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_weights(const Design& design, std::span<const double> weights) {
  if (weights.size() != design.size()) {
    throw ValidationError("weight count does not match design size");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be finite and non-negative");
  }
}

void check_orders(int q, int p, double h) {
  if (p < 1 || p > LprSpec::kMaxOrder) throw ValidationError("p out of range");
  if (q < 0 || q >= p) throw ValidationError("q must satisfy 0 <= q < p");
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("bandwidth h must be positive and finite");
}

DenseMatrix to_dense(const MomentMatrix& mm) {
  DenseMatrix d(static_cast<std::size_t>(mm.order));
  d.a = mm.entries;
  return d;
}

MomentMatrix supported_moments(const Design& design, std::span<const double> weights, double t, double h, int p) {
  MomentMatrix mm = moment_matrix(design, weights, t, h, p);
  if (mm.effective_support < static_cast<std::size_t>(p)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "only " << mm.effective_support << " points carry weight at t=" << t << ", need " << p;
    throw SingularSystem(msg.str());
  }
  return mm;
}

// Row q of the inverse moment matrix. The matrix is symmetric, so this is
// the solution of D z = e_q.
std::vector<double> inverse_row(const MomentMatrix& mm, int q) {
  std::vector<double> unit(static_cast<std::size_t>(mm.order), 0.0);
  unit[static_cast<std::size_t>(q)] = 1.0;
  return solve_pivoted(to_dense(mm), unit);
}

}  // namespace

double FactorPolynomial::operator()(double scaled) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * scaled + *it;
  return acc;
}

MomentMatrix moment_matrix(const Design& design, std::span<const double> weights, double t, double h, int p) {
  check_weights(design, weights);
  if (p < 1) throw ValidationError("p must be at least 1");
  if (!(h > 0.0)) throw ValidationError("bandwidth h must be positive");

  const auto order = static_cast<std::size_t>(p);
  // power sums S_r = sum_i y_i^r w_i for r = 0..2p-2; d_kj = S_{k+j}/(N h)
  std::vector<double> sums(2 * order - 1, 0.0);
  std::size_t support = 0;
  for (std::size_t i = 0; i < design.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    ++support;
    const double y = (design[i] - t) / h;
    double pw = w;
    for (double& s : sums) {
      s += pw;
      pw *= y;
    }
  }
  const double norm = 1.0 / (static_cast<double>(design.size()) * h);

  MomentMatrix mm;
  mm.order = p;
  mm.scale = h;
  mm.effective_support = support;
  mm.entries.resize(order * order);
  for (std::size_t k = 0; k < order; ++k) {
    for (std::size_t j = 0; j < order; ++j) mm.entries[k * order + j] = sums[k + j] * norm;
  }
  return mm;
}

Estimate fit_with_weights(const Design& design, const SampleSet& samples, std::span<const double> weights, double t,
                          int q, int p, double h) {
  check_orders(q, p, h);
  if (samples.size() != design.size()) throw ValidationError("sample count does not match design size");
  const MomentMatrix mm = supported_moments(design, weights, t, h, p);

  const auto order = static_cast<std::size_t>(p);
  std::vector<double> rhs(order, 0.0);
  for (std::size_t i = 0; i < design.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const double y = (design[i] - t) / h;
    double pw = weights[i] * samples[i];
    for (double& m : rhs) {
      m += pw;
      pw *= y;
    }
  }
  const double norm = 1.0 / (static_cast<double>(design.size()) * h);
  for (double& m : rhs) m *= norm;

  std::vector<double> scaled = solve_pivoted(to_dense(mm), rhs);

  Estimate est;
  est.coefficients.resize(order);
  double hp = 1.0;
  for (std::size_t j = 0; j < order; ++j) {
    est.coefficients[j] = scaled[j] / hp;
    hp *= h;
  }
  est.value = factorial(q) * est.coefficients[static_cast<std::size_t>(q)];
  est.spec.t = t;
  est.spec.q = q;
  est.spec.p = p;
  est.spec.h = h;
  return est;
}

FactorPolynomial factor_with_weights(const Design& design, std::span<const double> weights, double t, int q, int p,
                                     double h) {
  check_orders(q, p, h);
  const MomentMatrix mm = supported_moments(design, weights, t, h, p);
  std::vector<double> row = inverse_row(mm, q);
  const double prefactor = factorial(q) / (static_cast<double>(design.size()) * std::pow(h, q + 1));
  for (double& c : row) c *= prefactor;
  return FactorPolynomial{std::move(row), t, h};
}

KernelVector kernel_with_weights(const Design& design, std::span<const double> weights, double t, int q, int p,
                                 double h) {
  const FactorPolynomial poly = factor_with_weights(design, weights, t, q, p, h);
  KernelVector k;
  k.t = t;
  k.q = q;
  k.p = p;
  k.h = h;
  k.values.resize(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) {
    k.values[i] = weights[i] == 0.0 ? 0.0 : weights[i] * poly.at(design[i]);
  }
  return k;
}

Estimate fit_local_poly(const Design& design, const SampleSet& samples, const LprSpec& spec) {
  spec.validate();
  const auto w = eval_weights(spec.scheme, design, spec.t, spec.h);
  Estimate est = fit_with_weights(design, samples, w, spec.t, spec.q, spec.p, spec.h);
  est.spec = spec;
  return est;
}

KernelVector equivalent_kernel(const Design& design, const LprSpec& spec) {
  spec.validate();
  const auto w = eval_weights(spec.scheme, design, spec.t, spec.h);
  return kernel_with_weights(design, w, spec.t, spec.q, spec.p, spec.h);
}

FactorPolynomial factor_polynomial(const Design& design, const LprSpec& spec) {
  spec.validate();
  const auto w = eval_weights(spec.scheme, design, spec.t, spec.h);
  return factor_with_weights(design, w, spec.t, spec.q, spec.p, spec.h);
}

std::vector<Estimate> estimate_curve(const Design& design, const SampleSet& samples, const LprSpec& base_spec,
                                     std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("estimation grid is empty");
  std::vector<Estimate> out;
  out.reserve(grid.size());
  std::vector<double> failed;
  std::ostringstream msg;
  msg.precision(17);
  for (double t : grid) {
    LprSpec spec = base_spec;
    spec.t = t;
    if (!(base_spec.h > 0.0)) spec.h = default_bandwidth(design, t);
    try {
      out.push_back(fit_local_poly(design, samples, spec));
    } catch (const SingularSystem& e) {
      if (failed.empty()) msg << "singular system at t =";
      msg << ' ' << t;
      failed.push_back(t);
    }
  }
  if (!failed.empty()) throw CurveError(msg.str(), std::move(failed));
  return out;
}

}  // namespace lpr
