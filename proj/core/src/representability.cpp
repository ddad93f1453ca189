#include "lpr/representability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpr {
namespace {

constexpr double kClampRel = 1e-12;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Returns false if some weight is negative beyond the clamp threshold.
bool clamp_non_negative(std::vector<double>& w) {
  const double floor = -kClampRel * max_abs(w);
  for (double& v : w) {
    if (v < floor) return false;
    if (v < 0.0) v = 0.0;
  }
  return true;
}

}  // namespace

NodeSet sign_change_nodes(const KernelVector& kernel, const Design& design, double zero_tol_rel) {
  if (kernel.size() != design.size()) throw ValidationError("kernel length does not match design size");
  const SignChangeReport changes = count_sign_changes(kernel.values, zero_tol_rel);
  NodeSet out;
  if (changes.count == 0) return out;
  if (design.size() < 2) throw ValidationError("sign changes need at least two design points");
  out.epsilon = design.min_gap() / 2.0;
  out.source_spans = changes.change_spans;
  out.nodes.reserve(changes.count);
  for (const auto& [j, k] : changes.change_spans) out.nodes.push_back(design[j] + out.epsilon);
  return out;
}

double NodePolynomial::operator()(double x) const {
  double v = s == 0 ? 1.0 : -1.0;
  for (double z : roots) v *= x - z;
  return v;
}

NodePolynomial build_h_polynomial(const NodeSet& nodes, int s) {
  if (s != 0 && s != 1) throw ValidationError("sign selector s must be 0 or 1");
  NodePolynomial hp;
  hp.roots = nodes.nodes;
  hp.s = s;
  hp.coeffs = {s == 0 ? 1.0 : -1.0};
  for (double z : hp.roots) {
    // multiply by (x - z)
    std::vector<double> next(hp.coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < hp.coeffs.size(); ++k) {
      next[k + 1] += hp.coeffs[k];
      next[k] -= z * hp.coeffs[k];
    }
    hp.coeffs = std::move(next);
  }
  return hp;
}

ExtractedWeights extract_weights(const KernelVector& kernel, const Design& design, const NodeSet& nodes,
                                 double zero_tol_rel) {
  if (kernel.size() != design.size()) throw ValidationError("kernel length does not match design size");
  const NodePolynomial h0 = build_h_polynomial(nodes, 0);
  const auto signs = classify_signs(kernel.values, zero_tol_rel);

  std::vector<double> w(design.size(), 0.0);
  for (std::size_t i = 0; i < design.size(); ++i) {
    if (signs[i] == 0) continue;
    const double hv = h0(design[i]);
    if (hv == 0.0) throw ValidationError("node coincides with design point " + std::to_string(i));
    w[i] = kernel[i] / hv;
  }

  for (int s : {0, 1}) {
    std::vector<double> trial = w;
    if (s == 1) {
      for (double& v : trial) v = -v;
    }
    if (clamp_non_negative(trial)) return ExtractedWeights{std::move(trial), s};
  }
  throw InconsistentSigns("kernel signs are not matched by the node polynomial for either s");
}

LprRepresentation decompose_kernel(const KernelVector& kernel, const Design& design, double t, int q, int p,
                                   const DecomposeOptions& options) {
  const MomentReport moments = moment_residuals(kernel, design, t, q, p, options.moment_tol);
  if (!moments.passed) {
    throw NotTypeQP("kernel fails the moment conditions of type (" + std::to_string(q) + "," + std::to_string(p) +
                    ")");
  }
  NodeSet nodes = sign_change_nodes(kernel, design, options.zero_tol);
  if (nodes.size() > static_cast<std::size_t>(p - 1)) {
    throw NotRepresentable("kernel has " + std::to_string(nodes.size()) + " sign changes; at most " +
                           std::to_string(p - 1) + " are possible for p=" + std::to_string(p));
  }
  ExtractedWeights ex = extract_weights(kernel, design, nodes, options.zero_tol);

  LprRepresentation rep;
  rep.factor_poly = factor_with_weights(design, ex.weights, t, q, p, kernel.h);
  rep.h_poly = build_h_polynomial(nodes, ex.s);
  rep.weights = std::move(ex.weights);
  rep.s = ex.s;
  rep.nodes = std::move(nodes);
  rep.t = t;
  rep.q = q;
  rep.p = p;
  rep.h = kernel.h;
  return rep;
}

std::vector<double> recompose_kernel(const LprRepresentation& rep, const Design& design) {
  if (rep.weights.size() != design.size()) throw ValidationError("representation does not match design size");
  std::vector<double> k(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) {
    k[i] = rep.weights[i] == 0.0 ? 0.0 : rep.weights[i] * rep.factor_poly.at(design[i]);
  }
  return k;
}

VerificationReport verify_decomposition(const KernelVector& kernel, const LprRepresentation& rep,
                                        const Design& design, double tol) {
  if (kernel.size() != design.size() || rep.weights.size() != design.size()) {
    throw ValidationError("kernel, representation and design sizes differ");
  }
  VerificationReport out;
  out.tol = tol;
  out.max_kernel = max_abs(kernel.values);
  const auto factor_path = recompose_kernel(rep, design);
  for (std::size_t i = 0; i < design.size(); ++i) {
    const double rf = std::abs(kernel[i] - factor_path[i]);
    const double rn = std::abs(kernel[i] - rep.weights[i] * rep.h_poly(design[i]));
    if (rf > out.factor_path_residual) {
      out.factor_path_residual = rf;
      out.factor_worst_index = i;
    }
    if (rn > out.node_path_residual) {
      out.node_path_residual = rn;
      out.node_worst_index = i;
    }
  }
  const double bound = tol * out.max_kernel;
  out.passed = out.factor_path_residual <= bound && out.node_path_residual <= bound;
  return out;
}

}  // namespace lpr
