#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lpr/design.hpp"
#include "lpr/kernel_analysis.hpp"
#include "lpr/lpr_engine.hpp"

namespace lpr {

/// Roots placed just after the left end of every sign-change span.
struct NodeSet {
  std::vector<double> nodes;
  double epsilon = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> source_spans;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// z_l = x_j + min_gap/2 for the l-th span (j, j+k).
NodeSet sign_change_nodes(const KernelVector& kernel, const Design& design, double zero_tol_rel = kDefaultZeroTol);

/// H(x) = (-1)^s prod_l (x - z_l). Evaluation uses the product form; coeffs
/// holds the expanded power basis in x, lowest degree first.
struct NodePolynomial {
  std::vector<double> roots;
  int s = 0;
  std::vector<double> coeffs;

  double operator()(double x) const;
  std::size_t degree() const noexcept { return roots.size(); }
};

NodePolynomial build_h_polynomial(const NodeSet& nodes, int s);

struct ExtractedWeights {
  std::vector<double> weights;
  int s = 0;
};

/// W_i = K_i / H(x_i) with s chosen so every W_i >= 0. Roundoff negatives
/// above -1e-12 max|W| are clamped; anything worse for both signs raises
/// InconsistentSigns.
ExtractedWeights extract_weights(const KernelVector& kernel, const Design& design, const NodeSet& nodes,
                                 double zero_tol_rel = kDefaultZeroTol);

struct LprRepresentation {
  std::vector<double> weights;
  int s = 0;
  NodeSet nodes;
  NodePolynomial h_poly;
  FactorPolynomial factor_poly;
  double t = 0.0;
  int q = 0;
  int p = 1;
  double h = 1.0;
};

struct DecomposeOptions {
  double moment_tol = kDefaultMomentTol;
  double zero_tol = kDefaultZeroTol;
};

/// Recovers non-negative weights whose local fit of degree p-1 reproduces
/// the kernel.
///
/// Throws NotTypeQP when the moment conditions fail, NotRepresentable when
/// the kernel changes sign more than p-1 times, InconsistentSigns when the
/// weights cannot be made non-negative and SingularSystem when fewer than p
/// weights are positive.
LprRepresentation decompose_kernel(const KernelVector& kernel, const Design& design, double t, int q, int p,
                                   const DecomposeOptions& options = {});

struct VerificationReport {
  double factor_path_residual = 0.0;  // max_i |K_i - W_i Q(y_i)|
  double node_path_residual = 0.0;    // max_i |K_i - W_i H(x_i)|
  std::size_t factor_worst_index = 0;
  std::size_t node_worst_index = 0;
  double max_kernel = 0.0;
  double tol = 0.0;
  bool passed = false;
};

VerificationReport verify_decomposition(const KernelVector& kernel, const LprRepresentation& rep,
                                        const Design& design, double tol = kDefaultMomentTol);

/// W_i Q(y_i) at every design point.
std::vector<double> recompose_kernel(const LprRepresentation& rep, const Design& design);

}  // namespace lpr
