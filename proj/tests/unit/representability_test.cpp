#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpr/representability.hpp"
#include "oracles/oracles.hpp"

using namespace lpr;

namespace {

KernelVector make_kernel(std::vector<double> values, double t = 0.0, int q = 0, int p = 2, double h = 1.0) {
  KernelVector k;
  k.values = std::move(values);
  k.t = t;
  k.q = q;
  k.p = p;
  k.h = h;
  return k;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(SignChangeNodes, SingleChange) {
  const Design d = validate_design({0.0, 1.0});
  const NodeSet n = sign_change_nodes(make_kernel({1.0, -1.0}), d);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_DOUBLE_EQ(n.nodes[0], 0.5);
  EXPECT_DOUBLE_EQ(n.epsilon, 0.5);
}

TEST(SignChangeNodes, NoChange) {
  const Design d = validate_design({0.0, 1.0, 2.0});
  EXPECT_EQ(sign_change_nodes(make_kernel({2.0, 1.0, 3.0}), d).size(), 0u);
}

TEST(SignChangeNodes, SpansWithZeros) {
  const Design d = validate_design({0.0, 1.0, 2.0, 3.0});
  const NodeSet n = sign_change_nodes(make_kernel({1.0, 0.0, -2.0, 3.0}), d);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_DOUBLE_EQ(n.nodes[0], 0.5);
  EXPECT_DOUBLE_EQ(n.nodes[1], 2.5);
}

TEST(SignChangeNodes, NodesAvoidAbscissaeAndIncrease) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const Design d = validate_design(oracle::random_points(rng, 3 + trial % 20, -2.0, 5.0));
    std::vector<double> k(d.size());
    for (double& v : k) v = g(rng);
    const NodeSet n = sign_change_nodes(make_kernel(k), d);
    EXPECT_EQ(n.size(), count_sign_changes(k).count);
    for (std::size_t l = 0; l < n.size(); ++l) {
      if (l > 0) EXPECT_LT(n.nodes[l - 1], n.nodes[l]);
      for (double x : d.points()) EXPECT_NE(x, n.nodes[l]);
      EXPECT_GT(n.nodes[l], d[n.source_spans[l].first]);
      EXPECT_LT(n.nodes[l], d[n.source_spans[l].first + 1]);
    }
  }
}

TEST(HPolynomial, EmptyProduct) {
  const NodePolynomial h = build_h_polynomial(NodeSet{}, 0);
  EXPECT_EQ(h(3.7), 1.0);
  EXPECT_EQ(h.coeffs, (std::vector<double>{1.0}));
}

TEST(HPolynomial, SingleNodeNegated) {
  NodeSet n;
  n.nodes = {0.5};
  const NodePolynomial h = build_h_polynomial(n, 1);
  EXPECT_DOUBLE_EQ(h(0.0), 0.5);
  EXPECT_DOUBLE_EQ(h(1.0), -0.5);
  EXPECT_EQ(h.coeffs, (std::vector<double>{0.5, -1.0}));
}

TEST(HPolynomial, TwoNodes) {
  NodeSet n;
  n.nodes = {1.5, 2.5};
  const NodePolynomial h = build_h_polynomial(n, 0);
  // (x - 1.5)(x - 2.5) evaluated directly
  EXPECT_DOUBLE_EQ(h(0.0), 3.75);
  EXPECT_DOUBLE_EQ(h(3.0), 0.75);
  // expanded form agrees with the product
  for (double x : {-1.0, 0.0, 2.0, 3.0}) {
    double e = 0.0;
    for (std::size_t k = h.coeffs.size(); k-- > 0;) e = e * x + h.coeffs[k];
    EXPECT_DOUBLE_EQ(e, h(x));
  }
}

TEST(ExtractWeights, SingleChange) {
  const Design d = validate_design({0.0, 1.0});
  const KernelVector k = make_kernel({1.0, -1.0});
  const ExtractedWeights w = extract_weights(k, d, sign_change_nodes(k, d));
  EXPECT_EQ(w.s, 1);
  EXPECT_DOUBLE_EQ(w.weights[0], 2.0);
  EXPECT_DOUBLE_EQ(w.weights[1], 2.0);
}

TEST(ExtractWeights, NonNegativeKernelPassesThrough) {
  const Design d = validate_design({0.0, 1.0, 2.0});
  const KernelVector k = make_kernel({0.2, 0.5, 0.3});
  const ExtractedWeights w = extract_weights(k, d, NodeSet{});
  EXPECT_EQ(w.s, 0);
  EXPECT_EQ(w.weights, k.values);
}

TEST(ExtractWeights, InconsistentWithoutNodes) {
  const Design d = validate_design({0.0, 1.0, 2.0});
  EXPECT_THROW(extract_weights(make_kernel({1.0, 1.0, -1.0}), d, NodeSet{}), InconsistentSigns);
}

TEST(ExtractWeights, ZeroKernelEntriesGiveZeroWeights) {
  const Design d = validate_design({0.0, 1.0, 2.0, 3.0});
  const KernelVector k = make_kernel({1.0, 0.0, -2.0, 3.0});
  const ExtractedWeights w = extract_weights(k, d, sign_change_nodes(k, d));
  EXPECT_EQ(w.weights[1], 0.0);
  for (double v : w.weights) EXPECT_GE(v, 0.0);
}

TEST(DecomposeKernel, NadarayaWatson) {
  std::mt19937_64 rng(2);
  const Design d = validate_design(oracle::random_points(rng, 9, -1.0, 1.0));
  const LprSpec spec{0.0, 0, 1, 1.3, WeightScheme(WeightKind::quadratic)};
  const KernelVector k = equivalent_kernel(d, spec);
  const LprRepresentation rep = decompose_kernel(k, d, spec.t, 0, 1);
  EXPECT_EQ(rep.nodes.size(), 0u);
  EXPECT_EQ(rep.s, 0);
  EXPECT_EQ(rep.weights, k.values);
  ASSERT_EQ(rep.factor_poly.coeffs.size(), 1u);
  EXPECT_TRUE(verify_decomposition(k, rep, d).passed);
}

TEST(DecomposeKernel, RoundTripLocalLinear) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Design d = validate_design(oracle::random_points(rng, 10 + trial, -1.0, 1.0));
    const LprSpec spec{0.3, 0, 2, 1.2, WeightScheme(WeightKind::quadratic)};
    const KernelVector k = equivalent_kernel(d, spec);
    const LprRepresentation rep = decompose_kernel(k, d, spec.t, spec.q, spec.p);
    for (double w : rep.weights) EXPECT_GE(w, 0.0);
    const auto back = recompose_kernel(rep, d);
    const double scale = max_abs(k.values);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(back[i], k[i], 1e-8 * scale);
    EXPECT_TRUE(verify_decomposition(k, rep, d).passed);
  }
}

TEST(DecomposeKernel, RoundTripHigherOrders) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Design d = validate_design(oracle::random_points(rng, 12 + trial % 15, 0.0, 4.0));
    const int p = 2 + trial % 4;
    const int q = trial % p;
    const LprSpec spec{1.0 + 0.03 * trial, q, p, 2.1, WeightScheme(static_cast<WeightKind>(trial % 4))};
    const KernelVector k = equivalent_kernel(d, spec);
    const LprRepresentation rep = decompose_kernel(k, d, spec.t, q, p);
    EXPECT_LE(rep.h_poly.degree(), static_cast<std::size_t>(p - 1));
    const auto check = verify_decomposition(k, rep, d, 1e-8);
    EXPECT_TRUE(check.passed) << "p=" << p << " q=" << q << " residual " << check.factor_path_residual;
    const auto in_signs = classify_signs(k.values, kDefaultZeroTol);
    const auto out_signs = classify_signs(recompose_kernel(rep, d), kDefaultZeroTol);
    EXPECT_EQ(in_signs, out_signs);
    const int deg = effective_degree(rep.factor_poly);
    EXPECT_TRUE(deg == p - 1 || deg == p - 2);
  }
}

TEST(DecomposeKernel, TooManySignChanges) {
  std::mt19937_64 rng(5);
  const Design d = validate_design(oracle::random_points(rng, 12, -1.0, 1.0));
  const LprSpec spec{0.0, 0, 2, 1.2, WeightScheme(WeightKind::quadratic)};
  KernelVector k = equivalent_kernel(d, spec);
  std::vector<double> seed(d.size());
  for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const auto v = oracle::orthogonal_complement_vector(d.points(), spec.t, spec.h, spec.p, seed);
  const double amp = 50.0 * max_abs(k.values);
  for (std::size_t i = 0; i < d.size(); ++i) k.values[i] += amp * v[i];
  ASSERT_TRUE(moment_residuals(k, d, 0.0, 0, 2).passed);
  ASSERT_GE(count_sign_changes(k.values).count, 2u);
  EXPECT_THROW(decompose_kernel(k, d, 0.0, 0, 2), NotRepresentable);
}

TEST(DecomposeKernel, RejectsNonTypeKernel) {
  const Design d = validate_design({0.0, 2.0});
  KernelVector k = make_kernel({0.5, 0.5});
  EXPECT_THROW(decompose_kernel(k, d, 0.0, 0, 2), NotTypeQP);
}

TEST(VerifyDecomposition, DetectsPerturbedWeight) {
  std::mt19937_64 rng(6);
  const Design d = validate_design(oracle::random_points(rng, 10, -1.0, 1.0));
  const LprSpec spec{0.0, 0, 3, 1.2, WeightScheme(WeightKind::uniform)};
  const KernelVector k = equivalent_kernel(d, spec);
  LprRepresentation rep = decompose_kernel(k, d, spec.t, spec.q, spec.p);
  std::size_t target = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(k[i]) > std::abs(k[target])) target = i;
  }
  rep.weights[target] *= 1.1;
  const auto check = verify_decomposition(k, rep, d);
  EXPECT_FALSE(check.passed);
  EXPECT_EQ(check.factor_worst_index, target);
  EXPECT_EQ(check.node_worst_index, target);
}

TEST(VerifyDecomposition, ZeroKernelPasses) {
  const Design d = validate_design({0.0, 1.0, 2.0});
  const KernelVector k = make_kernel({0.0, 0.0, 0.0});
  LprRepresentation rep;
  rep.weights = {0.0, 0.0, 0.0};
  rep.factor_poly = FactorPolynomial{{1.0}, 0.0, 1.0};
  rep.h_poly = build_h_polynomial(NodeSet{}, 0);
  const auto check = verify_decomposition(k, rep, d);
  EXPECT_TRUE(check.passed);
  EXPECT_EQ(check.factor_path_residual, 0.0);
  EXPECT_EQ(check.node_path_residual, 0.0);
}
