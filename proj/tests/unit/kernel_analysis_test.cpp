#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lpr/kernel_analysis.hpp"
#include "oracles/oracles.hpp"

using namespace lpr;

namespace {

KernelVector make_kernel(std::vector<double> values, double t, int q, int p, double h = 1.0) {
  KernelVector k;
  k.values = std::move(values);
  k.t = t;
  k.q = q;
  k.p = p;
  k.h = h;
  return k;
}

}  // namespace

TEST(MomentResiduals, NormalisedWeightsPassTypeZeroOne) {
  const Design d = validate_design({0.0, 0.3, 1.1, 2.0});
  const std::vector<double> w = {0.5, 2.0, 1.5, 0.25};
  double total = 0.0;
  for (double v : w) total += v;
  std::vector<double> k;
  for (double v : w) k.push_back(v / total);
  const auto rep = moment_residuals(make_kernel(k, 1.0, 0, 1), d, 1.0, 0, 1);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.residuals[0], 0.0, 1e-15);
}

TEST(MomentResiduals, FailsFirstMomentForAveragingKernel) {
  const Design d = validate_design({0.0, 2.0});
  const auto rep = moment_residuals(make_kernel({0.5, 0.5}, 0.0, 0, 2), d, 0.0, 0, 2);
  EXPECT_FALSE(rep.passed);
  EXPECT_DOUBLE_EQ(rep.residuals[0], 0.0);
  EXPECT_DOUBLE_EQ(rep.residuals[1], 1.0);
  EXPECT_GE(rep.normalizers[0], 1.0);
  EXPECT_GE(rep.normalizers[1], 1.0);
}

TEST(MomentResiduals, EquivalentKernelsPassTheirOwnType) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Design d = validate_design(oracle::random_points(rng, 12 + trial % 9, -3.0, 3.0));
    const int p = 1 + trial % 6;
    const int q = (trial / 6) % p;
    const LprSpec spec{0.2, q, p, 2.9, WeightScheme(static_cast<WeightKind>(trial % 4))};
    const KernelVector k = equivalent_kernel(d, spec);
    const auto rep = moment_residuals(k, d, spec.t, q, p);
    EXPECT_TRUE(rep.passed) << "p=" << p << " q=" << q;
    EXPECT_EQ(rep.residuals.size(), static_cast<std::size_t>(p));
  }
}

TEST(MomentResiduals, MonotoneInTolerance) {
  const Design d = validate_design({-1.0, -0.2, 0.4, 1.0});
  const KernelVector k = equivalent_kernel(d, LprSpec{0.0, 0, 3, 1.0, WeightScheme(WeightKind::uniform)});
  EXPECT_TRUE(moment_residuals(k, d, 0.0, 0, 3, std::numeric_limits<double>::infinity()).passed);
  const KernelVector exact = make_kernel({0.0, 1.0}, 0.0, 0, 1);
  const Design d2 = validate_design({-1.0, 0.0});
  EXPECT_TRUE(moment_residuals(exact, d2, 0.0, 0, 1, 0.0).passed);
  const KernelVector off = make_kernel({0.0, 1.0 + 1e-15}, 0.0, 0, 1);
  EXPECT_FALSE(moment_residuals(off, d2, 0.0, 0, 1, 0.0).passed);
  EXPECT_TRUE(moment_residuals(off, d2, 0.0, 0, 1, 1e-12).passed);
}

TEST(MomentResiduals, DetectsSmallSingleMomentError) {
  const Design d = validate_design({-1.0, -0.3, 0.2, 0.6, 1.0});
  KernelVector k = equivalent_kernel(d, LprSpec{0.0, 0, 3, 1.0, WeightScheme(WeightKind::uniform)});
  // Perturb along a direction that changes the m = 1 moment by 1e-6.
  for (std::size_t i = 0; i < d.size(); ++i) k.values[i] += 1e-6 * d[i] / 2.3;
  EXPECT_FALSE(moment_residuals(k, d, 0.0, 0, 3).passed);
}

TEST(SignChanges, SimplePair) {
  const std::vector<double> v = {1.0, -1.0};
  EXPECT_EQ(count_sign_changes(v).count, 1u);
}

TEST(SignChanges, ZerosBetween) {
  const std::vector<double> v = {1.0, 0.0, -2.0, 3.0};
  const auto rep = count_sign_changes(v);
  EXPECT_EQ(rep.count, 2u);
  ASSERT_EQ(rep.change_spans.size(), 2u);
  EXPECT_EQ(rep.change_spans[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(rep.change_spans[1], (std::pair<std::size_t, std::size_t>{2, 3}));
}

TEST(SignChanges, AllZero) {
  const std::vector<double> v = {0.0, 0.0, 0.0};
  const auto rep = count_sign_changes(v);
  EXPECT_EQ(rep.count, 0u);
  EXPECT_TRUE(rep.change_spans.empty());
}

TEST(SignChanges, SameSignSeparatedByZeros) {
  const std::vector<double> v = {0.0, 2.0, 0.0, 0.0, 5.0, 0.0};
  EXPECT_EQ(count_sign_changes(v).count, 0u);
}

TEST(SignChanges, RelativeZeroThreshold) {
  const std::vector<double> v = {1.0, -1e-14, 2.0};
  EXPECT_EQ(count_sign_changes(v, 1e-12).count, 0u);
  EXPECT_EQ(count_sign_changes(v, 0.0).count, 2u);
}

TEST(SignChanges, AgreesWithLiteralDefinition) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> pick(-1, 1);
  std::uniform_real_distribution<double> mag(0.5, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + trial % 13);
    for (double& e : v) e = pick(rng) * mag(rng);
    EXPECT_EQ(count_sign_changes(v, 0.0).count, oracle::literal_sign_changes(v, 0.0));
  }
}

TEST(SignChanges, InvariantUnderScalingNegationAndZeroInsertion) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(1e-6, 1e6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + trial % 11);
    for (double& e : v) e = g(rng);
    const std::size_t base = count_sign_changes(v).count;

    std::vector<double> scaled = v;
    const double c = scale(rng);
    for (double& e : scaled) e *= c;
    EXPECT_EQ(count_sign_changes(scaled).count, base);

    std::vector<double> neg = v;
    for (double& e : neg) e = -e;
    EXPECT_EQ(count_sign_changes(neg).count, base);

    std::vector<double> padded;
    for (std::size_t i = 0; i < v.size(); ++i) {
      padded.push_back(v[i]);
      if (i + 1 < v.size() && v[i] * v[i + 1] > 0) padded.push_back(0.0);
    }
    EXPECT_EQ(count_sign_changes(padded).count, base);
  }
}

TEST(LemmaCheck, IdenticalKernels) {
  const Design d = validate_design({-1.0, 0.0, 0.5, 1.0});
  const KernelVector k = equivalent_kernel(d, LprSpec{0.0, 0, 2, 1.0, WeightScheme(WeightKind::uniform)});
  const auto rep = check_lemma_equivalence(k, k, d, 0.0, 2);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.max_difference, 0.0);
  for (double s : rep.orthogonality_sums) EXPECT_EQ(s, 0.0);
}

TEST(LemmaCheck, ClosedFormAgainstUnitVectorOracle) {
  std::mt19937_64 rng(10);
  const Design d = validate_design(oracle::random_points(rng, 14, -1.0, 1.0));
  const LprSpec spec{0.15, 1, 3, 1.2, WeightScheme(WeightKind::quadratic)};
  const KernelVector closed = equivalent_kernel(d, spec);
  KernelVector fitted = closed;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<double> unit(d.size(), 0.0);
    unit[i] = 1.0;
    fitted.values[i] = fit_local_poly(d, SampleSet(d, unit), spec).value;
  }
  const auto rep = check_lemma_equivalence(closed, fitted, d, spec.t, spec.p, 1e-10);
  EXPECT_TRUE(rep.equal);
  for (double s : rep.orthogonality_sums) EXPECT_LE(std::abs(s), 1e-9);
}

TEST(LemmaCheck, OrthogonalityBoundedForTwoTypeKernels) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Design d = validate_design(oracle::random_points(rng, 16, -1.0, 1.0));
    const int p = 2 + trial % 4;
    const LprSpec a{0.0, 0, p, 1.3, WeightScheme(WeightKind::uniform)};
    LprSpec b = a;
    b.scheme = WeightScheme(WeightKind::linear_plus);
    const KernelVector ka = equivalent_kernel(d, a);
    const KernelVector kb = equivalent_kernel(d, b);
    const auto ra = moment_residuals(ka, d, 0.0, 0, p);
    const auto rb = moment_residuals(kb, d, 0.0, 0, p);
    ASSERT_TRUE(ra.passed && rb.passed);
    const auto rep = check_lemma_equivalence(ka, kb, d, 0.0, p);
    // h^m times the difference of the raw moment residuals bounds each sum
    for (int m = 0; m < p; ++m) {
      double mf = 1.0;
      for (int r = 2; r <= m; ++r) mf *= r;
      const double bound = mf / std::pow(a.h, m) * 1e-8 * (ra.normalizers[m] + rb.normalizers[m]);
      EXPECT_LE(std::abs(rep.orthogonality_sums[m]), bound);
    }
  }
}

TEST(LemmaCheck, RejectsMismatchedInputs) {
  const Design d = validate_design({0.0, 1.0});
  const KernelVector a = make_kernel({0.5, 0.5}, 0.0, 0, 1);
  KernelVector b = a;
  b.t = 0.5;
  EXPECT_THROW(check_lemma_equivalence(a, b, d, 0.0, 1), ValidationError);
  const KernelVector c = make_kernel({1.0}, 0.0, 0, 1);
  EXPECT_THROW(check_lemma_equivalence(a, c, d, 0.0, 1), ValidationError);
}

TEST(EffectiveDegree, Basics) {
  const std::vector<double> one = {0.5};
  EXPECT_EQ(effective_degree(one), 0);
  const std::vector<double> three = {1.0, 0.0, 3.0};
  EXPECT_EQ(effective_degree(three), 2);
  const std::vector<double> tail = {1.0, 2.0, 1e-15};
  EXPECT_EQ(effective_degree(tail), 1);
  const std::vector<double> zeros = {0.0, 0.0};
  EXPECT_EQ(effective_degree(zeros), 0);
}

TEST(EffectiveDegree, SymmetricEvenFitDropsToPMinusTwo) {
  const Design d = symmetric_design(0.0, 1.0, 3, true);
  const FactorPolynomial poly = factor_polynomial(d, LprSpec{0.0, 0, 4, 1.0, WeightScheme(WeightKind::quadratic)});
  EXPECT_EQ(effective_degree(poly), 2);
}
