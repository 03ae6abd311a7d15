#include "nnts/dataio.hpp"
#include "nnts/optimizer.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

namespace nnts {
namespace {

using testing::kPi;

class TurtleFit : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!std::filesystem::exists(testing::turtle_path())) {
      GTEST_SKIP() << "turtle dataset not bundled";
    }
    DatasetSpec spec;
    spec.path = testing::turtle_path();
    spec.unit = Unit::kDegrees;
    data_ = load_continuous(spec);
  }

  Dataset data() const { return *data_; }

  std::optional<AngularSample> data_;
};

Dataset female_calendar() {
  DatasetSpec spec;
  spec.path = testing::data_dir() / "suicides_female.csv";
  spec.kind = DataKind::kGrouped;
  return load_grouped(spec, calendar_partition());
}

double norm_defect(const NntsParams& p) {
  return std::abs(p.coefficients().squaredNorm() - 1.0 / (2.0 * kPi));
}

TEST(InitFromData, Examples) {
  const Dataset any = AngularSample({0.3, 2.0, 5.0});
  const NntsParams u = init_from_data(any, 0);
  EXPECT_NEAR(u[0].real(), 1.0 / std::sqrt(2.0 * kPi), 1e-15);

  const NntsParams one = init_from_data(Dataset(AngularSample({kPi / 2})), 1);
  const double r = 1.0 / std::sqrt(4.0 * kPi);
  EXPECT_NEAR(std::abs(one[0] - Complex(r, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(one[1] - Complex(0.0, -r)), 0.0, 1e-15);

  const Partition part = equal_partition(4);
  const NntsParams g = init_from_data(Dataset(GroupedSample(part, {0, 0, 9, 0})), 1);
  const double m = part.midpoint(2);
  EXPECT_NEAR(std::abs(g[0] - Complex(r, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[1] - std::polar(r, -m)), 0.0, 1e-15);
}

TEST(InitFromData, CancellingHarmonicGivesZeroCoefficient) {
  // Opposite angles cancel in the first harmonic but not the zeroth.
  const NntsParams p = init_from_data(Dataset(AngularSample({kPi / 2, 3 * kPi / 2})), 1);
  EXPECT_NEAR(p[0].real(), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_NEAR(std::abs(p[1]), 0.0, 1e-15);
}

TEST(ScoringStep, IsGradientOverCount) {
  std::mt19937_64 rng(3);
  const AngularSample s(testing::mixture_angles(33, rng));
  const NntsParams p = testing::random_params(3, rng);
  const ComplexVector step = scoring_step(p, s).eta;
  EXPECT_LT((step - riemannian_grad(p, s).eta / 33.0).norm(), 1e-15);
  // With |c|^2 = 1/(2 pi), count P_c acts as count/(2 pi) on the range of
  // the gradient.
  EXPECT_LT((fisher_info(33.0, p) * step - riemannian_grad(p, s).eta / (2.0 * kPi)).norm(), 1e-10);
  EXPECT_LT(scoring_step(NntsParams::uniform(0), s).eta.norm(), 1e-15);
}

TEST(Retract, ZeroStepIsIdentity) {
  std::mt19937_64 rng(4);
  for (int order = 0; order <= 6; ++order) {
    const NntsParams p = testing::random_params(order, rng);
    const NntsParams q = retract(p, TangentVector{ComplexVector::Zero(order + 1)});
    EXPECT_LT((q.coefficients() - p.coefficients()).norm(), 1e-15);
  }
}

TEST(Retract, SmallRealStep) {
  const double c0 = 1.0 / std::sqrt(2.0 * kPi);
  ComplexVector eta(2);
  eta << Complex(0.0, 0.0), Complex(0.01, 0.0);
  const NntsParams q = retract(NntsParams::uniform(1), TangentVector{eta});
  const double scale = 1.0 / (std::sqrt(c0 * c0 + 1e-4) * std::sqrt(2.0 * kPi));
  EXPECT_NEAR(q[0].real(), c0 * scale, 1e-15);
  EXPECT_NEAR(q[1].real(), 0.01 * scale, 1e-15);
  EXPECT_EQ(q[1].imag(), 0.0);
}

TEST(Retract, DirectionVariantDoesNotFixPoint) {
  std::mt19937_64 rng(5);
  const NntsParams p = testing::random_params(2, rng);
  ComplexVector eta = project_tangent(p, ComplexVector::Ones(3));
  const NntsParams q = retract(p, TangentVector{eta}, Retraction::kDirection);
  EXPECT_LT(norm_defect(q), 1e-15);
  EXPECT_THROW(retract(p, TangentVector{ComplexVector::Zero(3)}, Retraction::kDirection), ZeroVector);
  EXPECT_THROW(retract(p, TangentVector{ComplexVector::Zero(2)}), InvalidArgument);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.restarts = -1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST_F(TurtleFit, UniformIsFixedPoint) {
  const FitResult r = fit(data(), 0);
  EXPECT_NEAR(r.loglik, -139.68, 0.01);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.converged);
}

TEST_F(TurtleFit, OrderTwo) {
  const FitResult r = fit(data(), 2);
  EXPECT_NEAR(r.loglik, -107.97, 0.05);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.grad_norm, 1e-6);
}

TEST_F(TurtleFit, OrderOneAgreesWithBaseline) {
  const FitResult a = fit(data(), 1);
  const FitResult b = fit_baseline(data(), 1);
  EXPECT_NEAR(a.loglik, b.loglik, 1e-4);
  // The first-order maximum implied by the information criteria.
  EXPECT_NEAR(a.loglik, -126.33, 0.05);
}

TEST_F(TurtleFit, IterationCountsFromDataStart) {
  SolverConfig config;
  for (int order = 1; order <= 4; ++order) {
    const FitResult r = fit_from(data(), init_from_data(data(), order), config);
    std::printf("[ iterations ] order %d: %d scoring iterations from the e-statistic start\n", order,
                r.iterations);
    EXPECT_TRUE(r.converged) << "order " << order;
    EXPECT_LE(r.iterations, config.max_iters);
  }
}

TEST_F(TurtleFit, TraceIsMonotoneAndOnManifold) {
  SolverConfig config;
  config.record_trace = true;
  double worst_norm = 0.0;
  double worst_phase = 0.0;
  config.observer = [&](const IterateInfo& info) {
    worst_norm = std::max(worst_norm, norm_defect(*info.params));
    worst_phase = std::max(worst_phase, std::abs((*info.params)[0].imag()));
  };
  std::mt19937_64 rng(start_seed(0, 3));
  const FitResult r = fit_from(data(), random_start(4, rng), config);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_GE(r.trace[i].loglik, r.trace[i - 1].loglik - 1e-12 * std::abs(r.trace[i - 1].loglik));
  }
  EXPECT_LT(worst_norm, 1e-10);
  EXPECT_EQ(worst_phase, 0.0);
}

TEST_F(TurtleFit, UnguardedIterationStillImproves) {
  SolverConfig config;
  config.step_guard = false;
  for (int order = 1; order <= 4; ++order) {
    const NntsParams start = init_from_data(data(), order);
    const FitResult r = fit_from(data(), start, config);
    EXPECT_GT(r.loglik, loglik(start, data()));
  }
}

TEST_F(TurtleFit, FixedPoint) {
  SolverConfig polish;
  polish.tol = 1e-16;
  polish.grad_tol = 1e-13;
  polish.max_iters = 100000;
  const FitResult r = fit_from(data(), fit(data(), 2).params, polish);
  ASSERT_LT(r.grad_norm, 1e-12);
  SolverConfig config;
  config.max_iters = 1;
  const FitResult again = fit_from(data(), r.params, config);
  EXPECT_LT((again.params.coefficients() - r.params.coefficients()).norm(), 1e-10);
}

TEST_F(TurtleFit, BitReproducible) {
  SolverConfig config;
  config.seed = 1234;
  config.restarts = 8;
  const FitResult a = fit(data(), 3, config);
  const FitResult b = fit(data(), 3, config);
  EXPECT_EQ(a.loglik, b.loglik);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.start, b.start);
  EXPECT_EQ(a.params.coefficients(), b.params.coefficients());
}

TEST(GroupedFit, FemaleOrderSix) {
  const FitResult r = fit(female_calendar(), 6);
  EXPECT_NEAR(r.loglik, -40673.26, 0.5);
  EXPECT_TRUE(r.converged);
}

TEST(Baseline, UniformOrderIsExact) {
  const FitResult r = fit_baseline(Dataset(AngularSample({0.4, 1.0})), 0);
  EXPECT_EQ(r.params.coefficients(), NntsParams::uniform(0).coefficients());
  EXPECT_NEAR(r.loglik, -2.0 * std::log(2.0 * kPi), 1e-14);
}

TEST(Baseline, AgreesWithScoringOnSyntheticSamples) {
  std::mt19937_64 rng(2024);
  SolverConfig config;
  config.restarts = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset data = AngularSample(testing::mixture_angles(30, rng));
    config.seed = trial;
    const double a = fit(data, 2, config).loglik;
    const double b = fit_baseline(data, 2, config).loglik;
    EXPECT_NEAR(a, b, 1e-3) << "trial " << trial;
  }
}

TEST(StartSeed, DistinctPerIndex) {
  EXPECT_NE(start_seed(0, 1), start_seed(0, 2));
  EXPECT_NE(start_seed(0, 1), start_seed(1, 1));
  EXPECT_EQ(start_seed(9, 4), start_seed(9, 4));
}

TEST(LexicographicOrder, ComparesRealThenImaginary) {
  ComplexVector a(2), b(2);
  a << Complex(0.1, 0.0), Complex(0.2, 0.5);
  b << Complex(0.1, 0.0), Complex(0.2, 0.6);
  EXPECT_TRUE(lexicographically_less(a, b));
  EXPECT_FALSE(lexicographically_less(b, a));
  EXPECT_FALSE(lexicographically_less(a, a));
}

}  // namespace
}  // namespace nnts
