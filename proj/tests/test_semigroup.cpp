#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "heatindex/semigroup.hpp"

using namespace heatindex;

namespace {

SemigroupSampling quick(std::size_t samples, int level, std::uint64_t seed) {
    SemigroupSampling s;
    s.samples = samples;
    s.level = level;
    s.seed = seed;
    return s;
}

}  // namespace

TEST(MatrixModel, Validation) {
    EXPECT_THROW(MatrixModel({Eigen::MatrixXd::Identity(2, 2)}), std::invalid_argument);
    EXPECT_THROW(MatrixModel({Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)}),
                 std::invalid_argument);
    EXPECT_THROW(MatrixModel({Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 3)}), std::invalid_argument);
    const MatrixModel m = random_matrix_model(2, 4, 1);
    EXPECT_EQ(m.dim(), 2);
    EXPECT_EQ(m.size(), 4);
    const Eigen::MatrixXd l = m.generator(0) + 0.5 * (m.generator(1) * m.generator(1) + m.generator(2) * m.generator(2));
    EXPECT_LT((m.heat_generator() - l).norm(), 1e-15);
}

TEST(ExactSemigroup, ScalarModel) {
    // L = a0 + a1^2 / 2 on 1x1 matrices
    const MatrixModel m({Eigen::MatrixXd::Constant(1, 1, -0.4), Eigen::MatrixXd::Constant(1, 1, 0.6)});
    EXPECT_NEAR(exact_semigroup(m, 2.0)(0, 0), std::exp(2.0 * (-0.4 + 0.18)), 1e-14);
    EXPECT_NEAR(taylor_reference(m, 2.0, 3)(0, 0), 1.0 + 2.0 * (-0.22) + 2.0 * 0.22 * 0.22, 1e-14);
}

TEST(ApproxSemigroup, VanishingNoiseIsDeterministic) {
    Eigen::MatrixXd a0(2, 2);
    a0 << 0.1, -0.7, 0.3, -0.2;
    const MatrixModel m({a0, Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)});
    const SemigroupEstimate e = approx_semigroup(m, 0.6, 3, quick(1024, 3, 1));
    EXPECT_LT((e.mean - Eigen::MatrixXd(0.6 * a0).exp()).norm(), 1e-13);
    EXPECT_LT(e.stderr_norm(), 1e-13);
}

TEST(ApproxSemigroup, CommutingGeneratorsAreExactInExpectation) {
    // All generators diagonal: exp(Σ Λ_I A_I) = exp(t A_0 + Σ B^i_t A_i) once N >= 2.
    const MatrixModel m({Eigen::Vector2d(-0.3, 0.2).asDiagonal().toDenseMatrix(),
                         Eigen::Vector2d(0.5, -0.4).asDiagonal().toDenseMatrix(),
                         Eigen::Vector2d(0.1, 0.7).asDiagonal().toDenseMatrix()});
    const double t = 0.7;
    const SemigroupEstimate e = approx_semigroup(m, t, 2, quick(20000, 2, 5));
    const Eigen::MatrixXd exact = exact_semigroup(m, t);
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(e.mean(k, k), exact(k, k), 4.0 * e.stderr_of_mean(k, k) + 1e-12);
    }
    EXPECT_EQ(e.mean(0, 1), 0.0);
}

TEST(ApproxSemigroup, VarianceReductionKeepsTheMean) {
    const MatrixModel m = random_matrix_model(2, 3, 4);
    const double t = 0.25;
    SemigroupSampling plain = quick(8192, 4, 2);
    SemigroupSampling reduced = plain;
    reduced.antithetic = true;
    reduced.control_variate = true;
    reduced.seed = 3;
    const SemigroupEstimate a = approx_semigroup(m, t, 3, plain);
    const SemigroupEstimate b = approx_semigroup(m, t, 3, reduced);
    EXPECT_LT(b.stderr_norm(), a.stderr_norm());
    const double tol = 4.0 * std::hypot(a.stderr_norm(), b.stderr_norm());
    EXPECT_LT((a.mean - b.mean).norm(), tol);
}

TEST(ApproxSemigroup, ReproducibleAcrossThreadCounts) {
    const MatrixModel m = random_matrix_model(2, 3, 8);
    SemigroupSampling s = quick(5000, 3, 13);
    s.antithetic = true;
    s.control_variate = true;
    s.threads = 1;
    const SemigroupEstimate a = approx_semigroup(m, 0.5, 3, s);
    s.threads = 4;
    const SemigroupEstimate b = approx_semigroup(m, 0.5, 3, s);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stderr_of_mean, b.stderr_of_mean);
}

TEST(ApproxSemigroup, ArgumentChecks) {
    const MatrixModel m = random_matrix_model(1, 2, 1);
    EXPECT_THROW(approx_semigroup(m, 0.5, 0, quick(10, 2, 1)), std::invalid_argument);
    EXPECT_THROW(approx_semigroup(m, 0.0, 1, quick(10, 2, 1)), std::invalid_argument);
}

TEST(Convergence, SlopeHelpers) {
    const std::vector<double> x{1.0, 0.5, 0.25, 0.125};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
    const auto times = geometric_times(0.25, 1.0 / 256);
    ASSERT_EQ(times.size(), 7u);
    EXPECT_EQ(times.front(), 0.25);
    EXPECT_EQ(times.back(), 1.0 / 256);
    EXPECT_THROW(geometric_times(0.1, 0.2), std::invalid_argument);

    Eigen::MatrixXd d = Eigen::Vector3d(1.0, -4.0, 2.0).asDiagonal();
    EXPECT_NEAR(spectral_norm(d), 4.0, 1e-14);
}

TEST(Convergence, FirstOrderSchemeOnSmallModel) {
    const MatrixModel m = random_matrix_model(1, 3, 21);
    SemigroupSampling s = quick(4096, 5, 1);
    s.antithetic = true;
    s.control_variate = true;
    const ConvergenceReport r = convergence_study(m, 1, geometric_times(0.25, 1.0 / 64), s);
    ASSERT_EQ(r.points.size(), 5u);
    EXPECT_GT(r.fitted_order, 0.7);
    EXPECT_THROW(convergence_study(m, 1, {0.1, 0.2}, s), std::invalid_argument);
}
