#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "heatindex/moments.hpp"

using namespace heatindex;

TEST(ConcatSet, Membership) {
    EXPECT_TRUE(in_concat_set(Word({})));
    EXPECT_TRUE(in_concat_set(Word({0})));
    EXPECT_TRUE(in_concat_set(Word({1, 1, 0, 2, 2})));
    EXPECT_TRUE(in_concat_set(Word({2, 2, 2, 2})));
    EXPECT_FALSE(in_concat_set(Word({1})));
    EXPECT_FALSE(in_concat_set(Word({1, 0, 1})));
    EXPECT_FALSE(in_concat_set(Word({1, 2})));
    EXPECT_FALSE(in_concat_set(Word({1, 1, 1})));
}

TEST(StratonovichMoment, HandValues) {
    const double t = 1.7;
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({}), t), 1.0);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({0}), t), t);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({1, 1}), t), t / 2);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({0, 0}), t), t * t / 2);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({0, 1, 1}), t), t * t / 4);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({1, 1, 2, 2}), t), t * t / 8);
    EXPECT_DOUBLE_EQ(stratonovich_moment(Word({1, 2}), t), 0.0);
    EXPECT_THROW(stratonovich_moment(Word({0}), -1.0), std::invalid_argument);
}

TEST(StratonovichMoment, AgreesWithExpectedSignatureGenerator) {
    // E S(B)_t = exp(t (X_0 + 1/2 Σ X_i X_i)) in the truncated tensor algebra.
    for (int dim : {1, 2, 3}) {
        const double t = 0.8;
        const auto basis = WordBasis::get(dim, 7);
        TensorSeries generator = TensorSeries::letter(basis, 0);
        for (int i = 1; i <= dim; ++i) generator.add_to(Word({i, i}), 0.5);
        const TensorSeries expected = ts_exp(generator * t);
        const MomentTable table = moment_table(dim, 7, t);
        ASSERT_EQ(table.entries.size(), basis->size());
        for (const auto& entry : table.entries) {
            EXPECT_NEAR(entry.expectation, expected[entry.word], 1e-14) << entry.word.str();
        }
    }
}

TEST(MomentTable, CoversTheTruncation) {
    const MomentTable table = moment_table(2, 4, 1.0);
    EXPECT_EQ(table.entries.front().word, Word({}));
    for (const auto& entry : table.entries) EXPECT_LE(entry.word.degree(), 4);
    EXPECT_THROW(moment_table(0, 2, 1.0), std::invalid_argument);
}

TEST(MonteCarloMoments, SmallRunWithinStandardErrors) {
    MomentSampling sampling;
    sampling.samples = 4096;
    sampling.level = 8;
    sampling.seed = 3;
    const auto estimates = monte_carlo_moments(2, 3, Grading::time_weighted, 0.5, sampling);
    for (const auto& e : estimates) {
        // grid bias is O(2^-8) relative; 4 standard errors for a single small run
        const double tol = std::max(4.0 * e.stderr_of_mean, 1e-12) + 0.01 * std::abs(e.closed_form);
        EXPECT_NEAR(e.mean, e.closed_form, tol) << e.word.str();
    }
}

TEST(MonteCarloMoments, ThreadCountDoesNotChangeResult) {
    MomentSampling sampling;
    sampling.samples = 3000;
    sampling.level = 4;
    sampling.seed = 9;
    sampling.threads = 1;
    const auto a = monte_carlo_moments(2, 3, Grading::length, 1.0, sampling);
    sampling.threads = 3;
    const auto b = monte_carlo_moments(2, 3, Grading::length, 1.0, sampling);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].mean, b[k].mean);
        EXPECT_EQ(a[k].stderr_of_mean, b[k].stderr_of_mean);
    }
}
