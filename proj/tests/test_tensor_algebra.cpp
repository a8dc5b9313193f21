#include <gtest/gtest.h>

#include <map>
#include <random>
#include <stdexcept>

#include "heatindex/tensor_algebra.hpp"

using namespace heatindex;

namespace {

// Independent naive reference: sparse map from letter vectors to coefficients.
using Naive = std::map<std::vector<int>, double>;

Naive naive_mul(const Naive& a, const Naive& b, int cap) {
    Naive out;
    for (const auto& [u, x] : a) {
        for (const auto& [v, y] : b) {
            std::vector<int> w = u;
            w.insert(w.end(), v.begin(), v.end());
            if (Word(w).degree() <= cap) out[w] += x * y;
        }
    }
    return out;
}

TensorSeries random_series(const BasisPtr& basis, std::mt19937_64& rng, double constant) {
    std::normal_distribution<double> g;
    TensorSeries s(basis);
    for (std::size_t k = 1; k < basis->size(); ++k) s.coefficients()[k] = g(rng);
    s.coefficients()[0] = constant;
    return s;
}

Naive to_naive(const TensorSeries& s) {
    Naive out;
    for (std::size_t k = 0; k < s.basis().size(); ++k) out[s.basis().word(k).letters()] = s.coefficient(k);
    return out;
}

}  // namespace

TEST(Word, DegreeCountsZerosTwice) {
    EXPECT_EQ(Word({}).degree(), 0);
    EXPECT_EQ(Word({0}).degree(), 2);
    EXPECT_EQ(Word({1, 2}).degree(), 2);
    EXPECT_EQ(Word({0, 1, 0}).degree(), 5);
    EXPECT_EQ(Word({0, 1, 1}).str(), "(0,1,1)");
    EXPECT_THROW(Word({1, -1}), std::invalid_argument);
}

TEST(WordBasis, CountsAndOrdering) {
    // d = 2, time-weighted cap 2: (), (0), (1), (2), (1,1), (1,2), (2,1), (2,2)
    const auto basis = WordBasis::get(2, 2);
    ASSERT_EQ(basis->size(), 8u);
    EXPECT_EQ(basis->word(0), Word({}));
    EXPECT_EQ(basis->word(1), Word({0}));
    EXPECT_EQ(basis->word(4), Word({1, 1}));
    EXPECT_FALSE(basis->find(Word({0, 1})).has_value());

    const auto length = WordBasis::get(2, 2, Grading::length);
    EXPECT_EQ(length->size(), 1u + 3u + 9u);
    EXPECT_EQ(WordBasis::get(2, 2).get(), basis.get());
}

TEST(TensorSeries, ProductMatchesNaiveConcatenation) {
    std::mt19937_64 rng(5);
    for (int cap : {3, 5}) {
        const auto basis = WordBasis::get(2, cap);
        const TensorSeries a = random_series(basis, rng, 0.7);
        const TensorSeries b = random_series(basis, rng, -1.3);
        const Naive expected = naive_mul(to_naive(a), to_naive(b), cap);
        const TensorSeries c = a * b;
        for (std::size_t k = 0; k < basis->size(); ++k) {
            const auto it = expected.find(basis->word(k).letters());
            ASSERT_NE(it, expected.end());
            EXPECT_NEAR(c.coefficient(k), it->second, 1e-12) << basis->word(k).str();
        }
    }
}

TEST(TensorSeries, AssociativeAndUnital) {
    std::mt19937_64 rng(9);
    const auto basis = WordBasis::get(3, 4);
    const TensorSeries a = random_series(basis, rng, 0.2);
    const TensorSeries b = random_series(basis, rng, 1.0);
    const TensorSeries c = random_series(basis, rng, -0.5);
    EXPECT_LT(max_abs_difference((a * b) * c, a * (b * c)), 1e-11);
    const TensorSeries one = TensorSeries::unit(basis);
    EXPECT_EQ(max_abs_difference(one * a, a), 0.0);
    EXPECT_EQ(max_abs_difference(a * one, a), 0.0);
}

TEST(TensorSeries, LengthGradingTruncatesByLength) {
    const auto basis = WordBasis::get(1, 3, Grading::length);
    const TensorSeries x0 = TensorSeries::letter(basis, 0);
    const TensorSeries cube = x0 * x0 * x0;
    EXPECT_EQ(cube[Word({0, 0, 0})], 1.0);
    EXPECT_EQ((cube * x0)[Word({0, 0, 0, 0})], 0.0);
}

TEST(TensorSeries, AccessBeyondTruncation) {
    const auto basis = WordBasis::get(2, 2);
    TensorSeries s(basis);
    EXPECT_EQ(s[Word({0, 1})], 0.0);
    EXPECT_THROW(s.set(Word({0, 1}), 1.0), std::out_of_range);
    EXPECT_THROW(s + TensorSeries(WordBasis::get(2, 3)), std::invalid_argument);
}

TEST(TensorSeries, ExpOfLetterIsScaledPowers) {
    const auto basis = WordBasis::get(2, 6, Grading::length);
    const TensorSeries x = TensorSeries::letter(basis, 1) * 2.0;
    const TensorSeries e = ts_exp(x);
    double factorial = 1.0;
    for (int k = 0; k <= 6; ++k) {
        if (k > 0) factorial *= k;
        EXPECT_NEAR(e[Word(std::vector<int>(static_cast<std::size_t>(k), 1))], std::pow(2.0, k) / factorial, 1e-13);
    }
}

TEST(TensorSeries, ExpLogInverse) {
    std::mt19937_64 rng(17);
    const auto basis = WordBasis::get(2, 5);
    for (int trial = 0; trial < 5; ++trial) {
        const TensorSeries a = random_series(basis, rng, 0.0) * 0.5;
        EXPECT_LT(max_abs_difference(ts_log(ts_exp(a)), a), 1e-11);
        const TensorSeries g = random_series(basis, rng, 1.0);
        EXPECT_LT(max_abs_difference(ts_exp(ts_log(g)), g), 1e-10);
    }
    EXPECT_THROW(ts_exp(TensorSeries::unit(basis)), std::domain_error);
    EXPECT_THROW(ts_log(TensorSeries(basis)), std::domain_error);
}

TEST(TensorSeries, ExpOfCommutingSumFactorises) {
    const auto basis = WordBasis::get(3, 6);
    const TensorSeries a = TensorSeries::letter(basis, 1) * 0.3;
    const TensorSeries b = TensorSeries::letter(basis, 1) * -1.1;
    EXPECT_LT(max_abs_difference(ts_exp(a + b), ts_exp(a) * ts_exp(b)), 1e-14);
}

TEST(Bracket, AntisymmetryAndJacobi) {
    std::mt19937_64 rng(3);
    const auto basis = WordBasis::get(2, 5, Grading::length);
    const TensorSeries a = random_series(basis, rng, 0.0);
    const TensorSeries b = random_series(basis, rng, 0.0);
    const TensorSeries c = random_series(basis, rng, 0.0);
    EXPECT_LT((ts_bracket(a, b) + ts_bracket(b, a)).max_abs(), 1e-12);
    const TensorSeries jacobi =
        ts_bracket(a, ts_bracket(b, c)) + ts_bracket(b, ts_bracket(c, a)) + ts_bracket(c, ts_bracket(a, b));
    EXPECT_LT(jacobi.max_abs(), 1e-10);
}

TEST(CommutatorExpand, NestedBracketOfThreeLetters) {
    // [1,[2,3]] = 123 - 132 - 231 + 321
    const auto basis = WordBasis::get(3, 3);
    const TensorSeries x = commutator_expand(Word({1, 2, 3}), basis);
    EXPECT_EQ(x[Word({1, 2, 3})], 1.0);
    EXPECT_EQ(x[Word({1, 3, 2})], -1.0);
    EXPECT_EQ(x[Word({2, 3, 1})], -1.0);
    EXPECT_EQ(x[Word({3, 2, 1})], 1.0);
    double total = 0.0;
    for (double v : x.coefficients()) total += std::abs(v);
    EXPECT_EQ(total, 4.0);

    EXPECT_EQ(max_abs_difference(commutator_expand(Word({2}), basis), TensorSeries::letter(basis, 2)), 0.0);
    EXPECT_EQ(commutator_expand(Word({1, 1}), basis).max_abs(), 0.0);
    EXPECT_THROW(commutator_expand(Word({}), basis), std::invalid_argument);
    EXPECT_THROW(commutator_expand(Word({0, 0}), basis), std::out_of_range);
}
