#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "heatindex/clifford.hpp"

using namespace heatindex;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

namespace {

// Spinor representation: Jordan-Wigner gamma matrices Γ_k (Hermitian,
// Γ_k Γ_l + Γ_l Γ_k = 2δ), ρ(e_k) = iΓ_k, chirality i^{m} ρ(e_1)...ρ(e_d).
struct Spinor {
    int dim;
    std::vector<CMatrix> rho;
    CMatrix chirality;
};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

Spinor make_spinor(int dim) {
    const int m = dim / 2;
    CMatrix id = CMatrix::Identity(2, 2);
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    Spinor s{dim, {}, {}};
    for (int j = 0; j < m; ++j) {
        for (const CMatrix* p : {&x, &y}) {
            CMatrix g = CMatrix::Identity(1, 1);
            for (int q = 0; q < m; ++q) g = kron(g, q < j ? z : (q == j ? *p : id));
            s.rho.push_back(Complex(0, 1) * g);
        }
    }
    const auto n = s.rho.front().rows();
    s.chirality = CMatrix::Identity(n, n);
    for (int k = 0; k < m; ++k) s.chirality *= Complex(0, 1);
    for (const auto& r : s.rho) s.chirality = s.chirality * r;
    return s;
}

CMatrix represent(const Spinor& s, const CliffordElement& a) {
    const auto n = s.rho.front().rows();
    CMatrix out = CMatrix::Zero(n, n);
    for (CliffordElement::Blade mask = 0; mask < a.size(); ++mask) {
        if (a[mask] == Complex(0.0)) continue;
        CMatrix term = CMatrix::Identity(n, n);
        for (int k = 0; k < s.dim; ++k)
            if (mask & (1u << k)) term = term * s.rho[static_cast<std::size_t>(k)];
        out += a[mask] * term;
    }
    return out;
}

CliffordElement random_element(int dim, std::mt19937_64& rng, bool even_only = false) {
    std::normal_distribution<double> g;
    CliffordElement a(dim);
    for (CliffordElement::Blade mask = 0; mask < a.size(); ++mask) {
        if (even_only && std::popcount(mask) % 2) continue;
        a[mask] = Complex(g(rng), g(rng));
    }
    return a;
}

double max_diff(const CliffordElement& a, const CliffordElement& b) {
    double m = 0.0;
    for (CliffordElement::Blade k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

Eigen::MatrixXd random_skew(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r, c) = g(rng);
    return a - a.transpose();
}

}  // namespace

TEST(Clifford, GeneratorRelations) {
    const int d = 5;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const CliffordElement ei = CliffordElement::generator(d, i);
            const CliffordElement ej = CliffordElement::generator(d, j);
            const CliffordElement anti = ei * ej + ej * ei;
            const CliffordElement expected = CliffordElement::scalar(d, i == j ? -2.0 : 0.0);
            EXPECT_EQ(max_diff(anti, expected), 0.0) << i << ' ' << j;
        }
    }
    EXPECT_THROW(CliffordElement::generator(3, 3), std::invalid_argument);
    EXPECT_THROW(CliffordElement(CliffordElement::kMaxDim + 1), std::invalid_argument);
}

TEST(Clifford, BladeSigns) {
    // e0 e1 * e0 = -e0 e0 e1 = e1; e1 * e0 = -e0e1
    EXPECT_EQ(blade_product_sign(0b11, 0b01), 1);
    EXPECT_EQ(blade_product_sign(0b10, 0b01), -1);
    EXPECT_EQ(blade_product_sign(0b01, 0b01), -1);
    const CliffordElement p = CliffordElement::product_of(3, {2, 0, 1});
    EXPECT_EQ(p[0b111], Complex(1.0));
}

TEST(Clifford, AssociativeForSmallDimensions) {
    std::mt19937_64 rng(1);
    for (int d = 1; d <= 6; ++d) {
        const CliffordElement a = random_element(d, rng);
        const CliffordElement b = random_element(d, rng);
        const CliffordElement c = random_element(d, rng);
        EXPECT_LT(max_diff((a * b) * c, a * (b * c)), 1e-10) << d;
    }
}

TEST(Clifford, MatchesSpinorRepresentation) {
    std::mt19937_64 rng(2);
    for (int d : {2, 4, 6}) {
        const Spinor s = make_spinor(d);
        const CliffordElement a = random_element(d, rng);
        const CliffordElement b = random_element(d, rng);
        EXPECT_LT((represent(s, a * b) - represent(s, a) * represent(s, b)).cwiseAbs().maxCoeff(), 1e-10) << d;
        const Complex matrix_str = (s.chirality * represent(s, a)).trace();
        EXPECT_LT(std::abs(supertrace(a) - matrix_str), 1e-10) << d;
    }
}

TEST(Clifford, SupertraceValues) {
    EXPECT_EQ(supertrace(CliffordElement::top(2)), Complex(0.0, -2.0));
    EXPECT_EQ(supertrace(CliffordElement::top(4)), Complex(-4.0, 0.0));
    EXPECT_EQ(supertrace(CliffordElement::scalar(4, 3.0)), Complex(0.0));
    EXPECT_THROW(supertrace(CliffordElement(3)), std::domain_error);

    std::mt19937_64 rng(3);
    const CliffordElement a = random_element(4, rng, true);
    const CliffordElement b = random_element(4, rng, true);
    EXPECT_LT(std::abs(supertrace(cl_commutator(a, b))), 1e-12);
}

TEST(Clifford, GradingAndParity) {
    std::mt19937_64 rng(4);
    const CliffordElement a = random_element(4, rng, true);
    const CliffordElement b = random_element(4, rng, true);
    EXPECT_TRUE(a.is_even());
    EXPECT_TRUE((a * b).is_even());
    EXPECT_FALSE(CliffordElement::generator(4, 1).is_even());
    EXPECT_EQ(CliffordElement::top(4).max_grade(), 4);
    EXPECT_EQ(CliffordElement(4).max_grade(), -1);
    CliffordElement sum(4);
    for (int k = 0; k <= 4; ++k) sum += a.grade_part(k);
    EXPECT_EQ(max_diff(sum, a), 0.0);
    EXPECT_LE((a * b).norm1(), a.norm1() * b.norm1() * (1 + 1e-12));
}

TEST(DMap, BivectorCoefficients) {
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(3, 3);
    psi(1, 0) = 2.0;
    psi(0, 1) = -2.0;
    const CliffordElement x = d_map(SkewMatrix(psi));
    EXPECT_EQ(x[0b011], Complex(1.0));
    EXPECT_EQ(x.max_grade(), 2);
    EXPECT_THROW(SkewMatrix(Eigen::MatrixXd::Identity(3, 3)), std::invalid_argument);
}

TEST(DMap, LieAlgebraMorphismAndInjective) {
    std::mt19937_64 rng(5);
    for (int d : {3, 4, 5}) {
        const Eigen::MatrixXd p = random_skew(d, rng);
        const Eigen::MatrixXd q = random_skew(d, rng);
        const CliffordElement lhs = d_map(SkewMatrix(p * q - q * p));
        const CliffordElement rhs = cl_commutator(d_map(SkewMatrix(p)), d_map(SkewMatrix(q)));
        EXPECT_LT(max_diff(lhs, rhs), 1e-12) << d;
        EXPECT_FALSE(d_map(SkewMatrix(p)).is_zero());
    }
}

TEST(ClExp, RotorInThePlane) {
    const double theta = 0.9;
    const CliffordElement b = CliffordElement::blade(2, 0b11, theta);
    const CliffordElement r = cl_exp(b);
    EXPECT_NEAR(r[0].real(), std::cos(theta), 1e-14);
    EXPECT_NEAR(r[0b11].real(), std::sin(theta), 1e-14);
    EXPECT_LT(max_diff(cl_exp(b) * cl_exp(b * Complex(-1.0)), CliffordElement::scalar(2, 1.0)), 1e-14);
    EXPECT_THROW(cl_exp(b, 3), std::domain_error);
    EXPECT_THROW(cl_exp(b, -1), std::invalid_argument);
}

TEST(ClExp, AgreesWithMatrixExponentialInSpinorRepresentation) {
    std::mt19937_64 rng(6);
    const Spinor s = make_spinor(4);
    const CliffordElement x = d_map(SkewMatrix(random_skew(4, rng)));
    const CMatrix m = represent(s, x);
    // exp of the representing matrix by scaling and squaring of a Taylor series
    CMatrix small = m / 1024.0;
    CMatrix e = CMatrix::Identity(m.rows(), m.cols());
    CMatrix term = e;
    for (int k = 1; k < 20; ++k) {
        term = term * small / static_cast<double>(k);
        e += term;
    }
    for (int k = 0; k < 10; ++k) e = e * e;
    EXPECT_LT((represent(s, cl_exp(x)) - e).cwiseAbs().maxCoeff(), 1e-10);
}
