#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace heatindex {

/// Element of Cl(R^d) with e_i e_j + e_j e_i = -2 δ_ij, in the basis of
/// ordered blades e_{i1}...e_{ik}, i1 < ... < ik. Generators are indexed
/// 0..d-1 and a blade is addressed by the bitmask of its indices.
class CliffordElement {
public:
    using Scalar = std::complex<double>;
    using Blade = std::uint32_t;

    static constexpr int kMaxDim = 12;

    explicit CliffordElement(int dim);

    static CliffordElement scalar(int dim, Scalar value);
    static CliffordElement generator(int dim, int i);
    /// The product e_{i1} e_{i2} ... in the given order (indices may repeat).
    static CliffordElement product_of(int dim, const std::vector<int>& indices, Scalar value = 1.0);
    /// value times the ordered blade with the given mask.
    static CliffordElement blade(int dim, Blade mask, Scalar value = 1.0);
    /// value * e_1 e_2 ... e_d
    static CliffordElement top(int dim, Scalar value = 1.0);

    int dim() const { return dim_; }
    std::size_t size() const { return coeffs_.size(); }
    Blade top_blade() const { return static_cast<Blade>(coeffs_.size() - 1); }

    Scalar operator[](Blade mask) const { return coeffs_[mask]; }
    Scalar& operator[](Blade mask) { return coeffs_[mask]; }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }

    /// Largest k with a nonzero grade-k coefficient, -1 for zero.
    int max_grade() const;
    CliffordElement grade_part(int k) const;
    bool is_even() const;
    bool is_zero() const;
    /// Σ |coefficients|; submultiplicative under the Clifford product.
    double norm1() const;

    CliffordElement& operator+=(const CliffordElement& other);
    CliffordElement& operator-=(const CliffordElement& other);
    CliffordElement& operator*=(Scalar s);

    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
    friend CliffordElement operator*(CliffordElement a, Scalar s) { return a *= s; }
    friend CliffordElement operator*(Scalar s, CliffordElement a) { return a *= s; }
    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);

private:
    int dim_;
    std::vector<Scalar> coeffs_;
};

/// Sign of e_A e_B reduced to ±e_{A xor B}.
int blade_product_sign(CliffordElement::Blade a, CliffordElement::Blade b);

CliffordElement cl_mul(const CliffordElement& a, const CliffordElement& b);
CliffordElement cl_commutator(const CliffordElement& a, const CliffordElement& b);

/// (2/i)^{d/2} times the top coefficient; d must be even.
std::complex<double> supertrace(const CliffordElement& a);

/// Skew-symmetric d x d matrix, ψ + ψ^T = 0 to 1e-12.
class SkewMatrix {
public:
    explicit SkewMatrix(Eigen::MatrixXd matrix);
    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

private:
    Eigen::MatrixXd matrix_;
};

/// Dψ = 1/2 Σ_{i<j} <ψ(e_i), e_j> e_i e_j.
CliffordElement d_map(const SkewMatrix& psi);

/// Truncated exponential series. terms == 0 picks the length from the norm1
/// tail bound; an explicit `terms` whose tail bound exceeds 1e-14 throws.
CliffordElement cl_exp(const CliffordElement& a, int terms = 0);

}  // namespace heatindex
