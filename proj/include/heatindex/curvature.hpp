#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace heatindex {

/// Components R_ijkl = <R(e_i, e_j) e_k, e_l> in an orthonormal frame,
/// indices 0..d-1.
class CurvatureTensor {
public:
    explicit CurvatureTensor(int dim);

    int dim() const { return dim_; }
    double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
    double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }

    /// max |violation| of R_ijkl = -R_jikl = -R_ijlk = R_klij
    double symmetry_residual() const;
    /// max |R_ijkl + R_iklj + R_iljk|
    double bianchi_residual() const;

    /// R'_ijkl = Σ Q_ia Q_jb Q_kc Q_ld R_abcd
    CurvatureTensor rotated(const Eigen::MatrixXd& q) const;
    CurvatureTensor scaled(double lambda) const;

private:
    std::size_t index(int i, int j, int k, int l) const {
        const auto d = static_cast<std::size_t>(dim_);
        return ((static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k)) * d +
               static_cast<std::size_t>(l);
    }

    int dim_;
    std::vector<double> data_;
};

struct ConstantCurvature {
    double kappa;
};
/// Orthogonal product of surfaces of curvatures kappas[0] on (e_0, e_1),
/// kappas[1] on (e_2, e_3), ...
struct ProductOfSurfaces {
    std::vector<double> kappas;
};
struct RandomBianchi {
    std::uint64_t seed;
};

using CurvatureSpec = std::variant<ConstantCurvature, ProductOfSurfaces, RandomBianchi>;

/// Parses "constant:<k>", "product:<k1>,<k2>[,...]" or "random:<seed>".
CurvatureSpec parse_curvature_spec(const std::string& text);
std::string to_string(const CurvatureSpec& spec);

/// Builds a tensor with the algebraic curvature symmetries. A product spec
/// needs exactly d/2 curvatures; random tensors are a random array projected
/// onto the Riemann symmetry class.
CurvatureTensor make_curvature(const CurvatureSpec& spec, int dim);

/// Element of the exterior algebra on e*_0..e*_{d-1}; monomials are addressed
/// by the bitmask of their (increasing) indices.
class FormElement {
public:
    using Scalar = std::complex<double>;
    using Mask = std::uint32_t;

    static constexpr int kMaxDim = 16;

    explicit FormElement(int dim);
    static FormElement scalar(int dim, Scalar value);
    static FormElement monomial(int dim, Mask mask, Scalar value = 1.0);

    int dim() const { return dim_; }
    Scalar operator[](Mask mask) const { return coeffs_[mask]; }
    Scalar& operator[](Mask mask) { return coeffs_[mask]; }
    Scalar top() const { return coeffs_.back(); }
    /// Largest degree present, -1 for zero.
    int max_degree() const;
    int min_degree() const;
    FormElement degree_part(int k) const;
    bool is_zero() const;

    FormElement& operator+=(const FormElement& other);
    FormElement& operator-=(const FormElement& other);
    FormElement& operator*=(Scalar s);
    friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
    friend FormElement operator-(FormElement a, const FormElement& b) { return a -= b; }
    friend FormElement operator*(FormElement a, Scalar s) { return a *= s; }
    friend FormElement operator*(Scalar s, FormElement a) { return a *= s; }

private:
    int dim_;
    std::vector<Scalar> coeffs_;
};

/// Sign of e*_A ∧ e*_B reduced to ±e*_{A|B}, or 0 if A and B overlap.
int wedge_sign(FormElement::Mask a, FormElement::Mask b);
FormElement wedge(const FormElement& a, const FormElement& b);

/// d x d matrix of forms, row-major.
class FormMatrix {
public:
    explicit FormMatrix(int dim);

    int dim() const { return dim_; }
    const FormElement& operator()(int r, int c) const { return entries_[index(r, c)]; }
    FormElement& operator()(int r, int c) { return entries_[index(r, c)]; }

    FormElement trace() const;
    friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b);

private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * dim_ + c); }
    int dim_;
    std::vector<FormElement> entries_;
};

/// Ω_kl = 1/2 Σ_{i,j} R_ijkl e*_i ∧ e*_j
FormMatrix curvature_form(const CurvatureTensor& r);

/// Taylor coefficients c_0..c_max of log(x / (2 sinh(x/2))), obtained by
/// dividing power series.
std::vector<double> log_ahat_series(int max_power);

/// det^{1/2}(Ω / (2 sinh(Ω/2))) = exp(1/2 tr log g(Ω)) as a mixed-degree form.
FormElement a_genus_form(const CurvatureTensor& r);
/// Coefficient of e*_1 ∧ ... ∧ e*_d in a_genus_form; d must be even.
std::complex<double> a_genus_top(const CurvatureTensor& r);

}  // namespace heatindex
