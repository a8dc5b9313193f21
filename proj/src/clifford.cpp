#include "heatindex/clifford.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace heatindex {

namespace {

constexpr double kSkewTolerance = 1e-12;
constexpr double kExpTailTolerance = 1e-14;
constexpr int kMaxExpTerms = 200;

void require_same_dim(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Clifford: operands have different dimensions");
}

/// Upper bound on Σ_{k>terms} ν^k / k!.
double exp_tail_bound(double nu, int terms) {
    double term = 1.0;
    for (int k = 1; k <= terms + 1; ++k) term *= nu / k;
    return term * std::exp(nu);
}

}  // namespace

int blade_product_sign(CliffordElement::Blade a, CliffordElement::Blade b) {
    // pairs (i in a, j in b) with i > j must be transposed
    int swaps = 0;
    for (CliffordElement::Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
    // each shared generator squares to -1
    swaps += std::popcount(a & b);
    return (swaps % 2 == 0) ? 1 : -1;
}

CliffordElement::CliffordElement(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("CliffordElement: dimension out of range");
    coeffs_.assign(std::size_t{1} << dim, Scalar{0.0});
}

CliffordElement CliffordElement::scalar(int dim, Scalar value) { return blade(dim, 0, value); }

CliffordElement CliffordElement::generator(int dim, int i) {
    if (i < 0 || i >= dim) throw std::invalid_argument("CliffordElement: generator index out of range");
    return blade(dim, Blade{1} << i);
}

CliffordElement CliffordElement::product_of(int dim, const std::vector<int>& indices, Scalar value) {
    CliffordElement result = scalar(dim, value);
    for (int i : indices) result = result * generator(dim, i);
    return result;
}

CliffordElement CliffordElement::blade(int dim, Blade mask, Scalar value) {
    CliffordElement result(dim);
    if (mask >= result.size()) throw std::invalid_argument("CliffordElement: blade outside the algebra");
    result.coeffs_[mask] = value;
    return result;
}

CliffordElement CliffordElement::top(int dim, Scalar value) {
    CliffordElement result(dim);
    result.coeffs_.back() = value;
    return result;
}

int CliffordElement::max_grade() const {
    int grade = -1;
    for (Blade b = 0; b < coeffs_.size(); ++b) {
        if (coeffs_[b] != Scalar{0.0}) grade = std::max(grade, std::popcount(b));
    }
    return grade;
}

CliffordElement CliffordElement::grade_part(int k) const {
    CliffordElement result(dim_);
    for (Blade b = 0; b < coeffs_.size(); ++b) {
        if (std::popcount(b) == k) result.coeffs_[b] = coeffs_[b];
    }
    return result;
}

bool CliffordElement::is_even() const {
    for (Blade b = 0; b < coeffs_.size(); ++b) {
        if (std::popcount(b) % 2 == 1 && coeffs_[b] != Scalar{0.0}) return false;
    }
    return true;
}

bool CliffordElement::is_zero() const { return max_grade() < 0; }

double CliffordElement::norm1() const {
    double n = 0.0;
    for (const auto& c : coeffs_) n += std::abs(c);
    return n;
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

CliffordElement& CliffordElement::operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
    require_same_dim(a, b);
    CliffordElement result(a.dim());
    const auto n = static_cast<CliffordElement::Blade>(a.size());
    for (CliffordElement::Blade x = 0; x < n; ++x) {
        const auto ax = a.coeffs_[x];
        if (ax == CliffordElement::Scalar{0.0}) continue;
        for (CliffordElement::Blade y = 0; y < n; ++y) {
            const auto by = b.coeffs_[y];
            if (by == CliffordElement::Scalar{0.0}) continue;
            const double sign = blade_product_sign(x, y);
            result.coeffs_[x ^ y] += sign * ax * by;
        }
    }
    return result;
}

CliffordElement cl_mul(const CliffordElement& a, const CliffordElement& b) { return a * b; }

CliffordElement cl_commutator(const CliffordElement& a, const CliffordElement& b) { return a * b - b * a; }

std::complex<double> supertrace(const CliffordElement& a) {
    if (a.dim() % 2 != 0) throw std::domain_error("supertrace: dimension must be even");
    // (2/i)^{d/2} = (-2i)^{d/2}, accumulated exactly
    std::complex<double> factor = 1.0;
    for (int k = 0; k < a.dim() / 2; ++k) factor *= std::complex<double>(0.0, -2.0);
    return factor * a[a.top_blade()];
}

SkewMatrix::SkewMatrix(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("SkewMatrix: matrix must be square");
    if ((matrix_ + matrix_.transpose()).cwiseAbs().maxCoeff() > kSkewTolerance) {
        throw std::invalid_argument("SkewMatrix: matrix is not skew-symmetric");
    }
}

CliffordElement d_map(const SkewMatrix& psi) {
    const int d = psi.dim();
    CliffordElement result(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            // <ψ(e_i), e_j> is entry (j, i)
            const auto mask = static_cast<CliffordElement::Blade>((1u << i) | (1u << j));
            result[mask] += 0.5 * psi.matrix()(j, i);
        }
    }
    return result;
}

CliffordElement cl_exp(const CliffordElement& a, int terms) {
    const double nu = a.norm1();
    if (terms < 0) throw std::invalid_argument("cl_exp: negative term count");
    if (terms == 0) {
        terms = 1;
        while (exp_tail_bound(nu, terms) >= kExpTailTolerance) {
            if (++terms > kMaxExpTerms) throw std::domain_error("cl_exp: series does not converge within 200 terms");
        }
    } else if (exp_tail_bound(nu, terms) >= kExpTailTolerance) {
        throw std::domain_error("cl_exp: truncation leaves a tail above 1e-14");
    }
    CliffordElement result = CliffordElement::scalar(a.dim(), 1.0);
    CliffordElement term = result;
    for (int k = 1; k <= terms; ++k) {
        term = term * a;
        term *= 1.0 / k;
        result += term;
    }
    return result;
}

}  // namespace heatindex
