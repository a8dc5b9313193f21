#include "heatindex/curvature.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace heatindex {

// ---------------------------------------------------------------------------
// CurvatureTensor

CurvatureTensor::CurvatureTensor(int dim) : dim_(dim) {
    if (dim < 1 || dim > FormElement::kMaxDim) throw std::invalid_argument("CurvatureTensor: dimension out of range");
    const auto d = static_cast<std::size_t>(dim);
    data_.assign(d * d * d * d, 0.0);
}

double CurvatureTensor::symmetry_residual() const {
    double worst = 0.0;
    const int d = dim_;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double r = (*this)(i, j, k, l);
                    worst = std::max({worst, std::abs(r + (*this)(j, i, k, l)), std::abs(r + (*this)(i, j, l, k)),
                                      std::abs(r - (*this)(k, l, i, j))});
                }
    return worst;
}

double CurvatureTensor::bianchi_residual() const {
    double worst = 0.0;
    const int d = dim_;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    worst = std::max(worst, std::abs((*this)(i, j, k, l) + (*this)(i, k, l, j) + (*this)(i, l, j, k)));
                }
    return worst;
}

CurvatureTensor CurvatureTensor::rotated(const Eigen::MatrixXd& q) const {
    const int d = dim_;
    if (q.rows() != d || q.cols() != d) throw std::invalid_argument("CurvatureTensor::rotated: frame size mismatch");
    // contract one index at a time
    CurvatureTensor a = *this;
    for (int slot = 0; slot < 4; ++slot) {
        CurvatureTensor b(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        int idx[4] = {i, j, k, l};
                        const int free = idx[slot];
                        double sum = 0.0;
                        for (int m = 0; m < d; ++m) {
                            idx[slot] = m;
                            sum += q(free, m) * a(idx[0], idx[1], idx[2], idx[3]);
                        }
                        b(i, j, k, l) = sum;
                    }
        a = std::move(b);
    }
    return a;
}

CurvatureTensor CurvatureTensor::scaled(double lambda) const {
    CurvatureTensor out = *this;
    for (double& x : out.data_) x *= lambda;
    return out;
}

// ---------------------------------------------------------------------------
// specs

namespace {

double parse_number(const std::string& text, const std::string& spec) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("invalid curvature spec '" + spec + "': bad number '" + text + "'");
    }
    return value;
}

void add_space_form(CurvatureTensor& r, double kappa, int first, int count) {
    for (int i = first; i < first + count; ++i)
        for (int j = first; j < first + count; ++j)
            for (int k = first; k < first + count; ++k)
                for (int l = first; l < first + count; ++l) {
                    r(i, j, k, l) += kappa * (double(i == k) * double(j == l) - double(i == l) * double(j == k));
                }
}

CurvatureTensor random_bianchi(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CurvatureTensor t(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) t(i, j, k, l) = normal(rng);

    // antisymmetrize both pairs, then symmetrize under pair exchange
    CurvatureTensor s(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double a = 0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k));
                    const double b = 0.25 * (t(k, l, i, j) - t(l, k, i, j) - t(k, l, j, i) + t(l, k, j, i));
                    s(i, j, k, l) = 0.5 * (a + b);
                }
    // remove the totally antisymmetric part: the cyclic sum of s is 3 s_[ijkl]
    CurvatureTensor r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double cyclic = s(i, j, k, l) + s(i, k, l, j) + s(i, l, j, k);
                    r(i, j, k, l) = s(i, j, k, l) - cyclic / 3.0;
                }
    return r;
}

}  // namespace

CurvatureSpec parse_curvature_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("invalid curvature spec '" + text + "': expected <kind>:<params>");
    }
    const std::string kind = text.substr(0, colon);
    const std::string params = text.substr(colon + 1);
    if (kind == "constant") return ConstantCurvature{parse_number(params, text)};
    if (kind == "product") {
        ProductOfSurfaces spec;
        std::stringstream in(params);
        std::string item;
        while (std::getline(in, item, ',')) spec.kappas.push_back(parse_number(item, text));
        if (spec.kappas.empty()) throw std::invalid_argument("invalid curvature spec '" + text + "': no curvatures");
        return spec;
    }
    if (kind == "random") {
        std::size_t used = 0;
        unsigned long long seed = 0;
        try {
            seed = std::stoull(params, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != params.size() || params.front() == '-') {
            throw std::invalid_argument("invalid curvature spec '" + text + "': bad seed");
        }
        return RandomBianchi{seed};
    }
    throw std::invalid_argument("invalid curvature spec '" + text + "': unknown kind '" + kind + "'");
}

std::string to_string(const CurvatureSpec& spec) {
    std::ostringstream out;
    out.precision(17);
    if (const auto* c = std::get_if<ConstantCurvature>(&spec)) {
        out << "constant:" << c->kappa;
    } else if (const auto* p = std::get_if<ProductOfSurfaces>(&spec)) {
        out << "product:";
        for (std::size_t k = 0; k < p->kappas.size(); ++k) out << (k ? "," : "") << p->kappas[k];
    } else {
        out << "random:" << std::get<RandomBianchi>(spec).seed;
    }
    return out.str();
}

CurvatureTensor make_curvature(const CurvatureSpec& spec, int dim) {
    CurvatureTensor r(dim);
    if (const auto* c = std::get_if<ConstantCurvature>(&spec)) {
        add_space_form(r, c->kappa, 0, dim);
    } else if (const auto* p = std::get_if<ProductOfSurfaces>(&spec)) {
        if (2 * p->kappas.size() != static_cast<std::size_t>(dim)) {
            throw std::invalid_argument("make_curvature: a product of surfaces needs d/2 curvatures");
        }
        for (std::size_t s = 0; s < p->kappas.size(); ++s) add_space_form(r, p->kappas[s], 2 * static_cast<int>(s), 2);
    } else {
        r = random_bianchi(dim, std::get<RandomBianchi>(spec).seed);
    }
    return r;
}

// ---------------------------------------------------------------------------
// forms

FormElement::FormElement(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("FormElement: dimension out of range");
    coeffs_.assign(std::size_t{1} << dim, Scalar{0.0});
}

FormElement FormElement::scalar(int dim, Scalar value) { return monomial(dim, 0, value); }

FormElement FormElement::monomial(int dim, Mask mask, Scalar value) {
    FormElement f(dim);
    if (mask >= f.coeffs_.size()) throw std::invalid_argument("FormElement: monomial outside the algebra");
    f.coeffs_[mask] = value;
    return f;
}

int FormElement::max_degree() const {
    int deg = -1;
    for (Mask m = 0; m < coeffs_.size(); ++m) {
        if (coeffs_[m] != Scalar{0.0}) deg = std::max(deg, std::popcount(m));
    }
    return deg;
}

int FormElement::min_degree() const {
    int deg = -1;
    for (Mask m = 0; m < coeffs_.size(); ++m) {
        if (coeffs_[m] != Scalar{0.0} && (deg < 0 || std::popcount(m) < deg)) deg = std::popcount(m);
    }
    return deg;
}

FormElement FormElement::degree_part(int k) const {
    FormElement f(dim_);
    for (Mask m = 0; m < coeffs_.size(); ++m) {
        if (std::popcount(m) == k) f.coeffs_[m] = coeffs_[m];
    }
    return f;
}

bool FormElement::is_zero() const { return max_degree() < 0; }

FormElement& FormElement::operator+=(const FormElement& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("FormElement: dimension mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

FormElement& FormElement::operator-=(const FormElement& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("FormElement: dimension mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

FormElement& FormElement::operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

int wedge_sign(FormElement::Mask a, FormElement::Mask b) {
    if (a & b) return 0;
    int swaps = 0;
    for (FormElement::Mask x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
    return (swaps % 2 == 0) ? 1 : -1;
}

FormElement wedge(const FormElement& a, const FormElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    FormElement out(a.dim());
    const auto n = static_cast<FormElement::Mask>(std::size_t{1} << a.dim());
    for (FormElement::Mask x = 0; x < n; ++x) {
        const auto ax = a[x];
        if (ax == FormElement::Scalar{0.0}) continue;
        for (FormElement::Mask y = 0; y < n; ++y) {
            if (x & y) continue;
            const auto by = b[y];
            if (by == FormElement::Scalar{0.0}) continue;
            out[x | y] += static_cast<double>(wedge_sign(x, y)) * ax * by;
        }
    }
    return out;
}

FormMatrix::FormMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim * dim), FormElement(dim)) {}

FormElement FormMatrix::trace() const {
    FormElement t(dim_);
    for (int k = 0; k < dim_; ++k) t += (*this)(k, k);
    return t;
}

FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("FormMatrix: dimension mismatch");
    const int d = a.dim();
    FormMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k) {
                if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
                out(r, c) += wedge(a(r, k), b(k, c));
            }
    return out;
}

FormMatrix curvature_form(const CurvatureTensor& r) {
    const int d = r.dim();
    FormMatrix omega(d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    // 1/2 (R_ijkl e*_i∧e*_j + R_jikl e*_j∧e*_i) = R_ijkl e*_i∧e*_j
                    const double value = r(i, j, k, l);
                    if (value != 0.0) omega(k, l)[(1u << i) | (1u << j)] += value;
                }
    return omega;
}

// ---------------------------------------------------------------------------
// Â-genus

std::vector<double> log_ahat_series(int max_power) {
    if (max_power < 0) throw std::invalid_argument("log_ahat_series: negative order");
    const auto n = static_cast<std::size_t>(max_power) + 1;
    // h(x) = 2 sinh(x/2) / x = Σ x^{2m} / (4^m (2m+1)!)
    std::vector<double> h(n, 0.0);
    double factorial = 1.0;  // (2m+1)!
    for (std::size_t m = 0; 2 * m < n; ++m) {
        if (m > 0) factorial *= static_cast<double>((2 * m) * (2 * m + 1));
        h[2 * m] = 1.0 / (std::ldexp(1.0, static_cast<int>(2 * m)) * factorial);
    }
    // g = 1 / h
    std::vector<double> g(n, 0.0);
    g[0] = 1.0 / h[0];
    for (std::size_t k = 1; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t j = 1; j <= k; ++j) sum += h[j] * g[k - j];
        g[k] = -sum / h[0];
    }
    // f = log g from f' = g' / g:  k f_k = k g_k - Σ_{j<k} j f_j g_{k-j}
    std::vector<double> f(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        double sum = static_cast<double>(k) * g[k];
        for (std::size_t j = 1; j < k; ++j) sum -= static_cast<double>(j) * f[j] * g[k - j];
        f[k] = sum / (static_cast<double>(k) * g[0]);
    }
    return f;
}

FormElement a_genus_form(const CurvatureTensor& r) {
    const int d = r.dim();
    const FormMatrix omega = curvature_form(r);
    const FormMatrix omega_sq = omega * omega;
    // log g is even; tr Ω^{2k} has degree 4k, so powers with 4k > d vanish
    const std::vector<double> c = log_ahat_series(2 * (d / 4));
    FormElement half_trace_log(d);
    FormMatrix power = omega_sq;
    for (int k = 1; 4 * k <= d; ++k) {
        if (k > 1) power = power * omega_sq;
        half_trace_log += power.trace() * (0.5 * c[static_cast<std::size_t>(2 * k)]);
    }
    // exp in the commutative even subalgebra; nilpotent
    FormElement result = FormElement::scalar(d, 1.0);
    FormElement term = result;
    for (int m = 1; 4 * m <= d; ++m) {
        term = wedge(term, half_trace_log) * (1.0 / m);
        result += term;
    }
    return result;
}

std::complex<double> a_genus_top(const CurvatureTensor& r) {
    if (r.dim() % 2 != 0) throw std::domain_error("a_genus_top: dimension must be even");
    return a_genus_form(r).top();
}

}  // namespace heatindex
