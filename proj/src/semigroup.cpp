#include "heatindex/semigroup.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "heatindex/moments.hpp"
#include "heatindex/montecarlo.hpp"
#include "heatindex/paths.hpp"
#include "heatindex/tensor_algebra.hpp"

namespace heatindex {

MatrixModel::MatrixModel(std::vector<Eigen::MatrixXd> generators) : generators_(std::move(generators)) {
    if (generators_.size() < 2) throw std::invalid_argument("MatrixModel: need A_0 and at least one A_i");
    const Eigen::Index m = generators_.front().rows();
    if (m < 1) throw std::invalid_argument("MatrixModel: empty generator");
    for (const auto& a : generators_) {
        if (a.rows() != m || a.cols() != m) {
            throw std::invalid_argument("MatrixModel: generators must be square and of equal size");
        }
    }
}

Eigen::MatrixXd MatrixModel::heat_generator() const {
    Eigen::MatrixXd l = generators_[0];
    for (std::size_t i = 1; i < generators_.size(); ++i) l += 0.5 * generators_[i] * generators_[i];
    return l;
}

MatrixModel random_matrix_model(int dim, Eigen::Index size, std::uint64_t seed) {
    if (dim < 1 || size < 1) throw std::invalid_argument("random_matrix_model: invalid shape");
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(size)));
    std::vector<Eigen::MatrixXd> generators;
    for (int i = 0; i <= dim; ++i) {
        Eigen::MatrixXd a(size, size);
        for (Eigen::Index r = 0; r < size; ++r) {
            for (Eigen::Index c = 0; c < size; ++c) a(r, c) = normal(rng);
        }
        generators.push_back(std::move(a));
    }
    return MatrixModel(std::move(generators));
}

Eigen::MatrixXd exact_semigroup(const MatrixModel& model, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("exact_semigroup: t must be non-negative");
    Eigen::MatrixXd scaled = t * model.heat_generator();
    return scaled.exp();
}

Eigen::MatrixXd taylor_reference(const MatrixModel& model, double t, int N) {
    if (!(t >= 0.0)) throw std::invalid_argument("taylor_reference: t must be non-negative");
    if (N < 1) throw std::invalid_argument("taylor_reference: N must be at least 1");
    const Eigen::MatrixXd l = model.heat_generator();
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(model.size(), model.size());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= (N + 1) / 2; ++k) {
        term = (t / k) * (term * l);
        sum += term;
    }
    return sum;
}

namespace {

/// Per-word matrices for a truncation: A_I (bracket) and A_{i1}...A_{ik} (product).
struct WordMatrices {
    std::vector<Eigen::MatrixXd> bracket;
    std::vector<Eigen::MatrixXd> product;
    std::vector<double> mirror_sign;  // (-1)^{number of spatial letters}
};

WordMatrices word_matrices(const MatrixModel& model, const WordBasis& basis) {
    WordMatrices out;
    const Eigen::Index m = model.size();
    for (std::size_t w = 0; w < basis.size(); ++w) {
        const Word& word = basis.word(w);
        out.mirror_sign.push_back(((word.size() - static_cast<std::size_t>(word.zeros())) % 2 == 0) ? 1.0 : -1.0);
        if (word.empty()) {
            out.bracket.push_back(Eigen::MatrixXd::Zero(m, m));
            out.product.push_back(Eigen::MatrixXd::Identity(m, m));
            continue;
        }
        Eigen::MatrixXd bracket = model.generator(word[word.size() - 1]);
        for (std::size_t k = word.size() - 1; k-- > 0;) {
            const Eigen::MatrixXd& a = model.generator(word[k]);
            bracket = (a * bracket - bracket * a).eval();
        }
        Eigen::MatrixXd product = Eigen::MatrixXd::Identity(m, m);
        for (int letter : word) product = (product * model.generator(letter)).eval();
        out.bracket.push_back(std::move(bracket));
        out.product.push_back(std::move(product));
    }
    return out;
}

}  // namespace

SemigroupEstimate approx_semigroup(const MatrixModel& model, double t, int N, const SemigroupSampling& sampling) {
    if (N < 1) throw std::invalid_argument("approx_semigroup: N must be at least 1");
    if (!(t > 0.0)) throw std::invalid_argument("approx_semigroup: t must be positive");
    const int d = model.dim();
    const Eigen::Index m = model.size();
    auto basis = WordBasis::get(d, N);
    const StrichartzMap& strichartz = StrichartzMap::get(basis);
    const WordMatrices mats = word_matrices(model, *basis);
    const std::size_t nwords = basis->size();
    const auto width = static_cast<std::size_t>(m * m);

    const Moments stats = run_monte_carlo(
        sampling.samples, sampling.seed, sampling.threads, width, [&](Rng& rng, std::size_t count, Moments& acc) {
            PathSample path = sample_brownian(d, t, sampling.level, rng);
            SignatureEngine engine(d, N);
            std::vector<double> sig(nwords);
            std::vector<double> lambda(nwords);
            Eigen::MatrixXd y(m, m);
            Eigen::MatrixXd value(m, m);

            // exp(Σ Λ_I A_I) minus the optional control variate; sign flips every
            // spatial letter (the mirrored path).
            auto evaluate = [&](bool mirrored) {
                y.setZero();
                for (std::size_t w = 1; w < nwords; ++w) {
                    const double s = mirrored ? mats.mirror_sign[w] : 1.0;
                    if (lambda[w] != 0.0) y += (s * lambda[w]) * mats.bracket[w];
                }
                Eigen::MatrixXd f = y.exp();
                if (sampling.control_variate) {
                    for (std::size_t w = 0; w < nwords; ++w) {
                        const double s = mirrored ? mats.mirror_sign[w] : 1.0;
                        f -= (s * sig[w]) * mats.product[w];
                    }
                }
                return f;
            };

            for (std::size_t s = 0; s < count; ++s) {
                if (s > 0) resample_brownian(path, rng);
                engine.reset();
                engine.append_path(path);
                engine.project(*basis, sig);
                strichartz.apply(sig, lambda);
                value = evaluate(false);
                if (sampling.antithetic) value = 0.5 * (value + evaluate(true));
                acc.add(std::span<const double>(value.data(), width));
            }
        });

    SemigroupEstimate estimate;
    estimate.samples = stats.count();
    estimate.mean = Eigen::Map<const Eigen::MatrixXd>(stats.mean().data(), m, m);
    estimate.stderr_of_mean.resize(m, m);
    for (std::size_t k = 0; k < width; ++k) estimate.stderr_of_mean.data()[k] = stats.stderr_of_mean(k);
    if (sampling.control_variate) {
        for (std::size_t w = 0; w < nwords; ++w) {
            const double moment = stratonovich_moment(basis->word(w), t);
            if (moment != 0.0) estimate.mean += moment * mats.product[w];
        }
    }
    return estimate;
}

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) continue;
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

std::vector<double> geometric_times(double tmax, double tmin) {
    if (!(tmax > 0.0) || !(tmin > 0.0) || tmin > tmax) {
        throw std::invalid_argument("geometric_times: need 0 < tmin <= tmax");
    }
    std::vector<double> times;
    for (double t = tmax; t >= tmin * (1.0 - 1e-12); t *= 0.5) times.push_back(t);
    return times;
}

std::vector<double> ConvergenceReport::times() const {
    std::vector<double> out;
    for (const auto& p : points) out.push_back(p.t);
    return out;
}

std::vector<double> ConvergenceReport::errors() const {
    std::vector<double> out;
    for (const auto& p : points) out.push_back(p.error);
    return out;
}

ConvergenceReport convergence_study(const MatrixModel& model, int N, const std::vector<double>& times,
                                    const SemigroupSampling& sampling) {
    if (times.size() < 2) throw std::invalid_argument("convergence_study: need at least two horizons");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] > 0.0) || (k > 0 && !(times[k] < times[k - 1]))) {
            throw std::invalid_argument("convergence_study: horizons must be positive and strictly decreasing");
        }
    }
    ConvergenceReport report;
    report.N = N;
    std::vector<double> taylor_errors;
    for (std::size_t k = 0; k < times.size(); ++k) {
        SemigroupSampling run = sampling;
        run.seed = sampling.seed + k;
        const double t = times[k];
        const SemigroupEstimate estimate = approx_semigroup(model, t, N, run);
        ConvergencePoint point;
        point.t = t;
        point.error = spectral_norm(exact_semigroup(model, t) - estimate.mean);
        point.stderr_norm = estimate.stderr_norm();
        point.taylor_error = spectral_norm(estimate.mean - taylor_reference(model, t, N));
        point.noise_dominated = point.stderr_norm > 0.5 * point.error;
        report.points.push_back(point);
        taylor_errors.push_back(point.taylor_error);
    }
    report.fitted_order = loglog_slope(report.times(), report.errors());
    report.taylor_fitted_order = loglog_slope(report.times(), taylor_errors);
    return report;
}

}  // namespace heatindex
