#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace heatindex {

/// Frozen-coefficient model of L = A_0 + 1/2 Σ A_i^2: every ∇_i acts as the
/// constant matrix A_i, so ∇_I is the nested matrix commutator A_I.
class MatrixModel {
public:
    /// generators[0] is A_0, generators[i] is A_i for i = 1..d.
    explicit MatrixModel(std::vector<Eigen::MatrixXd> generators);

    int dim() const { return static_cast<int>(generators_.size()) - 1; }
    Eigen::Index size() const { return generators_.front().rows(); }
    const Eigen::MatrixXd& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }
    const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }

    /// A_0 + 1/2 Σ_{i>=1} A_i^2
    Eigen::MatrixXd heat_generator() const;

private:
    std::vector<Eigen::MatrixXd> generators_;
};

/// Generators with i.i.d. N(0, 1/size) entries.
MatrixModel random_matrix_model(int dim, Eigen::Index size, std::uint64_t seed);

/// exp(t L) by Padé scaling and squaring.
Eigen::MatrixXd exact_semigroup(const MatrixModel& model, double t);

/// Σ_{k <= floor((N+1)/2)} t^k L^k / k!
Eigen::MatrixXd taylor_reference(const MatrixModel& model, double t, int N);

struct SemigroupSampling {
    std::size_t samples = 100000;
    int level = 10;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Average each path with its spatial mirror image. `samples` counts pairs.
    bool antithetic = false;
    /// Subtract Σ_{d(I)<=N} (∫∘dB^I) A_{i1}...A_{ik} per sample and add back its
    /// closed-form expectation.
    bool control_variate = false;
};

struct SemigroupEstimate {
    Eigen::MatrixXd mean;
    Eigen::MatrixXd stderr_of_mean;  ///< entrywise
    std::size_t samples = 0;

    /// Frobenius norm of the entrywise standard errors.
    double stderr_norm() const { return stderr_of_mean.norm(); }
};

/// Monte-Carlo estimate of E exp(Σ_{d(I)<=N} Λ_I(B)_t A_I).
SemigroupEstimate approx_semigroup(const MatrixModel& model, double t, int N, const SemigroupSampling& sampling);

struct ConvergencePoint {
    double t;
    double error;         ///< ||exact - approx||_2
    double stderr_norm;   ///< sampling error of approx
    double taylor_error;  ///< ||approx - taylor_reference||_2
    bool noise_dominated; ///< stderr_norm > error / 2
};

struct ConvergenceReport {
    int N = 0;
    std::vector<ConvergencePoint> points;  // t strictly decreasing
    double fitted_order = 0.0;             // log-log slope of error
    double taylor_fitted_order = 0.0;      // log-log slope of taylor_error

    std::vector<double> times() const;
    std::vector<double> errors() const;
};

double spectral_norm(const Eigen::MatrixXd& m);

/// Least-squares slope of log(y) against log(x), ignoring non-positive y.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Dyadic horizons tmax, tmax/2, ..., down to tmin (inclusive when reached).
std::vector<double> geometric_times(double tmax, double tmin);

/// Runs approx_semigroup at each horizon; horizon k uses seed + k.
ConvergenceReport convergence_study(const MatrixModel& model, int N, const std::vector<double>& times,
                                    const SemigroupSampling& sampling);

}  // namespace heatindex
