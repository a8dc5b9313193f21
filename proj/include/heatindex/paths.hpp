#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "heatindex/montecarlo.hpp"
#include "heatindex/tensor_algebra.hpp"

namespace heatindex {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Piecewise-linear path in R^{d+1}. Row m holds the point at grid index m;
/// column 0 is elapsed time, columns 1..d the spatial coordinates.
struct PathSample {
    int dim = 0;
    double horizon = 0.0;
    int level = 0;  ///< dyadic level of the grid, or -1 for a non-dyadic path
    bool bridge = false;
    RowMatrix values;

    std::size_t segments() const { return static_cast<std::size_t>(values.rows()) - 1; }
};

/// Brownian motion on [0, t] sampled on 2^level uniform segments.
PathSample sample_brownian(int dim, double t, int level, Rng& rng);
/// Brownian bridge from 0 to 0 on [0, t]: a Brownian sample minus (s/t) B_t.
PathSample sample_bridge(int dim, double t, int level, Rng& rng);
/// In-place variants that reuse the storage of `path` (dim, horizon and level
/// are taken from it).
void resample_brownian(PathSample& path, Rng& rng);
void resample_bridge(PathSample& path, Rng& rng);

/// Path through the given spatial points (rows), with time running uniformly
/// over [0, t]. The first point must be the origin.
PathSample path_through(const RowMatrix& spatial_points, double t);

/// b translated to start where a ends, appended to a.
PathSample concatenate(const PathSample& a, const PathSample& b);

/// Exact signature of a piecewise-linear path truncated at word length
/// `max_length`, maintained level by level in the dense base-(d+1) layout
/// used by WordBasis::dense_position.
class SignatureEngine {
public:
    SignatureEngine(int dim, int max_length);

    int dim() const { return dim_; }
    int max_length() const { return max_length_; }

    void reset();
    /// Multiplies the current signature by exp(increment . X); `increment`
    /// has d+1 entries, entry 0 being the time increment.
    void append(std::span<const double> increment);
    void append_path(const PathSample& path);

    std::span<const double> dense() const { return levels_; }
    /// Copies the coefficients of the words of `basis` into `out`.
    void project(const WordBasis& basis, std::span<double> out) const;

private:
    int dim_;
    int max_length_;
    std::size_t alphabet_;
    std::vector<std::size_t> offsets_;
    std::vector<double> levels_;
    std::vector<double> scratch_a_;
    std::vector<double> scratch_b_;
};

/// Signature of the piecewise-linear path: the ordered product of exp(Δ_m . X)
/// over the segments, truncated at weight `cap`.
TensorSeries signature(const PathSample& path, int cap, Grading grading = Grading::time_weighted);

/// Word coefficient of a signature; throws if the word exceeds its truncation.
double iterated_integral(const TensorSeries& signature, const Word& word);
double iterated_integral(const PathSample& path, const Word& word);

/// ∫ B^i dB^j - B^j dB^i along the interpolation, 1 <= i, j <= d, i != j.
double levy_area(const PathSample& path, int i, int j);

/// All areas A_ij for 1 <= i < j <= d in row-major pair order.
void levy_areas(const PathSample& path, std::span<double> out);

/// The Chen-Strichartz coefficients Λ_I of a path, for every nonempty word
/// retained by a truncation.
class ChenCoefficients {
public:
    ChenCoefficients(BasisPtr basis, std::vector<double> values);

    const WordBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    int cap() const { return basis_->cap(); }

    /// Throws for the empty word or a word beyond the cap.
    double operator[](const Word& word) const;
    double value(std::size_t index) const { return values_[index]; }
    std::span<const double> values() const { return values_; }

private:
    BasisPtr basis_;
    std::vector<double> values_;  // slot 0 (empty word) is unused and zero
};

/// Longest word accepted by chen_strichartz (the sum runs over |I|! permutations).
inline constexpr int kMaxStrichartzLength = 8;

/// Linear map from signature coefficients to Λ coefficients on a basis:
/// Λ_I = Σ_σ (-1)^{e(σ)} / (k^2 C(k-1, e(σ))) S(σ^{-1}(I)).
class StrichartzMap {
public:
    struct Term {
        std::size_t source;
        double weight;
    };

    static const StrichartzMap& get(const BasisPtr& basis);

    explicit StrichartzMap(const WordBasis& basis);

    void apply(std::span<const double> signature, std::span<double> lambda) const;
    std::span<const Term> terms(std::size_t index) const;

private:
    std::vector<Term> terms_;
    std::vector<std::size_t> offsets_;
};

ChenCoefficients chen_strichartz(const TensorSeries& signature);
ChenCoefficients chen_strichartz(const PathSample& path, int cap);

/// Σ_I Λ_I X_I with X_I the expanded right-nested bracket.
TensorSeries lie_series(const ChenCoefficients& lambda);

/// Descent count of a permutation of {0..k-1}.
int descents(std::span<const int> permutation);

}  // namespace heatindex
