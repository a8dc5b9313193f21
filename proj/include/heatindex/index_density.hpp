#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include "heatindex/clifford.hpp"
#include "heatindex/curvature.hpp"

namespace heatindex {

/// DR(e_i, e_j) = 1/2 Σ_{k<l} R_ijkl e_k e_l, indices 0..d-1.
CliffordElement dr_element(const CurvatureTensor& r, int i, int j);

struct DensitySampling {
    std::size_t samples = 200000;
    int level = 10;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Also evaluate Str(X^k), k < d/2, on every sample and count nonzero values.
    bool check_cancellation = true;
};

struct DensityEstimate {
    std::complex<double> value;
    double stderr_of_mean = 0.0;
    std::size_t samples = 0;
    int level = 0;
    /// Samples where some Str(X^k), k < d/2, was not exactly zero.
    std::size_t cancellation_failures = 0;
};

/// (4π)^{-d/2} / (d/2)! · E[Str (Σ_{i<j} DR(e_i,e_j) A_ij)^{d/2} | B_1 = 0], with
/// A_ij = ∫ B^i dB^j - B^j dB^i over a Brownian bridge on [0, 1].
DensityEstimate mc_density(const CurvatureTensor& r, const DensitySampling& sampling);

/// (1 / 2iπ)^{d/2}
std::complex<double> index_normalization(int dim);

struct LocalIndexCheck {
    DensityEstimate estimate;
    std::complex<double> agenus_top;  ///< top coefficient of the Â form
    std::complex<double> expected;    ///< (1 / 2iπ)^{d/2} agenus_top
    double discrepancy = 0.0;         ///< |estimate - expected|
    double tolerance = 0.0;           ///< 3 stderr + 2% |expected|
    bool pass = false;
};

inline constexpr double kIndexSigmas = 3.0;
inline constexpr double kIndexGridAllowance = 0.02;

LocalIndexCheck verify_local_index(const CurvatureTensor& r, const DensitySampling& sampling);

}  // namespace heatindex
