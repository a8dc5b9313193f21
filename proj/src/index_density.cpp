#include "heatindex/index_density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "heatindex/montecarlo.hpp"
#include "heatindex/paths.hpp"

namespace heatindex {

CliffordElement dr_element(const CurvatureTensor& r, int i, int j) {
    const int d = r.dim();
    if (i < 0 || j < 0 || i >= d || j >= d) throw std::invalid_argument("dr_element: index out of range");
    CliffordElement out(d);
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            const double value = r(i, j, k, l);
            if (value != 0.0) out[(1u << k) | (1u << l)] = 0.5 * value;
        }
    }
    return out;
}

std::complex<double> index_normalization(int dim) {
    if (dim % 2 != 0) throw std::domain_error("index_normalization: dimension must be even");
    const std::complex<double> base = 1.0 / std::complex<double>(0.0, 2.0 * std::numbers::pi);
    std::complex<double> out = 1.0;
    for (int k = 0; k < dim / 2; ++k) out *= base;
    return out;
}

DensityEstimate mc_density(const CurvatureTensor& r, const DensitySampling& sampling) {
    const int d = r.dim();
    if (d % 2 != 0 || d < 2) throw std::domain_error("mc_density: dimension must be even and positive");
    if (d > CliffordElement::kMaxDim) throw std::invalid_argument("mc_density: dimension too large");
    const int half = d / 2;

    std::vector<CliffordElement> dr;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) dr.push_back(dr_element(r, i, j));
    const std::size_t pairs = dr.size();

    // columns: Re Str, Im Str, cancellation failure indicator
    const Moments stats = run_monte_carlo(
        sampling.samples, sampling.seed, sampling.threads, 3, [&](Rng& rng, std::size_t count, Moments& acc) {
            PathSample path = sample_bridge(d, 1.0, sampling.level, rng);
            std::vector<double> areas(pairs);
            for (std::size_t s = 0; s < count; ++s) {
                if (s > 0) resample_bridge(path, rng);
                levy_areas(path, areas);
                CliffordElement x(d);
                for (std::size_t p = 0; p < pairs; ++p) x += dr[p] * CliffordElement::Scalar(areas[p]);
                CliffordElement power = x;
                double failed = 0.0;
                for (int k = 1; k < half; ++k) {
                    if (sampling.check_cancellation && supertrace(power) != std::complex<double>(0.0)) failed = 1.0;
                    power = power * x;
                }
                const std::complex<double> str = supertrace(power);
                const double row[3] = {str.real(), str.imag(), failed};
                acc.add(row);
            }
        });

    double factorial = 1.0;
    for (int k = 2; k <= half; ++k) factorial *= k;
    const double scale = 1.0 / (std::pow(4.0 * std::numbers::pi, half) * factorial);

    DensityEstimate estimate;
    estimate.samples = stats.count();
    estimate.level = sampling.level;
    estimate.value = scale * std::complex<double>(stats.mean()[0], stats.mean()[1]);
    estimate.stderr_of_mean = scale * std::hypot(stats.stderr_of_mean(0), stats.stderr_of_mean(1));
    estimate.cancellation_failures =
        static_cast<std::size_t>(std::llround(stats.mean()[2] * static_cast<double>(stats.count())));
    return estimate;
}

LocalIndexCheck verify_local_index(const CurvatureTensor& r, const DensitySampling& sampling) {
    LocalIndexCheck check;
    check.estimate = mc_density(r, sampling);
    check.agenus_top = a_genus_top(r);
    check.expected = index_normalization(r.dim()) * check.agenus_top;
    check.discrepancy = std::abs(check.estimate.value - check.expected);
    check.tolerance = kIndexSigmas * check.estimate.stderr_of_mean + kIndexGridAllowance * std::abs(check.expected);
    check.pass = check.discrepancy <= check.tolerance && check.estimate.cancellation_failures == 0;
    return check;
}

}  // namespace heatindex
