#include "heatindex/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "heatindex/montecarlo.hpp"
#include "heatindex/paths.hpp"

namespace heatindex {

bool in_concat_set(const Word& word) {
    // Blocks have length 1 or 2 and their first letter decides which, so a
    // left-to-right scan is a complete factorization test.
    std::size_t k = 0;
    while (k < word.size()) {
        if (word[k] == 0) {
            ++k;
        } else if (k + 1 < word.size() && word[k + 1] == word[k]) {
            k += 2;
        } else {
            return false;
        }
    }
    return true;
}

double stratonovich_moment(const Word& word, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("stratonovich_moment: t must be non-negative");
    if (!in_concat_set(word)) return 0.0;
    const int n = static_cast<int>(word.size());
    const int n0 = word.zeros();
    if ((n - n0) % 2 != 0) throw std::logic_error("stratonovich_moment: parity violated for " + word.str());
    const int blocks = (n + n0) / 2;
    double factorial = 1.0;
    for (int k = 2; k <= blocks; ++k) factorial *= k;
    return std::pow(t, blocks) / (std::ldexp(1.0, (n - n0) / 2) * factorial);
}

MomentTable moment_table(int dim, int cap, double t, Grading grading) {
    if (dim < 1) throw std::invalid_argument("moment_table: dimension must be at least 1");
    auto basis = WordBasis::get(dim, cap, grading);
    MomentTable table;
    table.horizon = t;
    table.entries.reserve(basis->size());
    for (const Word& word : basis->words()) table.entries.push_back({word, stratonovich_moment(word, t)});
    return table;
}

std::vector<MomentEstimate> monte_carlo_moments(int dim, int cap, Grading grading, double t,
                                                const MomentSampling& sampling) {
    auto basis = WordBasis::get(dim, cap, grading);
    const std::size_t width = basis->size();
    const Moments stats = run_monte_carlo(
        sampling.samples, sampling.seed, sampling.threads, width, [&](Rng& rng, std::size_t count, Moments& acc) {
            PathSample path = sample_brownian(dim, t, sampling.level, rng);
            SignatureEngine engine(dim, cap);
            std::vector<double> coeffs(width);
            for (std::size_t s = 0; s < count; ++s) {
                if (s > 0) resample_brownian(path, rng);
                engine.reset();
                engine.append_path(path);
                engine.project(*basis, coeffs);
                acc.add(coeffs);
            }
        });
    std::vector<MomentEstimate> out;
    out.reserve(width);
    for (std::size_t w = 0; w < width; ++w) {
        out.push_back({basis->word(w), stratonovich_moment(basis->word(w), t), stats.mean()[w],
                       stats.stderr_of_mean(w)});
    }
    return out;
}

}  // namespace heatindex
