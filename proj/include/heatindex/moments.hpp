#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "heatindex/tensor_algebra.hpp"

namespace heatindex {

/// True iff the word is a concatenation of blocks (0) and (i,i), i >= 1.
bool in_concat_set(const Word& word);

/// E(∫ ∘dB^I) over [0, t]. For I in the concatenation set with n letters and
/// n0 zeros this is t^{(n+n0)/2} / (2^{(n-n0)/2} ((n+n0)/2)!), otherwise 0.
double stratonovich_moment(const Word& word, double t);

struct MomentEntry {
    Word word;
    double expectation;
};

/// Expectations of all words with weight <= cap over the alphabet {0..dim}.
struct MomentTable {
    double horizon = 0.0;
    std::vector<MomentEntry> entries;
};

MomentTable moment_table(int dim, int cap, double t, Grading grading = Grading::time_weighted);

/// Monte-Carlo estimate of E(∫ ∘dB^I) for every word of the basis, from the
/// exact signatures of dyadic interpolations of Brownian paths.
struct MomentEstimate {
    Word word;
    double closed_form;
    double mean;
    double stderr_of_mean;
};

struct MomentSampling {
    std::size_t samples = 100000;
    int level = 10;
    std::uint64_t seed = 1;
    int threads = 0;
};

std::vector<MomentEstimate> monte_carlo_moments(int dim, int cap, Grading grading, double t,
                                                const MomentSampling& sampling);

}  // namespace heatindex
