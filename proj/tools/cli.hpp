#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace heatindex::cli {

struct RunConfig {
    std::string subcommand;  ///< verify-chen, moments, converge, agenus, index-density
    int dim = 2;
    int truncation = 4;               ///< N
    std::optional<std::size_t> samples;
    std::optional<int> grid;          ///< dyadic level L
    std::optional<std::uint64_t> seed;
    std::string curvature;
    std::string output;               ///< empty: standard output
    double t = 1.0;
    int size = 4;                     ///< matrix size for converge
    double tmin = 1.0 / 256.0;
    double tmax = 0.25;
    int paths = 1;                    ///< verify-chen: number of sampled paths
    int threads = 0;
    bool antithetic = true;
    bool control_variate = true;
};

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kInvalidConfig = 2,
};

/// Executes one subcommand, writing its artifact to config.output or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and calls run().
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heatindex::cli
