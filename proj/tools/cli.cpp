#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "heatindex/curvature.hpp"
#include "heatindex/index_density.hpp"
#include "heatindex/moments.hpp"
#include "heatindex/paths.hpp"
#include "heatindex/semigroup.hpp"

namespace heatindex::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kChenTolerance = 1e-10;
constexpr double kOrderSlack = 0.3;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip representation; locale independent.
std::string num(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::uint64_t require_seed(const RunConfig& config) {
    if (!config.seed) throw ConfigError(config.subcommand + ": --seed is required");
    return *config.seed;
}

void require_even(int dim, const std::string& who) {
    if (dim < 2 || dim % 2 != 0) throw ConfigError(who + ": --dim must be even and at least 2");
}

int verify_chen(const RunConfig& c, std::ostream& out) {
    const std::uint64_t seed = require_seed(c);
    if (c.dim < 1) throw ConfigError("verify-chen: --dim must be at least 1");
    if (c.truncation < 1 || c.truncation > kMaxStrichartzLength) throw ConfigError("verify-chen: --N must be in [1, 8]");
    if (c.paths < 1) throw ConfigError("verify-chen: --paths must be positive");
    const int grid = c.grid.value_or(8);
    double worst = 0.0;
    for (int k = 0; k < c.paths; ++k) {
        Rng rng = block_rng(seed, static_cast<std::uint64_t>(k));
        const PathSample path = sample_brownian(c.dim, c.t, grid, rng);
        const TensorSeries sig = signature(path, c.truncation);
        const TensorSeries rebuilt = ts_exp(lie_series(chen_strichartz(sig)));
        worst = std::max(worst, max_abs_difference(rebuilt, sig));
    }
    const bool pass = worst < kChenTolerance;
    ordered_json j;
    j["command"] = "verify-chen";
    j["dim"] = c.dim;
    j["N"] = c.truncation;
    j["t"] = c.t;
    j["grid"] = grid;
    j["seed"] = seed;
    j["paths"] = c.paths;
    j["max_discrepancy"] = worst;
    j["tolerance"] = kChenTolerance;
    j["pass"] = pass;
    out << j.dump(2) << '\n';
    return pass ? kPass : kCheckFailed;
}

int moments(const RunConfig& c, std::ostream& out) {
    if (c.dim < 1) throw ConfigError("moments: --dim must be at least 1");
    if (c.truncation < 0) throw ConfigError("moments: --N must be non-negative");
    if (!(c.t >= 0.0)) throw ConfigError("moments: --t must be non-negative");
    const MomentTable table = moment_table(c.dim, c.truncation, c.t);
    out << "word,degree,in_concat_set,expectation\n";
    for (const auto& entry : table.entries) {
        out << '"' << entry.word.str() << "\"," << entry.word.degree() << ','
            << (in_concat_set(entry.word) ? "true" : "false") << ',' << num(entry.expectation) << '\n';
    }
    return kPass;
}

int converge(const RunConfig& c, std::ostream& out) {
    const std::uint64_t seed = require_seed(c);
    if (c.dim < 1 || c.size < 1) throw ConfigError("converge: --dim and --size must be positive");
    if (c.truncation < 1 || c.truncation > kMaxStrichartzLength) throw ConfigError("converge: --N must be in [1, 8]");
    const MatrixModel model = random_matrix_model(c.dim, c.size, seed);
    SemigroupSampling sampling;
    sampling.samples = c.samples.value_or(100000);
    sampling.level = c.grid.value_or(10);
    sampling.seed = seed;
    sampling.threads = c.threads;
    sampling.antithetic = c.antithetic;
    sampling.control_variate = c.control_variate;
    const ConvergenceReport report =
        convergence_study(model, c.truncation, geometric_times(c.tmax, c.tmin), sampling);

    const double target = (c.truncation + 1) / 2.0 - kOrderSlack;
    const bool pass = report.fitted_order >= target && report.taylor_fitted_order >= target;
    out << "t,error,stderr,taylor_error,noise_dominated\n";
    for (const auto& p : report.points) {
        out << num(p.t) << ',' << num(p.error) << ',' << num(p.stderr_norm) << ',' << num(p.taylor_error) << ','
            << (p.noise_dominated ? "true" : "false") << '\n';
    }
    ordered_json footer;
    footer["N"] = c.truncation;
    footer["dim"] = c.dim;
    footer["size"] = c.size;
    footer["samples"] = sampling.samples;
    footer["grid"] = sampling.level;
    footer["seed"] = seed;
    footer["antithetic"] = sampling.antithetic;
    footer["control_variate"] = sampling.control_variate;
    footer["fitted_order"] = report.fitted_order;
    footer["taylor_fitted_order"] = report.taylor_fitted_order;
    footer["required_order"] = target;
    footer["pass"] = pass;
    out << "# " << footer.dump() << '\n';
    return pass ? kPass : kCheckFailed;
}

CurvatureTensor curvature_from(const RunConfig& c, const std::string& who) {
    if (c.curvature.empty()) throw ConfigError(who + ": --curvature is required");
    try {
        return make_curvature(parse_curvature_spec(c.curvature), c.dim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

int agenus(const RunConfig& c, std::ostream& out) {
    require_even(c.dim, "agenus");
    const CurvatureTensor r = curvature_from(c, "agenus");
    const std::complex<double> top = a_genus_top(r);
    const std::complex<double> density = index_normalization(c.dim) * top;
    ordered_json j;
    j["command"] = "agenus";
    j["dim"] = c.dim;
    j["curvature"] = c.curvature;
    j["agenus_top"] = top.real();
    j["agenus_top_imag"] = top.imag();
    j["index_density"] = density.real();
    j["index_density_imag"] = density.imag();
    out << j.dump(2) << '\n';
    return kPass;
}

int index_density(const RunConfig& c, std::ostream& out) {
    const std::uint64_t seed = require_seed(c);
    require_even(c.dim, "index-density");
    const CurvatureTensor r = curvature_from(c, "index-density");
    DensitySampling sampling;
    sampling.samples = c.samples.value_or(200000);
    sampling.level = c.grid.value_or(10);
    sampling.seed = seed;
    sampling.threads = c.threads;
    const LocalIndexCheck check = verify_local_index(r, sampling);
    ordered_json j;
    j["command"] = "index-density";
    j["dim"] = c.dim;
    j["curvature"] = c.curvature;
    j["samples"] = check.estimate.samples;
    j["grid"] = check.estimate.level;
    j["seed"] = seed;
    j["mc_value"] = check.estimate.value.real();
    j["mc_value_imag"] = check.estimate.value.imag();
    j["mc_stderr"] = check.estimate.stderr_of_mean;
    j["agenus_top"] = check.agenus_top.real();
    j["agenus_value"] = check.expected.real();
    j["agenus_value_imag"] = check.expected.imag();
    j["discrepancy"] = check.discrepancy;
    j["tolerance"] = check.tolerance;
    j["cancellation_failures"] = check.estimate.cancellation_failures;
    j["pass"] = check.pass;
    out << j.dump(2) << '\n';
    return check.pass ? kPass : kCheckFailed;
}

int dispatch(const RunConfig& c, std::ostream& out) {
    if (c.subcommand == "verify-chen") return verify_chen(c, out);
    if (c.subcommand == "moments") return moments(c, out);
    if (c.subcommand == "converge") return converge(c, out);
    if (c.subcommand == "agenus") return agenus(c, out);
    if (c.subcommand == "index-density") return index_density(c, out);
    throw ConfigError("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.output.empty()) return dispatch(config, out);
        std::ostringstream buffer;
        const int status = dispatch(config, buffer);
        std::ofstream file(config.output, std::ios::binary);
        if (!file) throw ConfigError("cannot open output file '" + config.output + "'");
        file << buffer.str();
        return status;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chen-series heat semigroup approximations and local index density checks", "heatindex"};
    app.require_subcommand(1);
    RunConfig config;
    std::size_t samples = 0;
    int grid = 0;
    std::uint64_t seed = 0;
    bool no_antithetic = false;
    bool no_control_variate = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--dim", config.dim, "Spatial dimension d");
        sub->add_option("--out", config.output, "Write the result to this file instead of stdout");
        sub->add_option("--threads", config.threads, "Worker threads (default: HEATINDEX_THREADS or all cores)");
    };
    auto stochastic = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Root seed (required)");
        sub->add_option("--samples", samples, "Monte-Carlo sample count");
        sub->add_option("--grid", grid, "Dyadic grid level L (2^L segments)");
    };

    auto* chen = app.add_subcommand("verify-chen", "Check exp(Σ Λ_I X_I) against the path signature");
    common(chen);
    stochastic(chen);
    chen->add_option("--N", config.truncation, "Degree cap");
    chen->add_option("--t", config.t, "Horizon");
    chen->add_option("--paths", config.paths, "Number of sampled paths");

    auto* mom = app.add_subcommand("moments", "Closed-form expectations of iterated Stratonovich integrals (CSV)");
    common(mom);
    mom->add_option("--N", config.truncation, "Degree cap");
    mom->add_option("--t", config.t, "Horizon");

    auto* conv = app.add_subcommand("converge", "Convergence order of P^N_t in a random matrix model (CSV)");
    common(conv);
    stochastic(conv);
    conv->add_option("--size", config.size, "Matrix size");
    conv->add_option("--N", config.truncation, "Degree cap");
    conv->add_option("--tmin", config.tmin, "Smallest horizon");
    conv->add_option("--tmax", config.tmax, "Largest horizon");
    conv->add_flag("--no-antithetic", no_antithetic, "Disable antithetic pairs");
    conv->add_flag("--no-control-variate", no_control_variate, "Disable the signature control variate");

    auto* ag = app.add_subcommand("agenus", "Top-degree coefficient of the Â-genus form");
    common(ag);
    ag->add_option("--curvature", config.curvature, "constant:<k> | product:<k1>,<k2> | random:<seed>");

    auto* idx = app.add_subcommand("index-density", "Monte-Carlo local index density against the Â-genus (JSON)");
    common(idx);
    stochastic(idx);
    idx->add_option("--curvature", config.curvature, "constant:<k> | product:<k1>,<k2> | random:<seed>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInvalidConfig;
    }

    for (auto* sub : app.get_subcommands()) {
        config.subcommand = sub->get_name();
        if (sub->get_option_no_throw("--seed") && sub->count("--seed")) config.seed = seed;
        if (sub->get_option_no_throw("--samples") && sub->count("--samples")) config.samples = samples;
        if (sub->get_option_no_throw("--grid") && sub->count("--grid")) config.grid = grid;
    }
    config.antithetic = !no_antithetic;
    config.control_variate = !no_control_variate;
    return run(config, out, err);
}

}  // namespace heatindex::cli
