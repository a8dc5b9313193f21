#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatindex/clifford.hpp"
#include "heatindex/curvature.hpp"
#include "heatindex/index_density.hpp"
#include "heatindex/moments.hpp"
#include "heatindex/paths.hpp"
#include "heatindex/semigroup.hpp"

namespace py = pybind11;
using namespace heatindex;

namespace {

using WordTuple = std::vector<int>;

Grading parse_grading(const std::string& name) {
    if (name == "time_weighted") return Grading::time_weighted;
    if (name == "length") return Grading::length;
    throw std::invalid_argument("grading must be 'time_weighted' or 'length'");
}

py::dict series_to_dict(const TensorSeries& s) {
    py::dict out;
    for (std::size_t k = 0; k < s.basis().size(); ++k) {
        out[py::tuple(py::cast(s.basis().word(k).letters()))] = s.coefficient(k);
    }
    return out;
}

PathSample as_path(const RowMatrix& values) {
    if (values.rows() < 2 || values.cols() < 2) throw std::invalid_argument("path needs >= 2 rows and a time column");
    PathSample path;
    path.dim = static_cast<int>(values.cols()) - 1;
    path.horizon = values(values.rows() - 1, 0) - values(0, 0);
    path.level = -1;
    path.values = values;
    return path;
}

CliffordElement as_clifford(int dim, const Eigen::VectorXcd& coeffs) {
    CliffordElement a(dim);
    if (static_cast<std::size_t>(coeffs.size()) != a.size()) throw std::invalid_argument("expected 2^dim coefficients");
    for (CliffordElement::Blade m = 0; m < a.size(); ++m) a[m] = coeffs[m];
    return a;
}

Eigen::VectorXcd to_vector(const CliffordElement& a) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
    for (CliffordElement::Blade m = 0; m < a.size(); ++m) v[m] = a[m];
    return v;
}

CurvatureTensor curvature(const std::string& spec, int dim) { return make_curvature(parse_curvature_spec(spec), dim); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chen-series heat semigroup approximations and local index densities";

    m.def("sample_brownian", [](int dim, double t, int level, std::uint64_t seed) {
        Rng rng(seed);
        return sample_brownian(dim, t, level, rng).values;
    }, py::arg("dim"), py::arg("t"), py::arg("level"), py::arg("seed"),
       "Brownian path on 2^level segments; column 0 is time.");
    m.def("sample_bridge", [](int dim, double t, int level, std::uint64_t seed) {
        Rng rng(seed);
        return sample_bridge(dim, t, level, rng).values;
    }, py::arg("dim"), py::arg("t"), py::arg("level"), py::arg("seed"));

    m.def("signature", [](const RowMatrix& path, int cap, const std::string& grading) {
        return series_to_dict(signature(as_path(path), cap, parse_grading(grading)));
    }, py::arg("path"), py::arg("cap"), py::arg("grading") = "time_weighted",
       "Truncated signature of a piecewise-linear path, keyed by word tuples.");
    m.def("chen_strichartz", [](const RowMatrix& path, int cap) {
        const ChenCoefficients lambda = chen_strichartz(as_path(path), cap);
        py::dict out;
        for (std::size_t k = 1; k < lambda.basis().size(); ++k) {
            out[py::tuple(py::cast(lambda.basis().word(k).letters()))] = lambda.value(k);
        }
        return out;
    }, py::arg("path"), py::arg("cap"));
    m.def("chen_discrepancy", [](const RowMatrix& path, int cap) {
        const TensorSeries sig = signature(as_path(path), cap);
        return max_abs_difference(ts_exp(lie_series(chen_strichartz(sig))), sig);
    }, py::arg("path"), py::arg("cap"), "max |exp(Σ Λ_I X_I) - S| over the truncation.");
    m.def("levy_area", [](const RowMatrix& path, int i, int j) { return levy_area(as_path(path), i, j); },
          py::arg("path"), py::arg("i"), py::arg("j"));

    m.def("in_concat_set", [](const WordTuple& w) { return in_concat_set(Word(w)); }, py::arg("word"));
    m.def("stratonovich_moment", [](const WordTuple& w, double t) { return stratonovich_moment(Word(w), t); },
          py::arg("word"), py::arg("t"));
    m.def("moment_table", [](int dim, int cap, double t, const std::string& grading) {
        std::vector<std::pair<WordTuple, double>> rows;
        for (const auto& e : moment_table(dim, cap, t, parse_grading(grading)).entries) {
            rows.emplace_back(e.word.letters(), e.expectation);
        }
        return rows;
    }, py::arg("dim"), py::arg("cap"), py::arg("t") = 1.0, py::arg("grading") = "time_weighted");
    m.def("monte_carlo_moments", [](int dim, int cap, double t, std::size_t samples, int level, std::uint64_t seed,
                                    const std::string& grading, int threads) {
        MomentSampling s{samples, level, seed, threads};
        std::vector<py::dict> rows;
        for (const auto& e : monte_carlo_moments(dim, cap, parse_grading(grading), t, s)) {
            py::dict row;
            row["word"] = py::tuple(py::cast(e.word.letters()));
            row["closed_form"] = e.closed_form;
            row["mean"] = e.mean;
            row["stderr"] = e.stderr_of_mean;
            rows.push_back(row);
        }
        return rows;
    }, py::arg("dim"), py::arg("cap"), py::arg("t") = 1.0, py::arg("samples") = 100000, py::arg("level") = 10,
       py::arg("seed") = 1, py::arg("grading") = "time_weighted", py::arg("threads") = 0);

    m.def("random_matrix_model", [](int dim, Eigen::Index size, std::uint64_t seed) {
        return random_matrix_model(dim, size, seed).generators();
    }, py::arg("dim"), py::arg("size"), py::arg("seed"), "Generators [A_0, A_1, ..., A_d].");
    m.def("exact_semigroup", [](const std::vector<Eigen::MatrixXd>& gens, double t) {
        return exact_semigroup(MatrixModel(gens), t);
    }, py::arg("generators"), py::arg("t"));
    m.def("taylor_reference", [](const std::vector<Eigen::MatrixXd>& gens, double t, int n) {
        return taylor_reference(MatrixModel(gens), t, n);
    }, py::arg("generators"), py::arg("t"), py::arg("N"));
    m.def("approx_semigroup", [](const std::vector<Eigen::MatrixXd>& gens, double t, int n, std::size_t samples,
                                 int level, std::uint64_t seed, bool antithetic, bool control_variate, int threads) {
        SemigroupSampling s{samples, level, seed, threads, antithetic, control_variate};
        const SemigroupEstimate e = approx_semigroup(MatrixModel(gens), t, n, s);
        return py::make_tuple(e.mean, e.stderr_of_mean);
    }, py::arg("generators"), py::arg("t"), py::arg("N"), py::arg("samples") = 100000, py::arg("level") = 10,
       py::arg("seed") = 1, py::arg("antithetic") = true, py::arg("control_variate") = true, py::arg("threads") = 0,
       "Monte-Carlo estimate of the degree-N approximation; returns (mean, entrywise stderr).");
    m.def("convergence_study", [](const std::vector<Eigen::MatrixXd>& gens, int n, const std::vector<double>& times,
                                  std::size_t samples, int level, std::uint64_t seed, bool antithetic,
                                  bool control_variate, int threads) {
        SemigroupSampling s{samples, level, seed, threads, antithetic, control_variate};
        const ConvergenceReport r = convergence_study(MatrixModel(gens), n, times, s);
        py::dict out;
        out["fitted_order"] = r.fitted_order;
        out["taylor_fitted_order"] = r.taylor_fitted_order;
        std::vector<py::dict> points;
        for (const auto& p : r.points) {
            py::dict d;
            d["t"] = p.t;
            d["error"] = p.error;
            d["stderr"] = p.stderr_norm;
            d["taylor_error"] = p.taylor_error;
            d["noise_dominated"] = p.noise_dominated;
            points.push_back(d);
        }
        out["points"] = points;
        return out;
    }, py::arg("generators"), py::arg("N"), py::arg("times"), py::arg("samples") = 100000, py::arg("level") = 10,
       py::arg("seed") = 1, py::arg("antithetic") = true, py::arg("control_variate") = true, py::arg("threads") = 0);

    m.def("clifford_product", [](int dim, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        return to_vector(as_clifford(dim, a) * as_clifford(dim, b));
    }, py::arg("dim"), py::arg("a"), py::arg("b"), "Product of two elements given by 2^dim blade coefficients.");
    m.def("supertrace", [](int dim, const Eigen::VectorXcd& a) { return supertrace(as_clifford(dim, a)); },
          py::arg("dim"), py::arg("a"));
    m.def("d_map", [](const Eigen::MatrixXd& psi) { return to_vector(d_map(SkewMatrix(psi))); }, py::arg("psi"));

    m.def("a_genus_top", [](int dim, const std::string& spec) { return a_genus_top(curvature(spec, dim)); },
          py::arg("dim"), py::arg("curvature"));
    m.def("index_normalization", &index_normalization, py::arg("dim"));
    m.def("verify_local_index", [](int dim, const std::string& spec, std::size_t samples, int level,
                                   std::uint64_t seed, int threads) {
        DensitySampling s;
        s.samples = samples;
        s.level = level;
        s.seed = seed;
        s.threads = threads;
        const LocalIndexCheck c = verify_local_index(curvature(spec, dim), s);
        py::dict out;
        out["mc_value"] = c.estimate.value;
        out["mc_stderr"] = c.estimate.stderr_of_mean;
        out["agenus_top"] = c.agenus_top;
        out["expected"] = c.expected;
        out["discrepancy"] = c.discrepancy;
        out["tolerance"] = c.tolerance;
        out["cancellation_failures"] = c.estimate.cancellation_failures;
        out["pass"] = c.pass;
        return out;
    }, py::arg("dim"), py::arg("curvature"), py::arg("samples") = 200000, py::arg("level") = 10, py::arg("seed") = 1,
       py::arg("threads") = 0);
}
