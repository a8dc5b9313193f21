#include "heatindex/paths.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace heatindex {

namespace {

constexpr int kMaxGridLevel = 24;

void validate_sampling(int dim, double t, int level) {
    if (dim < 1) throw std::invalid_argument("sampling: dimension must be at least 1");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("sampling: horizon must be positive");
    if (level < 0 || level > kMaxGridLevel) throw std::invalid_argument("sampling: grid level out of range");
}

PathSample empty_path(int dim, double t, int level) {
    validate_sampling(dim, t, level);
    PathSample path;
    path.dim = dim;
    path.horizon = t;
    path.level = level;
    const Eigen::Index n = Eigen::Index{1} << level;
    path.values.resize(n + 1, dim + 1);
    for (Eigen::Index m = 0; m <= n; ++m) path.values(m, 0) = std::ldexp(static_cast<double>(m) * t, -level);
    return path;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return c;
}

}  // namespace

void resample_brownian(PathSample& path, Rng& rng) {
    validate_sampling(path.dim, path.horizon, path.level);
    const Eigen::Index n = Eigen::Index{1} << path.level;
    if (path.values.rows() != n + 1 || path.values.cols() != path.dim + 1) {
        path = empty_path(path.dim, path.horizon, path.level);
    }
    const double step_sd = std::sqrt(std::ldexp(path.horizon, -path.level));
    std::normal_distribution<double> normal(0.0, step_sd);
    path.values.row(0).setZero();
    for (Eigen::Index m = 1; m <= n; ++m) {
        for (int i = 1; i <= path.dim; ++i) path.values(m, i) = path.values(m - 1, i) + normal(rng);
    }
    path.bridge = false;
}

void resample_bridge(PathSample& path, Rng& rng) {
    resample_brownian(path, rng);
    const Eigen::Index n = path.values.rows() - 1;
    for (int i = 1; i <= path.dim; ++i) {
        const double end = path.values(n, i);
        for (Eigen::Index m = 1; m <= n; ++m) {
            path.values(m, i) -= (path.values(m, 0) / path.horizon) * end;
        }
    }
    path.bridge = true;
}

PathSample sample_brownian(int dim, double t, int level, Rng& rng) {
    PathSample path = empty_path(dim, t, level);
    resample_brownian(path, rng);
    return path;
}

PathSample sample_bridge(int dim, double t, int level, Rng& rng) {
    PathSample path = empty_path(dim, t, level);
    resample_bridge(path, rng);
    return path;
}

PathSample path_through(const RowMatrix& spatial_points, double t) {
    if (spatial_points.rows() < 2 || spatial_points.cols() < 1) {
        throw std::invalid_argument("path_through: need at least two points in dimension >= 1");
    }
    if (!spatial_points.row(0).isZero(0.0)) throw std::invalid_argument("path_through: path must start at 0");
    if (!(t > 0.0)) throw std::invalid_argument("path_through: horizon must be positive");
    PathSample path;
    path.dim = static_cast<int>(spatial_points.cols());
    path.horizon = t;
    const Eigen::Index n = spatial_points.rows() - 1;
    path.level = (n & (n - 1)) == 0 ? static_cast<int>(std::log2(static_cast<double>(n))) : -1;
    path.values.resize(n + 1, path.dim + 1);
    for (Eigen::Index m = 0; m <= n; ++m) path.values(m, 0) = t * static_cast<double>(m) / static_cast<double>(n);
    path.values.rightCols(path.dim) = spatial_points;
    return path;
}

PathSample concatenate(const PathSample& a, const PathSample& b) {
    if (a.dim != b.dim) throw std::invalid_argument("concatenate: dimension mismatch");
    PathSample path;
    path.dim = a.dim;
    path.horizon = a.horizon + b.horizon;
    path.level = -1;
    const Eigen::Index na = a.values.rows();
    const Eigen::Index nb = b.values.rows();
    path.values.resize(na + nb - 1, a.dim + 1);
    path.values.topRows(na) = a.values;
    for (Eigen::Index m = 1; m < nb; ++m) {
        path.values.row(na - 1 + m) = a.values.row(na - 1) + (b.values.row(m) - b.values.row(0));
    }
    return path;
}

// ---------------------------------------------------------------------------
// SignatureEngine

SignatureEngine::SignatureEngine(int dim, int max_length)
    : dim_(dim), max_length_(max_length), alphabet_(static_cast<std::size_t>(dim) + 1) {
    if (dim < 0 || max_length < 0) throw std::invalid_argument("SignatureEngine: invalid shape");
    std::size_t size = 1;
    std::size_t total = 0;
    for (int k = 0; k <= max_length; ++k) {
        offsets_.push_back(total);
        total += size;
        if (k < max_length) size *= alphabet_;
    }
    offsets_.push_back(total);
    levels_.assign(total, 0.0);
    scratch_a_.assign(size, 0.0);
    scratch_b_.assign(size, 0.0);
    reset();
}

void SignatureEngine::reset() {
    std::fill(levels_.begin(), levels_.end(), 0.0);
    levels_[0] = 1.0;
}

void SignatureEngine::append(std::span<const double> x) {
    if (x.size() != alphabet_) throw std::invalid_argument("SignatureEngine::append: increment size mismatch");
    const std::size_t a = alphabet_;
    // Level k of S exp(x) is sum_{j<k} S_j x^{k-j}/(k-j)! + S_k, evaluated by
    // Horner from the top level down so lower levels are still the old ones.
    for (int k = max_length_; k >= 1; --k) {
        double* cur = scratch_a_.data();
        double* nxt = scratch_b_.data();
        const double inv_k = 1.0 / k;
        for (std::size_t c = 0; c < a; ++c) cur[c] = x[c] * inv_k;
        std::size_t width = a;
        for (int j = 1; j < k; ++j) {
            const double* level = levels_.data() + offsets_[static_cast<std::size_t>(j)];
            const double inv = 1.0 / (k - j);
            for (std::size_t p = 0; p < width; ++p) {
                const double v = (cur[p] + level[p]) * inv;
                double* out = nxt + p * a;
                for (std::size_t c = 0; c < a; ++c) out[c] = v * x[c];
            }
            width *= a;
            std::swap(cur, nxt);
        }
        double* target = levels_.data() + offsets_[static_cast<std::size_t>(k)];
        for (std::size_t p = 0; p < width; ++p) target[p] += cur[p];
    }
}

void SignatureEngine::append_path(const PathSample& path) {
    if (path.dim != dim_) throw std::invalid_argument("SignatureEngine: path dimension mismatch");
    std::vector<double> increment(alphabet_);
    for (Eigen::Index m = 0; m + 1 < path.values.rows(); ++m) {
        for (std::size_t c = 0; c < alphabet_; ++c) {
            const auto col = static_cast<Eigen::Index>(c);
            increment[c] = path.values(m + 1, col) - path.values(m, col);
        }
        append(increment);
    }
}

void SignatureEngine::project(const WordBasis& basis, std::span<double> out) const {
    if (basis.dim() != dim_ || basis.cap() > max_length_) {
        throw std::invalid_argument("SignatureEngine::project: basis not covered by this engine");
    }
    if (out.size() != basis.size()) throw std::invalid_argument("SignatureEngine::project: output size mismatch");
    for (std::size_t w = 0; w < basis.size(); ++w) out[w] = levels_[basis.dense_position(w)];
}

TensorSeries signature(const PathSample& path, int cap, Grading grading) {
    if (cap < 1) throw std::invalid_argument("signature: cap must be at least 1");
    auto basis = WordBasis::get(path.dim, cap, grading);
    SignatureEngine engine(path.dim, cap);
    engine.append_path(path);
    TensorSeries sig(basis);
    engine.project(*basis, sig.coefficients());
    return sig;
}

double iterated_integral(const TensorSeries& sig, const Word& word) {
    const auto index = sig.basis().find(word);
    if (!index) throw std::out_of_range("iterated_integral: word " + word.str() + " exceeds the signature cap");
    return sig.coefficient(*index);
}

double iterated_integral(const PathSample& path, const Word& word) {
    if (word.empty()) return 1.0;
    return iterated_integral(signature(path, word.degree()), word);
}

double levy_area(const PathSample& path, int i, int j) {
    if (i < 1 || j < 1 || i > path.dim || j > path.dim || i == j) {
        throw std::invalid_argument("levy_area: need distinct spatial indices in [1, d]");
    }
    const auto& v = path.values;
    double area = 0.0;
    // Left-point sums are exact here: the midpoint correction is symmetric in i, j.
    for (Eigen::Index m = 0; m + 1 < v.rows(); ++m) {
        const double xi = v(m, i) - v(0, i);
        const double xj = v(m, j) - v(0, j);
        area += xi * (v(m + 1, j) - v(m, j)) - xj * (v(m + 1, i) - v(m, i));
    }
    return area;
}

void levy_areas(const PathSample& path, std::span<double> out) {
    const int d = path.dim;
    if (out.size() != static_cast<std::size_t>(d * (d - 1) / 2)) {
        throw std::invalid_argument("levy_areas: output size must be d(d-1)/2");
    }
    std::fill(out.begin(), out.end(), 0.0);
    const auto& v = path.values;
    for (Eigen::Index m = 0; m + 1 < v.rows(); ++m) {
        std::size_t k = 0;
        for (int i = 1; i <= d; ++i) {
            const double xi = v(m, i) - v(0, i);
            const double di = v(m + 1, i) - v(m, i);
            for (int j = i + 1; j <= d; ++j, ++k) {
                out[k] += xi * (v(m + 1, j) - v(m, j)) - (v(m, j) - v(0, j)) * di;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Chen-Strichartz coefficients

int descents(std::span<const int> permutation) {
    int count = 0;
    for (std::size_t j = 0; j + 1 < permutation.size(); ++j) {
        if (permutation[j] > permutation[j + 1]) ++count;
    }
    return count;
}

StrichartzMap::StrichartzMap(const WordBasis& basis) {
    offsets_.push_back(0);
    offsets_.push_back(0);  // empty word
    for (std::size_t w = 1; w < basis.size(); ++w) {
        const Word& word = basis.word(w);
        const int k = static_cast<int>(word.size());
        if (k > kMaxStrichartzLength) {
            throw std::invalid_argument("chen_strichartz: words longer than 8 letters are not supported");
        }
        std::map<std::size_t, double> accumulated;
        std::vector<int> sigma(static_cast<std::size_t>(k));
        std::iota(sigma.begin(), sigma.end(), 0);
        std::vector<int> inverse(sigma.size());
        std::vector<int> letters(sigma.size());
        do {
            const int e = descents(sigma);
            const double weight = ((e % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(k) * k * binomial(k - 1, e));
            for (std::size_t j = 0; j < sigma.size(); ++j) inverse[static_cast<std::size_t>(sigma[j])] = static_cast<int>(j);
            // σ^{-1}(I) = (i_{σ^{-1}(1)}, ..., i_{σ^{-1}(k)})
            for (std::size_t j = 0; j < sigma.size(); ++j) letters[j] = word[static_cast<std::size_t>(inverse[j])];
            accumulated[*basis.find(Word(letters))] += weight;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        for (const auto& [source, weight] : accumulated) {
            if (weight != 0.0) terms_.push_back({source, weight});
        }
        offsets_.push_back(terms_.size());
    }
}

const StrichartzMap& StrichartzMap::get(const BasisPtr& basis) {
    static std::mutex mutex;
    static std::map<const WordBasis*, std::unique_ptr<StrichartzMap>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[basis.get()];
    if (!slot) slot = std::make_unique<StrichartzMap>(*basis);
    return *slot;
}

std::span<const StrichartzMap::Term> StrichartzMap::terms(std::size_t index) const {
    return std::span<const Term>(terms_).subspan(offsets_[index], offsets_[index + 1] - offsets_[index]);
}

void StrichartzMap::apply(std::span<const double> signature, std::span<double> lambda) const {
    const std::size_t n = offsets_.size() - 1;
    if (signature.size() != n || lambda.size() != n) throw std::invalid_argument("StrichartzMap: size mismatch");
    lambda[0] = 0.0;
    for (std::size_t w = 1; w < n; ++w) {
        double sum = 0.0;
        for (const Term& term : terms(w)) sum += term.weight * signature[term.source];
        lambda[w] = sum;
    }
}

ChenCoefficients::ChenCoefficients(BasisPtr basis, std::vector<double> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
    if (values_.size() != basis_->size()) throw std::invalid_argument("ChenCoefficients: size mismatch");
    values_[0] = 0.0;
}

double ChenCoefficients::operator[](const Word& word) const {
    if (word.empty()) throw std::invalid_argument("ChenCoefficients: no coefficient for the empty word");
    const auto index = basis_->find(word);
    if (!index) throw std::out_of_range("ChenCoefficients: word " + word.str() + " exceeds the cap");
    return values_[*index];
}

ChenCoefficients chen_strichartz(const TensorSeries& sig) {
    const auto& map = StrichartzMap::get(sig.basis_ptr());
    std::vector<double> lambda(sig.basis().size());
    map.apply(sig.coefficients(), lambda);
    return ChenCoefficients(sig.basis_ptr(), std::move(lambda));
}

ChenCoefficients chen_strichartz(const PathSample& path, int cap) {
    if (cap < 1) throw std::invalid_argument("chen_strichartz: cap must be at least 1");
    if (cap > kMaxStrichartzLength) {
        throw std::invalid_argument("chen_strichartz: words longer than 8 letters are not supported");
    }
    return chen_strichartz(signature(path, cap));
}

TensorSeries lie_series(const ChenCoefficients& lambda) {
    const WordBasis& basis = lambda.basis();
    TensorSeries series(lambda.basis_ptr());
    for (std::size_t w = 1; w < basis.size(); ++w) {
        if (lambda.value(w) == 0.0) continue;
        series += commutator_expand(basis.word(w), lambda.basis_ptr()) * lambda.value(w);
    }
    return series;
}

}  // namespace heatindex
