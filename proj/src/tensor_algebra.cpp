#include "heatindex/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace heatindex {

namespace {

constexpr std::size_t kMaxDenseSize = std::size_t{1} << 24;
constexpr double kConstantTermTolerance = 1e-12;

}  // namespace

Word::Word(std::initializer_list<int> letters) : Word(std::vector<int>(letters)) {}

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int letter : letters_) {
        if (letter < 0) {
            throw std::invalid_argument("Word: letters must be non-negative");
        }
    }
}

int Word::zeros() const {
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), 0));
}

int Word::degree() const { return static_cast<int>(letters_.size()) + zeros(); }

int Word::max_letter() const {
    return letters_.empty() ? -1 : *std::max_element(letters_.begin(), letters_.end());
}

Word Word::concat(const Word& other) const {
    std::vector<int> letters = letters_;
    letters.insert(letters.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(letters));
}

Word Word::subword(std::size_t first, std::size_t count) const {
    auto from = letters_.begin() + static_cast<std::ptrdiff_t>(first);
    return Word(std::vector<int>(from, from + static_cast<std::ptrdiff_t>(count)));
}

std::string Word::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < letters_.size(); ++k) {
        if (k) out << ',';
        out << letters_[k];
    }
    out << ')';
    return out.str();
}

int word_degree(const Word& word) { return word.degree(); }

// ---------------------------------------------------------------------------
// WordBasis

WordBasis::WordBasis(int dim, int cap, Grading grading) : dim_(dim), cap_(cap), grading_(grading) {
    if (dim < 0) throw std::invalid_argument("WordBasis: dimension must be non-negative");
    if (cap < 0) throw std::invalid_argument("WordBasis: degree cap must be non-negative");

    const std::size_t a = static_cast<std::size_t>(alphabet());
    // Every retained word has length <= cap under either grading.
    std::size_t level_size = 1;
    for (int len = 0; len <= cap; ++len) {
        dense_size_ += level_size;
        if (dense_size_ > kMaxDenseSize) {
            throw std::invalid_argument("WordBasis: truncation too large");
        }
        level_size *= a;
    }
    dense_to_index_.assign(dense_size_, -1);

    std::size_t offset = 0;
    level_size = 1;
    std::vector<int> letters;
    for (int len = 0; len <= cap; ++len) {
        letters.assign(static_cast<std::size_t>(len), 0);
        for (std::size_t number = 0; number < level_size; ++number) {
            // letters = base-a digits of number, most significant first
            std::size_t rest = number;
            for (int k = len - 1; k >= 0; --k) {
                letters[static_cast<std::size_t>(k)] = static_cast<int>(rest % a);
                rest /= a;
            }
            Word word(letters);
            const int w = weight(word);
            if (w <= cap) {
                dense_to_index_[offset + number] = static_cast<std::ptrdiff_t>(words_.size());
                dense_position_.push_back(offset + number);
                weights_.push_back(w);
                words_.push_back(std::move(word));
            }
        }
        offset += level_size;
        level_size *= a;
    }

    split_offsets_.reserve(words_.size() + 1);
    split_offsets_.push_back(0);
    for (const Word& word : words_) {
        for (std::size_t j = 0; j <= word.size(); ++j) {
            const auto prefix = find(word.subword(0, j));
            const auto suffix = find(word.subword(j, word.size() - j));
            splits_.push_back({*prefix, *suffix});
        }
        split_offsets_.push_back(splits_.size());
    }
}

std::shared_ptr<const WordBasis> WordBasis::get(int dim, int cap, Grading grading) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, Grading>, std::shared_ptr<const WordBasis>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(dim, cap, grading);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_shared<const WordBasis>(dim, cap, grading)).first;
    }
    return it->second;
}

int WordBasis::weight(const Word& word) const {
    return grading_ == Grading::length ? static_cast<int>(word.size()) : word.degree();
}

std::optional<std::size_t> WordBasis::find(const Word& word) const {
    if (static_cast<int>(word.size()) > cap_ || word.max_letter() > dim_) return std::nullopt;
    const std::size_t a = static_cast<std::size_t>(alphabet());
    std::size_t offset = 0;
    std::size_t level_size = 1;
    for (std::size_t len = 0; len < word.size(); ++len) {
        offset += level_size;
        level_size *= a;
    }
    std::size_t number = 0;
    for (int letter : word) number = number * a + static_cast<std::size_t>(letter);
    const std::ptrdiff_t index = dense_to_index_[offset + number];
    if (index < 0) return std::nullopt;
    return static_cast<std::size_t>(index);
}

std::span<const WordBasis::Split> WordBasis::splits(std::size_t index) const {
    return std::span<const Split>(splits_).subspan(split_offsets_[index],
                                                   split_offsets_[index + 1] - split_offsets_[index]);
}

// ---------------------------------------------------------------------------
// TensorSeries

TensorSeries::TensorSeries(BasisPtr basis) : basis_(std::move(basis)), coeffs_(basis_->size(), 0.0) {}

TensorSeries::TensorSeries(BasisPtr basis, std::vector<double> coefficients)
    : basis_(std::move(basis)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != basis_->size()) {
        throw std::invalid_argument("TensorSeries: coefficient count does not match basis");
    }
}

TensorSeries TensorSeries::unit(BasisPtr basis) {
    TensorSeries s(std::move(basis));
    s.coeffs_[0] = 1.0;
    return s;
}

TensorSeries TensorSeries::letter(BasisPtr basis, int i) { return monomial(std::move(basis), Word{i}); }

TensorSeries TensorSeries::monomial(BasisPtr basis, const Word& word, double value) {
    TensorSeries s(std::move(basis));
    s.set(word, value);
    return s;
}

double TensorSeries::operator[](const Word& word) const {
    const auto index = basis_->find(word);
    return index ? coeffs_[*index] : 0.0;
}

void TensorSeries::set(const Word& word, double value) {
    const auto index = basis_->find(word);
    if (!index) throw std::out_of_range("TensorSeries: word " + word.str() + " exceeds the truncation");
    coeffs_[*index] = value;
}

void TensorSeries::add_to(const Word& word, double value) {
    const auto index = basis_->find(word);
    if (!index) throw std::out_of_range("TensorSeries: word " + word.str() + " exceeds the truncation");
    coeffs_[*index] += value;
}

double TensorSeries::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

void TensorSeries::require_same_basis(const TensorSeries& other) const {
    if (basis_ != other.basis_) {
        throw std::invalid_argument("TensorSeries: operands have different truncations");
    }
}

TensorSeries& TensorSeries::operator+=(const TensorSeries& other) {
    require_same_basis(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

TensorSeries& TensorSeries::operator-=(const TensorSeries& other) {
    require_same_basis(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

TensorSeries& TensorSeries::operator*=(double scalar) {
    for (double& c : coeffs_) c *= scalar;
    return *this;
}

TensorSeries operator*(const TensorSeries& a, const TensorSeries& b) {
    a.require_same_basis(b);
    const WordBasis& basis = a.basis();
    TensorSeries result(a.basis_);
    for (std::size_t w = 0; w < basis.size(); ++w) {
        double sum = 0.0;
        for (const auto& split : basis.splits(w)) sum += a.coeffs_[split.prefix] * b.coeffs_[split.suffix];
        result.coeffs_[w] = sum;
    }
    return result;
}

TensorSeries ts_mul(const TensorSeries& a, const TensorSeries& b) { return a * b; }

TensorSeries ts_bracket(const TensorSeries& a, const TensorSeries& b) { return a * b - b * a; }

TensorSeries ts_exp(const TensorSeries& a) {
    if (std::abs(a.constant_term()) > kConstantTermTolerance) {
        throw std::domain_error("ts_exp: argument must have zero constant term");
    }
    TensorSeries x = a;
    x.coefficients()[0] = 0.0;
    TensorSeries result = TensorSeries::unit(a.basis_ptr());
    TensorSeries term = result;
    // x is nilpotent of order cap+1
    for (int k = 1; k <= a.cap(); ++k) {
        term = term * x;
        term *= 1.0 / k;
        result += term;
    }
    return result;
}

TensorSeries ts_log(const TensorSeries& a) {
    if (std::abs(a.constant_term() - 1.0) > kConstantTermTolerance) {
        throw std::domain_error("ts_log: argument must have constant term 1");
    }
    TensorSeries x = a;
    x.coefficients()[0] = 0.0;
    TensorSeries result(a.basis_ptr());
    TensorSeries power = TensorSeries::unit(a.basis_ptr());
    for (int k = 1; k <= a.cap(); ++k) {
        power = power * x;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        result += power * (sign / k);
    }
    return result;
}

TensorSeries commutator_expand(const Word& word, BasisPtr basis) {
    if (word.empty()) throw std::invalid_argument("commutator_expand: empty word");
    if (!basis->find(word)) {
        throw std::out_of_range("commutator_expand: word " + word.str() + " exceeds the truncation");
    }
    TensorSeries inner = TensorSeries::letter(basis, word[word.size() - 1]);
    for (std::size_t k = word.size() - 1; k-- > 0;) {
        inner = ts_bracket(TensorSeries::letter(basis, word[k]), inner);
    }
    return inner;
}

double max_abs_difference(const TensorSeries& a, const TensorSeries& b) { return (a - b).max_abs(); }

}  // namespace heatindex
