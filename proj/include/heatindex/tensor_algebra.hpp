#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heatindex {

/// A word over the alphabet {0, 1, ..., d}. Letter 0 stands for the time
/// direction and is counted twice by degree().
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters);
    explicit Word(std::vector<int> letters);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t k) const { return letters_[k]; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }
    const std::vector<int>& letters() const { return letters_; }

    /// Number of zeros in the word.
    int zeros() const;
    /// |I| + n(I).
    int degree() const;
    int max_letter() const;

    Word concat(const Word& other) const;
    Word subword(std::size_t first, std::size_t count) const;

    /// "(0,1,1)"; the empty word prints as "()".
    std::string str() const;

    auto operator<=>(const Word&) const = default;

private:
    std::vector<int> letters_;
};

int word_degree(const Word& word);

/// How a truncated series measures the size of a word.
enum class Grading {
    time_weighted,  ///< |I| + n(I)
    length,         ///< |I|
};

/// The finite set of words retained by a truncation: alphabet {0..dim},
/// weight(I) <= cap. Bases are interned, so two series share a basis exactly
/// when they share a truncation.
class WordBasis {
public:
    struct Split {
        std::size_t prefix;
        std::size_t suffix;
    };

    static std::shared_ptr<const WordBasis> get(int dim, int cap, Grading grading = Grading::time_weighted);

    int dim() const { return dim_; }
    int alphabet() const { return dim_ + 1; }
    int cap() const { return cap_; }
    Grading grading() const { return grading_; }
    std::size_t size() const { return words_.size(); }

    const Word& word(std::size_t index) const { return words_[index]; }
    const std::vector<Word>& words() const { return words_; }
    int weight(const Word& word) const;
    int weight(std::size_t index) const { return weights_[index]; }

    /// Index of a word, or nullopt if it has a foreign letter or exceeds the cap.
    std::optional<std::size_t> find(const Word& word) const;

    /// Position of word `index` in the dense layout of all words of length <= cap,
    /// ordered by length and then lexicographically (base-(d+1) numbering).
    std::size_t dense_position(std::size_t index) const { return dense_position_[index]; }
    std::size_t dense_size() const { return dense_size_; }

    /// All factorizations w = uv, for every w in the basis.
    std::span<const Split> splits(std::size_t index) const;

    WordBasis(int dim, int cap, Grading grading);

private:
    int dim_;
    int cap_;
    Grading grading_;
    std::vector<Word> words_;
    std::vector<int> weights_;
    std::vector<std::size_t> dense_position_;
    std::vector<std::ptrdiff_t> dense_to_index_;
    std::size_t dense_size_ = 0;
    std::vector<Split> splits_;
    std::vector<std::size_t> split_offsets_;
};

using BasisPtr = std::shared_ptr<const WordBasis>;

/// Element of the free tensor algebra over X_0..X_d, truncated by a WordBasis.
class TensorSeries {
public:
    explicit TensorSeries(BasisPtr basis);
    TensorSeries(BasisPtr basis, std::vector<double> coefficients);

    static TensorSeries unit(BasisPtr basis);
    /// The generator X_i.
    static TensorSeries letter(BasisPtr basis, int i);
    /// The monomial X_{i_1}...X_{i_k} scaled by `value`.
    static TensorSeries monomial(BasisPtr basis, const Word& word, double value = 1.0);

    const WordBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    int cap() const { return basis_->cap(); }

    /// Coefficient of a word; zero for words outside the truncation.
    double operator[](const Word& word) const;
    double coefficient(std::size_t index) const { return coeffs_[index]; }
    /// Throws std::out_of_range if the word is not retained by the truncation.
    void set(const Word& word, double value);
    void add_to(const Word& word, double value);

    std::span<const double> coefficients() const { return coeffs_; }
    std::span<double> coefficients() { return coeffs_; }

    double constant_term() const { return coeffs_[0]; }
    double max_abs() const;

    TensorSeries& operator+=(const TensorSeries& other);
    TensorSeries& operator-=(const TensorSeries& other);
    TensorSeries& operator*=(double scalar);

    friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
    friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
    friend TensorSeries operator*(TensorSeries a, double s) { return a *= s; }
    friend TensorSeries operator*(double s, TensorSeries a) { return a *= s; }
    friend TensorSeries operator*(const TensorSeries& a, const TensorSeries& b);

private:
    void require_same_basis(const TensorSeries& other) const;

    BasisPtr basis_;
    std::vector<double> coeffs_;
};

/// Concatenation product; words beyond the cap are dropped.
TensorSeries ts_mul(const TensorSeries& a, const TensorSeries& b);
/// Requires a zero constant term.
TensorSeries ts_exp(const TensorSeries& a);
/// Requires constant term 1.
TensorSeries ts_log(const TensorSeries& a);
/// ab - ba
TensorSeries ts_bracket(const TensorSeries& a, const TensorSeries& b);

/// Right-nested bracket [X_{i1},[X_{i2},...,[X_{i(k-1)},X_{ik}]...]] expanded
/// into words of length k. The basis must retain the word itself.
TensorSeries commutator_expand(const Word& word, BasisPtr basis);

double max_abs_difference(const TensorSeries& a, const TensorSeries& b);

}  // namespace heatindex
