/* linalg.hpp -- exact rational vectors and matrices: word matrices, Markov
 * chains, stationary distributions, spans, primitivity, distinct subset sums.
 *
 * Everything here is exact; no floating point appears anywhere in the
 * certificate path.
 */

#ifndef SYNKIT_LINALG_HPP_
#define SYNKIT_LINALG_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "synkit/automaton.hpp"
#include "synkit/rational.hpp"

namespace synkit {

using RatVec = std::vector<Rat>;

/// Dense rational matrix, row-major.
class RatMat {
public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMat operator*(const RatMat& other) const;
    RatMat operator+(const RatMat& other) const;
    RatMat scaled(const Rat& c) const;

    bool operator==(const RatMat& other) const = default;

    /// Every row sums to 1 with non-negative entries.
    bool is_row_stochastic() const;

    /// Flattened copy of all entries, row-major.
    RatVec flatten() const { return a_; }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// x * M for a row vector x.
RatVec mul_row(const RatVec& x, const RatMat& m);

/// Inner product.
Rat dot(const RatVec& x, const RatVec& y);

/// 0/1 characteristic vector of a state set.
RatVec characteristic_vec(const StateSet& s);

/// The 0/1 row-stochastic matrix of a word: entry (q, q.w) = 1.
RatMat word_matrix(const Automaton& a, const Word& w);

/// alpha * [w] computed in O(n |w|), without materializing the matrix.
RatVec vec_after_word(const Automaton& a, const RatVec& v, const Word& w);

/// Positive probability distribution on the letters.
struct LetterDistribution {
    std::vector<Rat> p;

    static LetterDistribution uniform(std::size_t k);
    void validate(std::size_t k) const; // all > 0, sum 1
};

/// Transition matrix of the Markov chain: sum_a P(a) [a].
RatMat markov_matrix(const Automaton& a, const LetterDistribution& p);

// -- exact linear solving -----------------------------------------------------

struct LinearSolution {
    bool consistent;
    RatVec x;              // particular solution with free variables zeroed
    std::size_t rank;
    std::size_t free_vars;
};

/// Solves A x = b exactly by Gauss-Jordan elimination with leading-entry
/// pivoting (first row with a nonzero entry wins). Free variables are zeroed.
LinearSolution solve_exact(const std::vector<RatVec>& rows, const RatVec& rhs);

/// Exact determinant of a square matrix.
Rat det_exact(const RatMat& m);

struct StationaryResult {
    RatVec alpha;  // non-negative, stochastic, alpha * m = alpha
    bool unique;   // false when the fixed-point space has dimension > 1
};

/// One exact stationary distribution of a row-stochastic matrix, solved from
/// the stationarity equations plus normalization. Unique and positive when the
/// matrix is primitive.
StationaryResult stationary_distribution(const RatMat& m);

// -- spans ----------------------------------------------------------------------

/// Incremental exact span tracker; rows are kept in reduced echelon form.
class SpanBasis {
public:
    explicit SpanBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    bool contains(const RatVec& v) const;

    /// Adds v to the span; returns true when the rank grew.
    bool insert(const RatVec& v);

    const std::vector<RatVec>& basis() const { return rows_; }

private:
    RatVec reduce(RatVec v) const;

    std::size_t dim_;
    std::vector<RatVec> rows_;
    std::vector<std::size_t> pivots_; // pivot column of each row, strictly increasing
};

std::size_t span_rank(const std::vector<RatVec>& vs);
bool in_span(const RatVec& v, const std::vector<RatVec>& vs);

// -- primitivity -----------------------------------------------------------------

/// True iff the ((r-1)^2 + 1)-th boolean power of the nonzero pattern is
/// entrywise positive, r being the matrix dimension. Requires non-negative input.
bool is_primitive(const RatMat& m);

/// Same test on the submatrix indexed by `idx` (rows and columns).
bool is_primitive(const RatMat& m, const std::vector<std::size_t>& idx);

/// Boolean-pattern variant used by reductions; rows are bitsets of length r.
bool is_primitive_pattern(const std::vector<boost::dynamic_bitset<std::uint64_t>>& pattern);

// -- distinct subset sums ---------------------------------------------------------

/// Cap on the accumulated set of distinct sums.
inline constexpr std::size_t kDsCap = std::size_t{1} << 20;

/// Number of distinct positive subset sums of a non-negative vector.
/// Throws DsCapError carrying the trivial bound 2^n - 1 when the accumulated
/// set outgrows the cap.
std::size_t ds_count(const RatVec& g);

} // namespace synkit

#endif // SYNKIT_LINALG_HPP_
