/* synthesis.hpp -- reset-word synthesis with certified length bounds:
 * greedy extension, greedy compression, the reduction procedures, the
 * small-rank pipeline and the completeness/primitivity combination.
 */

#ifndef SYNKIT_SYNTHESIS_HPP_
#define SYNKIT_SYNTHESIS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synkit/automaton.hpp"
#include "synkit/induced.hpp"
#include "synkit/linalg.hpp"

namespace synkit {

/// A reset word together with the name and value of the length bound that the
/// producing method certifies. Construction re-verifies rank 1 and the bound.
struct ResetCertificate {
    Word word;
    std::string bound_name;
    std::int64_t bound_value = 0;
    std::vector<Word> steps; // synthesis trace: chosen extension/compression words
    std::optional<std::int64_t> pair_compression_bound;

    std::string serialize(const Automaton& a) const;
};

/// Verifies rank 1 and |word| <= bound, then assembles the record.
/// Throws InternalError on failure.
ResetCertificate make_certificate(const Automaton& a, Word word, std::string bound_name,
                                  std::int64_t bound_value, std::vector<Word> steps);

/// Greedy extension: starting from a single state of R = Q.W1, repeatedly
/// applies a composite word from W2 W1 that strictly increases the
/// alpha-mass of the preimage, until the preimage is all of R; the result is
/// w0 followed by the chosen words in reverse order.
ResetCertificate greedy_extension(const Automaton& a, const WordSet& w1, const WordSet& w2,
                                  const RatVec& alpha, const Word& w0);

/// Greedy pairwise compression: repeatedly appends a shortest word (taken
/// from the pair BFS) compressing the current image, until it is a singleton.
ResetCertificate greedy_compression(const Automaton& a);

/// Subset of all words of length <= d whose word matrices span the same
/// matrix space; at most n^2 words, lengths at most min(d, n-1).
WordSet reduce_general(const Automaton& a, std::size_t d);

/// Vector-space variant: spans { alpha [w] } instead; at most n words.
WordSet reduce_alpha(const Automaton& a, std::size_t d, const RatVec& alpha);

struct AlphaReduction {
    WordSet words;
    std::size_t rank;                          // final span dimension
    std::optional<std::size_t> full_rank_level; // first length where rank hit `target`
};

/// reduce_alpha with tracking of the first level at which the span reached
/// `target_rank` (used to find minimal completeness lengths).
AlphaReduction reduce_alpha_detail(const Automaton& a, std::size_t d, const RatVec& alpha,
                                   std::size_t target_rank);

/// Keeps W subset of words of length <= d with W W1 primitive on R = Q.W1.
WordSet reduce_primitive(const Automaton& a, const WordSet& w1, std::size_t d);

enum class ReduceMode { General, Alpha };

/// Reduction over an arbitrary factor-closed word set instead of all words up
/// to a length. `alpha` is required in Alpha mode.
WordSet reduce_factor_closed(const Automaton& a, const WordSet& ws, ReduceMode mode,
                             const RatVec* alpha = nullptr);

/// True iff deleting any contiguous factor of any member stays in the set.
bool is_factor_closed(const WordSet& ws);

/// Small-rank pipeline: given a word w of rank r, finds the smallest valid d,
/// builds the induced automaton on Q.w with composite letters (reduced words
/// of length <= d concatenated with w), compresses it exactly, and certifies
/// the r-dependent cubic/quadratic bound.
ResetCertificate small_rank_pipeline(const Automaton& a, const Word& w);

/// Raw synthesis result of the small-rank route, before a bound is attached.
struct RankSynthesis {
    Word word;
    std::vector<Word> steps;
    std::size_t d = 0; // certified completeness/reachability length
    std::size_t r = 0; // |Q.w|
};

/// The engine behind small_rank_pipeline. `pin_refinement` compresses Q.w by
/// a direct shortest word before switching to composite letters; `exact_bfs`
/// replaces per-step greedy compression with one optimal subset search.
RankSynthesis synthesize_via_small_rank(const Automaton& a, const Word& w, bool pin_refinement,
                                        bool exact_bfs = false);

struct CombineResult {
    InducedAutomaton c;  // A_c(W1, W union W2)
    Rat delta;           // certified mixing weight with det != 0
    RatVec beta;         // stationary distribution at delta, over the base states
    std::vector<Word> d_rows; // words whose beta-images witness the nonzero determinant
};

/// Completeness/primitivity combination: certifies a mixing weight delta in
/// (0,1) whose perturbed stationary distribution keeps the chosen W-rows
/// independent (exact nonzero determinant), by halving from 1/2.
CombineResult combine_complete_primitive(const Automaton& a, const WordSet& w1,
                                         const WordSet& w2, const WordSet& w);

// -- helpers shared with other modules -------------------------------------------

/// Saturating int64 arithmetic for bound values.
std::int64_t sat_add(std::int64_t x, std::int64_t y);
std::int64_t sat_mul(std::int64_t x, std::int64_t y);

/// DS(alpha) - 1 capped into int64: upper bound on greedy extension steps.
std::int64_t ds_bound_minus_one(const RatVec& alpha);

} // namespace synkit

#endif // SYNKIT_SYNTHESIS_HPP_
