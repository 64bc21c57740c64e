/* induced.hpp -- word sets, the induced automaton on R = Q.W1 with composite
 * letters W2 W1, completeness tests, and the algebraic synchronization check.
 */

#ifndef SYNKIT_INDUCED_HPP_
#define SYNKIT_INDUCED_HPP_

#include <optional>
#include <vector>

#include "synkit/automaton.hpp"
#include "synkit/linalg.hpp"

namespace synkit {

/// A finite non-empty set of words in canonical (length, lex) order, with an
/// optional positive probability distribution aligned to the words.
struct WordSet {
    std::vector<Word> words;
    std::optional<std::vector<Rat>> dist;

    /// Sorts canonically and deduplicates; drops the distribution if present.
    static WordSet of(std::vector<Word> ws);

    /// All words of length <= d over k letters (canonical order).
    static WordSet all_up_to(std::size_t k, std::size_t d);

    WordSet with_uniform_dist() const;

    std::size_t size() const { return words.size(); }
    std::size_t max_length() const;
    bool contains(const Word& w) const;

    /// Non-empty, all letters < k, distribution (when present) positive with sum 1.
    void validate(const Automaton& a) const;
};

/// Merge preserving canonical order; distributions are dropped.
WordSet union_of(const WordSet& x, const WordSet& y);

/// The automaton on R = Q.W1 whose letters are the composite words W2 W1,
/// deduplicated by their action on R.
struct InducedAutomaton {
    Automaton base;
    std::vector<State> states;  // members of R, ascending base-state ids
    StateSet r_set;             // R over the base state range
    std::vector<Word> letters;  // composite words, enumeration order, action-deduplicated
    std::vector<State> table;   // r x L, entries are R-indices

    std::size_t r() const { return states.size(); }
    std::size_t num_letters() const { return letters.size(); }
    State next(std::size_t r_index, std::size_t letter) const {
        return table[r_index * letters.size() + letter];
    }
    std::size_t index_of(State base_state) const;
};

/// Builds A_c(W1, W2). Composite letters are enumerated as (w2, w1) in
/// canonical order of each factor and deduplicated by action, keeping the
/// first (hence smallest) label.
InducedAutomaton build_induced(const Automaton& a, const WordSet& w1, const WordSet& w2);

/// The r x r transition matrix of the Markov chain on R, from positive
/// distributions p1 on W1 and p2 on W2 (uniform when absent). Row-stochastic.
RatMat induced_markov(const InducedAutomaton& b, const WordSet& w1, const WordSet& w2);

/// [P] = sum_w P(w) [w] of a distributed word set, as an n x n matrix.
RatMat wordset_matrix(const Automaton& a, const WordSet& ws);

/// True iff span{ alpha [w] : w in ws } equals the coordinate subspace of
/// `v_states`, checked exactly.
bool is_complete(const Automaton& a, const WordSet& ws, const RatVec& alpha,
                 const StateSet& v_states);

/// First w in ws (canonical order) with (x, alpha [w]) > (x, alpha).
/// Throws CriterionError when no such word exists.
Word find_extension_word(const Automaton& a, const RatVec& x, const RatVec& alpha,
                         const WordSet& ws);

/// Algebraic synchronization check for strongly connected automata: computes
/// the stationary distribution of the letter chain and tests completeness of
/// the reduced word set of all words of length < n.
bool criterion_synchronizing(const Automaton& a, const LetterDistribution& p);

} // namespace synkit

#endif // SYNKIT_INDUCED_HPP_
