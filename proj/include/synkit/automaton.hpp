/* automaton.hpp -- complete DFAs, words, state sets, and the structural
 * operations on them (images, preimages, ranks, synchronization test,
 * strongly connected components).
 *
 * States and letters are 0-indexed everywhere, including serialization.
 */

#ifndef SYNKIT_AUTOMATON_HPP_
#define SYNKIT_AUTOMATON_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "synkit/errors.hpp"

namespace synkit {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A word is a sequence of letter indices; the empty vector is the empty word.
using Word = std::vector<Letter>;

/// Dense membership over 0..n-1.
using StateSet = boost::dynamic_bitset<std::uint64_t>;

/// Hard cap on the number of states accepted by the library.
inline constexpr std::size_t kMaxStates = 1u << 16;

/// A complete deterministic finite automaton: n states, k letters, total
/// transition table. Immutable after construction.
class Automaton {
public:
    Automaton(std::size_t n, std::size_t k, std::vector<State> delta);

    std::size_t num_states() const { return n_; }
    std::size_t num_letters() const { return k_; }

    State step(State q, Letter a) const { return delta_[q * k_ + a]; }

    /// Applies a whole word to a single state.
    State run(State q, const Word& w) const;

    /// The state map of a word: out[q] = q.w.
    std::vector<State> word_action(const Word& w) const;

    /// All states as a set.
    StateSet full_set() const;

    const std::vector<State>& table() const { return delta_; }

    /// Throws ValidationError unless every letter of `w` is < k.
    void validate_word(const Word& w) const;

    bool operator==(const Automaton& other) const = default;

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<State> delta_; // row-major: delta_[q * k_ + a]
};

// -- word and set operations ------------------------------------------------

/// Image S.w = { q.w : q in S }.
StateSet apply_word(const Automaton& a, const StateSet& s, const Word& w);

/// Preimage S.w^-1 = { q : q.w in S }.
StateSet preimage(const Automaton& a, const StateSet& s, const Word& w);

/// |Q.w|; equals 1 exactly when w is a reset word.
std::size_t rank_of_word(const Automaton& a, const Word& w);

/// Singleton set helper.
StateSet singleton(std::size_t n, State q);

// -- synchronization and structure -------------------------------------------

/// Per-pair shortest compression data computed by BFS on the pair graph.
class PairTable {
public:
    explicit PairTable(const Automaton& a);

    /// Shortest length of a word merging p and q, or nullopt if incompressible.
    std::optional<std::size_t> dist(State p, State q) const;

    /// A shortest word merging p and q (deterministic choice).
    Word merge_word(State p, State q) const;

    /// True when every pair of states is compressible.
    bool all_compressible() const { return all_compressible_; }

    /// Max over pairs of the shortest compression length (0 when n <= 1).
    std::size_t max_dist() const { return max_dist_; }

    /// Some incompressible pair, when one exists.
    std::optional<std::pair<State, State>> incompressible_pair() const;

private:
    std::size_t index(State p, State q) const; // requires p < q

    const Automaton* a_;
    std::size_t n_;
    std::vector<std::int64_t> dist_;  // -1 = incompressible
    std::vector<Letter> via_;
    bool all_compressible_;
    std::size_t max_dist_;
};

/// Classic pairwise criterion: synchronizing iff every 2-element subset is
/// compressible. Quadratic in the number of states, no exact linear algebra.
bool is_synchronizing(const Automaton& a);

/// All strongly connected components, each sorted ascending; components are
/// ordered by their smallest state.
std::vector<std::vector<State>> strongly_connected_components(const Automaton& a);

struct SinkComponents {
    std::vector<StateSet> components; // SCCs without outgoing edges
    bool unique;                      // exactly one sink SCC
};

/// Sink SCCs (components with no transition leaving them).
SinkComponents sink_component(const Automaton& a);

bool is_strongly_connected(const Automaton& a);

/// Sub-automaton induced on a closed state set; `members` returns the sorted
/// original state per new index. Throws unless the set is closed under every letter.
Automaton restrict_to(const Automaton& a, const StateSet& s, std::vector<State>* members = nullptr);

// -- text formats --------------------------------------------------------------

/// Text format: first line `n k`, then n lines of k next-state indices;
/// lines starting with `#` are comments.
Automaton parse_automaton(std::istream& in);
Automaton parse_automaton_string(const std::string& text);
Automaton load_automaton(const std::string& path);

std::string format_automaton(const Automaton& a);

/// GraphViz DOT export; edges with the same endpoints share one arrow.
std::string to_dot(const Automaton& a);

/// Human form `a1a0...` for alphabets of at most 10 letters, `eps` when empty.
std::string word_human(const Word& w, std::size_t k);

/// Machine form: space-separated letter indices, empty string for the empty word.
std::string word_machine(const Word& w);

/// 64-bit FNV-1a over the canonical text serialization.
std::uint64_t automaton_hash(const Automaton& a);

inline Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

/// Canonical word order used everywhere: by length, then lexicographic.
bool word_less(const Word& u, const Word& v);

} // namespace synkit

#endif // SYNKIT_AUTOMATON_HPP_
