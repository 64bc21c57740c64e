/* codes.hpp -- maximal prefix codes, their decoder automata, decoder-specific
 * synthesis, and the generators for the named automaton families.
 */

#ifndef SYNKIT_CODES_HPP_
#define SYNKIT_CODES_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synkit/automaton.hpp"
#include "synkit/synthesis.hpp"

namespace synkit {

/// A maximal finite prefix code over a k-letter alphabet. Codewords are digit
/// strings over 0..k-1, kept in lexicographic order.
struct PrefixCode {
    std::size_t k = 0;
    std::vector<std::string> words;

    /// Validates prefix-freeness (naming an offending pair) and maximality
    /// (exact Kraft sum 1).
    void validate() const;

    /// File format: first line `k`, then one codeword per line.
    static PrefixCode parse(std::istream& in);
    static PrefixCode load(const std::string& path);
    std::string format() const;
};

/// The decoder automaton of a maximal prefix code: states are the proper
/// prefixes of codewords in (length, lex) order, state 0 is the root.
struct Decoder {
    Automaton automaton;
    std::vector<std::string> state_labels;
    std::size_t height = 0;

    State root() const { return 0; }
};

Decoder decoder_from_code(const PrefixCode& t);

/// Label sidecar: one `state label` line per state, `eps` for the root.
std::string format_labels(const Decoder& d);

/// Checks whether an automaton is a decoder with root 0 (every non-root state
/// has exactly one incoming edge and the edge forest is a tree rooted at 0);
/// rebuilds the labels when it is.
std::optional<Decoder> as_decoder(const Automaton& a);

/// A word of length at most ceil(log_k n) whose rank is at most its length
/// (and hence small); searched in ascending length, lexicographic order.
Word small_rank_word(const Decoder& d);

/// Certified decoder synthesis: small-rank word, direct first compression,
/// then exact composite compression; certifies the decoder bound with
/// r = ceil(log_k n) and also reports the pair-compression bound.
ResetCertificate decoder_reset(const Decoder& d);

// -- generators -------------------------------------------------------------------

/// The cycle-plus-one-shifted-letter family: letter 0 cycles 0->1->...->n-1->0,
/// letter 1 fixes everything except n-1 -> 0. Reset threshold (n-1)^2.
Automaton gen_cerny(std::size_t n);

/// The k-ary decoder family with linear reset threshold 2*ceil(n/(k+1)):
/// branch states (k+1)i fan out, chain states continue by letter 0, and all
/// remaining transitions return to state 0. Requires k >= 3 and n >= k+2.
Automaton gen_xnk(std::size_t n, std::size_t k);

/// Deterministic seeded generator state (splitmix64).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// uniform in [0, bound), rejection-sampled
    std::uint64_t below(std::uint64_t bound);
};

/// Uniformly random complete DFA: every transition independently uniform.
Automaton gen_random_dfa(std::size_t n, std::size_t k, std::uint64_t seed);

/// Uniformly random n-state binary decoder: a uniform random binary tree with
/// n internal nodes (leaf-insertion growth), read off as a prefix code.
Decoder gen_random_decoder(std::size_t n, std::uint64_t seed);

/// Mixes a base seed with per-instance coordinates (used by experiments).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

} // namespace synkit

#endif // SYNKIT_CODES_HPP_
