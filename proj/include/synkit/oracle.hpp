/* oracle.hpp -- exact brute-force ground truth: shortest reset words by BFS
 * over the subset lattice, pair thresholds, and brute-force span bases.
 *
 * The subset BFS has two interchangeable lanes: a serial reference and an
 * OpenMP-parallel frontier expansion. Both return bit-identical results
 * (including the witness word); the tests compare them and the benchmark
 * target measures them against each other.
 */

#ifndef SYNKIT_ORACLE_HPP_
#define SYNKIT_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "synkit/automaton.hpp"
#include "synkit/linalg.hpp"

namespace synkit {

/// Hard state cap for the subset BFS.
inline constexpr std::size_t kOracleMaxStates = 24;

struct OracleOptions {
    // OpenMP frontier expansion when compiled in. Off by default: the
    // benchmark target shows the expansion kernel only pays off beyond desk
    // scale, while per-instance fan-out (see experiment.hpp) wins already.
    bool parallel = false;
    std::size_t memory_budget_mb = 0; // 0 = read SYNKIT_MEMORY_BUDGET_MB or default 2048
};

struct OracleResult {
    bool synchronizing = false;
    std::size_t threshold = 0; // valid when synchronizing
    Word witness;              // lexicographically smallest shortest reset word
};

/// Exact reset threshold by breadth-first search over subsets of states,
/// starting from the full set. Throws BudgetError beyond the state cap or the
/// memory budget.
OracleResult exact_reset_threshold(const Automaton& a, const OracleOptions& options = {});

struct PairThresholdResult {
    bool all_compressible = false;
    std::size_t max_length = 0; // valid when all_compressible (0 when n <= 1)
};

/// Max over state pairs of the shortest compression length.
PairThresholdResult exact_pair_threshold(const Automaton& a);

/// Exact basis of span{ alpha [w] : |w| <= d } by plain enumeration.
/// Budget-guarded: about 10^6 words.
std::vector<RatVec> brute_span(const Automaton& a, const RatVec& alpha, std::size_t d);

/// Exact basis of span{ [w] : |w| <= d } with matrices flattened to vectors.
std::vector<RatVec> brute_span_general(const Automaton& a, std::size_t d);

} // namespace synkit

#endif // SYNKIT_ORACLE_HPP_
