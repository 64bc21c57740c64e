/* classes.hpp -- detection and specialized synthesis for quasi-Eulerian and
 * quasi-one-cluster automata.
 */

#ifndef SYNKIT_CLASSES_HPP_
#define SYNKIT_CLASSES_HPP_

#include <optional>

#include "synkit/automaton.hpp"
#include "synkit/linalg.hpp"
#include "synkit/synthesis.hpp"

namespace synkit {

/// Witness that an automaton is quasi-Eulerian with defect c: a letter
/// distribution whose stationary vector has equal entries on E (|E| = n - c).
struct QuasiEulerianWitness {
    std::size_t c = 0;
    StateSet e_set;            // the n - c states with equal stationary mass
    std::optional<State> s;    // distinguished state with external in-edges, when one exists
    LetterDistribution p;      // strictly positive
    RatVec alpha;              // exact stationary distribution of the chain
    bool structural_ok = false; // in-edge condition holds for (e_set, s)

    std::string serialize() const;
};

/// Searches candidate sets E (ascending lexicographic) of size n - c for a
/// positive letter distribution making some stationary vector equal on E.
/// Feasibility of the distribution is decided by an exact simplex maximizing
/// the minimum letter probability; the stationary vector is then
/// reconstructed exactly and verified. Returns the first witness found.
std::optional<QuasiEulerianWitness> detect_quasi_eulerian(const Automaton& a, std::size_t c,
                                                          std::size_t budget = 100000);

/// Certified synthesis for quasi-Eulerian automata: alpha-reduction to the
/// minimal completeness length d, suffix expansion, then greedy extension.
/// Certifies 2^c (n-c+1) d for c > 0 and 1 + (n-2) d for c = 0.
ResetCertificate quasi_eulerian_reset(const Automaton& a, std::size_t c);

/// Decomposition of one letter's functional graph.
struct Cluster {
    std::vector<State> cycle;   // canonical rotation: starts at the smallest cycle state
    std::vector<State> members; // all states of the cluster, ascending
    std::vector<std::size_t> heights; // per member: distance to the cycle
    std::size_t height = 0;     // max tree height in this cluster
};

struct ClusterStructure {
    Letter letter = 0;
    std::vector<Cluster> clusters; // ordered by smallest member state
    std::size_t largest = 0;       // index of the cluster with the longest cycle
    std::size_t height = 0;        // max tree height over all clusters
    std::size_t other_cycle_states = 0; // cycle states outside the largest cluster

    const Cluster& largest_cluster() const { return clusters[largest]; }
};

ClusterStructure letter_clusters(const Automaton& a, Letter letter);

/// Certified synthesis for quasi-one-cluster automata via powers of the
/// cluster letter. Certifies 2^c (2n-c)(n-c+1) for c > 0 and 1 + (2n-r)(n-2)
/// for c = 0, r being |C| when |C| is prime and 2 otherwise.
ResetCertificate quasi_one_cluster_reset(const Automaton& a, std::size_t c);

/// Smallest c such that some letter leaves at most c cycle states outside its
/// largest cluster.
std::size_t min_quasi_one_cluster_defect(const Automaton& a);

} // namespace synkit

#endif // SYNKIT_CLASSES_HPP_
