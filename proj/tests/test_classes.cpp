#include <doctest.h>

#include "synkit/classes.hpp"
#include "synkit/oracle.hpp"
#include "test_common.hpp"

using namespace synkit;
using namespace synkit::test;

TEST_SUITE_BEGIN("classes");

namespace {

Automaton eulerian3() {
    return Automaton(3, 2, {1, 2, 0, 0, 1, 2});
}

// random automaton whose letter sum has every column summing to k: shuffle k
// incoming slots per state across all (state, letter) sources
Automaton random_eulerian(std::size_t n, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<State> targets;
    for (State q = 0; q < n; ++q)
        for (std::size_t i = 0; i < k; ++i)
            targets.push_back(q);
    for (std::size_t i = targets.size(); i > 1; --i)
        std::swap(targets[i - 1], targets[rng.below(i)]);
    return Automaton(n, k, std::move(targets));
}

} // namespace

TEST_CASE("detect_quasi_eulerian") {
    SUBCASE("doubly stochastic instance at defect zero") {
        const auto w = detect_quasi_eulerian(eulerian3(), 0);
        REQUIRE(w.has_value());
        CHECK(w->e_set.count() == 3);
        CHECK(w->alpha == RatVec(3, Rat(1, 3)));
        CHECK(w->structural_ok);
        CHECK(mul_row(w->alpha, markov_matrix(eulerian3(), w->p)) == w->alpha);
        CHECK(w->serialize().find("alpha0=1/3") != std::string::npos);
    }
    SUBCASE("the cycle automaton is not quasi-Eulerian at defect zero") {
        CHECK_FALSE(detect_quasi_eulerian(c4(), 0).has_value());
    }
    SUBCASE("defect n-1 always admits a witness") {
        const auto w = detect_quasi_eulerian(c4(), 3);
        REQUIRE(w.has_value());
        CHECK(w->e_set.count() == 1);
        Rat sum = 0;
        for (const Rat& x : w->alpha) {
            CHECK(x >= 0);
            sum += x;
        }
        CHECK(sum == 1);
    }
    SUBCASE("budget cap") {
        CHECK_THROWS_AS(detect_quasi_eulerian(c4(), 2, 0), BudgetError);
        // equal stationary mass on three of the four states: a defect-1 witness
        const auto w = detect_quasi_eulerian(c4(), 1);
        REQUIRE(w.has_value());
        CHECK(w->alpha == RatVec{Rat(2, 7), Rat(2, 7), Rat(2, 7), Rat(1, 7)});
    }
    SUBCASE("random doubly stochastic instances are detected") {
        std::size_t found = 0;
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const Automaton a = random_eulerian(4 + seed % 4, 2, 15000 + seed);
            const auto w = detect_quasi_eulerian(a, 0);
            REQUIRE(w.has_value());
            ++found;
            // equal entries across E, exact fixed point
            const Rat value = w->alpha[w->e_set.find_first()];
            for (std::size_t q = w->e_set.find_first(); q != StateSet::npos;
                 q = w->e_set.find_next(q))
                CHECK(w->alpha[q] == value);
            CHECK(mul_row(w->alpha, markov_matrix(a, w->p)) == w->alpha);
        }
        CHECK(found == 12);
    }
}

TEST_CASE("quasi_eulerian_reset") {
    SUBCASE("doubly stochastic instance meets the quadratic guarantee") {
        const Automaton a = eulerian3();
        const ResetCertificate cert = quasi_eulerian_reset(a, 0);
        CHECK(rank_of_word(a, cert.word) == 1);
        CHECK(cert.word.size() <= 1 + (3 - 2) * (3 - 1));
        CHECK(cert.bound_name == "quasi-eulerian");
    }
    SUBCASE("single state") {
        CHECK(quasi_eulerian_reset(Automaton(1, 1, {0}), 0).word.empty());
    }
    SUBCASE("class mismatch is reported") {
        CHECK_THROWS_AS(quasi_eulerian_reset(c4(), 0), ClassMismatchError);
    }
    SUBCASE("random doubly stochastic instances stay within the bound and above the oracle") {
        std::size_t tested = 0;
        for (std::uint64_t seed = 0; tested < 10 && seed < 500; ++seed) {
            const Automaton a = random_eulerian(4 + seed % 5, 2, 21000 + seed);
            if (!is_synchronizing(a) || !is_strongly_connected(a))
                continue;
            ++tested;
            const std::size_t n = a.num_states();
            const ResetCertificate cert = quasi_eulerian_reset(a, 0);
            CHECK(cert.word.size() <= 1 + (n - 2) * (n - 1));
            const OracleResult rt = exact_reset_threshold(a);
            CHECK(rt.threshold <= cert.word.size());
        }
        CHECK(tested == 10);
    }
}

TEST_CASE("letter_clusters") {
    const Automaton a = c4();
    SUBCASE("cycle letter is a single 4-cycle") {
        const ClusterStructure cs = letter_clusters(a, 0);
        REQUIRE(cs.clusters.size() == 1);
        CHECK(cs.largest_cluster().cycle == std::vector<State>{0, 1, 2, 3});
        CHECK(cs.height == 0);
        CHECK(cs.other_cycle_states == 0);
    }
    SUBCASE("shift letter splits into three clusters of trivial cycles") {
        const ClusterStructure cs = letter_clusters(a, 1);
        REQUIRE(cs.clusters.size() == 3);
        CHECK(cs.largest_cluster().cycle.size() == 1);
        CHECK(cs.largest_cluster().members == std::vector<State>{0, 3});
        CHECK(cs.largest_cluster().height == 1);
        CHECK(cs.height == 1);
        CHECK(cs.other_cycle_states == 2);
    }
    SUBCASE("chain letter of the decoder family forms one cluster") {
        const ClusterStructure cs = letter_clusters(gen_xnk(7, 3), 0);
        REQUIRE(cs.clusters.size() == 1);
        CHECK(cs.largest_cluster().cycle == std::vector<State>{0, 1, 4, 5, 6});
        CHECK(cs.height == 1);
    }
    SUBCASE("every state lands on a cycle after height many steps") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const Automaton b = random_dfa(3 + seed % 9, 2, 17000 + seed);
            const ClusterStructure cs = letter_clusters(b, 0);
            std::size_t members = 0;
            for (const Cluster& cl : cs.clusters) {
                members += cl.members.size();
                for (const State q : cl.members) {
                    const State t = b.run(q, Word(cl.height, 0));
                    bool on_cycle = false;
                    for (const Cluster& cl2 : cs.clusters)
                        for (const State c : cl2.cycle)
                            on_cycle |= c == t;
                    CHECK(on_cycle);
                }
            }
            CHECK(members == b.num_states()); // clusters partition the states
        }
    }
}

TEST_CASE("quasi_one_cluster_reset") {
    SUBCASE("cycle automaton through its cycle letter") {
        const Automaton a = c4();
        const ResetCertificate cert = quasi_one_cluster_reset(a, 0);
        CHECK(rank_of_word(a, cert.word) == 1);
        // conservative r = 2 since the cycle length 4 is composite
        CHECK(cert.bound_value == 1 + (2 * 4 - 2) * (4 - 2));
        CHECK(cert.word.size() >= 9);
        CHECK(cert.word.size() <= 13);
    }
    SUBCASE("prime cycle pins the exact threshold") {
        const Automaton a = gen_cerny(5);
        const ResetCertificate cert = quasi_one_cluster_reset(a, 0);
        CHECK(cert.bound_value == 1 + (2 * 5 - 5) * (5 - 2)); // r = 5 is prime
        CHECK(cert.word.size() == 16);                        // sandwiched at (n-1)^2
    }
    SUBCASE("single state") {
        CHECK(quasi_one_cluster_reset(Automaton(1, 1, {0}), 0).word.empty());
    }
    SUBCASE("constant letter resets by itself") {
        const Automaton a(3, 2, {0, 1, 0, 2, 0, 0});
        const ResetCertificate cert = quasi_one_cluster_reset(a, 0);
        CHECK(rank_of_word(a, cert.word) == 1);
    }
    SUBCASE("defect gates the class") {
        // both letters leave one extra cycle state outside their largest cluster
        const Automaton a(4, 2, {1, 0, 0, 0, 0, 2, 3, 2});
        REQUIRE(is_synchronizing(a));
        REQUIRE(min_quasi_one_cluster_defect(a) == 1);
        CHECK_THROWS_AS(quasi_one_cluster_reset(a, 0), ClassMismatchError);
        const ResetCertificate cert = quasi_one_cluster_reset(a, 1);
        CHECK(rank_of_word(a, cert.word) == 1);
    }
    SUBCASE("oracle ordering and bound soundness on synchronizing one-cluster instances") {
        std::size_t tested = 0;
        for (std::uint64_t seed = 0; tested < 12 && seed < 600; ++seed) {
            const Automaton a = random_dfa(4 + seed % 6, 2, 19000 + seed);
            if (!is_synchronizing(a) || min_quasi_one_cluster_defect(a) != 0)
                continue;
            ++tested;
            const ResetCertificate cert = quasi_one_cluster_reset(a, 0);
            const OracleResult rt = exact_reset_threshold(a);
            CHECK(rt.threshold <= cert.word.size());
            CHECK(static_cast<std::int64_t>(rt.threshold) <= cert.bound_value);
        }
        CHECK(tested == 12);
    }
}

TEST_SUITE_END();
