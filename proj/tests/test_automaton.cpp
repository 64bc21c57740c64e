#include <doctest.h>

#include <sstream>

#include "synkit/automaton.hpp"
#include "synkit/codes.hpp"
#include "test_common.hpp"

using namespace synkit;
using namespace synkit::test;

TEST_SUITE_BEGIN("core");

TEST_CASE("apply_word on the 4-state cycle automaton") {
    const Automaton a = c4();
    const StateSet q = a.full_set();

    SUBCASE("the length-9 reset word maps everything to one state") {
        const StateSet image = apply_word(a, q, c4_reset_word());
        CHECK(image.count() == 1);
        CHECK(image.test(0));
    }
    SUBCASE("empty word is the identity") {
        const StateSet s = set_of(4, {1, 3});
        CHECK(apply_word(a, s, {}) == s);
    }
    SUBCASE("shift letter moves the last state") {
        CHECK(apply_word(a, set_of(4, {3}), {1}) == set_of(4, {0}));
    }
    SUBCASE("letters out of range are rejected") {
        CHECK_THROWS_AS(apply_word(a, q, {2}), ValidationError);
    }
}

TEST_CASE("preimage") {
    const Automaton a = c4();
    SUBCASE("shift letter has two preimages of state 0") {
        CHECK(preimage(a, set_of(4, {0}), {1}) == set_of(4, {0, 3}));
    }
    SUBCASE("full set is closed under preimage") {
        CHECK(preimage(a, a.full_set(), parse_word("0101")) == a.full_set());
    }
    SUBCASE("cycle letter preimage is the predecessor") {
        CHECK(preimage(a, set_of(4, {1}), {0}) == set_of(4, {0}));
    }
}

TEST_CASE("rank_of_word") {
    const Automaton a = c4();
    CHECK(rank_of_word(a, c4_reset_word()) == 1);
    CHECK(rank_of_word(a, {}) == 4);
    CHECK(rank_of_word(a, {1}) == 3);
}

TEST_CASE("is_synchronizing") {
    CHECK(is_synchronizing(c4()));
    CHECK(is_synchronizing(Automaton(1, 1, {0})));
    CHECK_FALSE(is_synchronizing(two_state_permutations()));
}

TEST_CASE("sink components") {
    SUBCASE("strongly connected input has itself as the unique sink") {
        const SinkComponents s = sink_component(c4());
        REQUIRE(s.unique);
        CHECK(s.components[0] == c4().full_set());
        CHECK(is_strongly_connected(c4()));
    }
    SUBCASE("the linear-threshold decoder family is strongly connected") {
        const Automaton x = gen_xnk(7, 3);
        const SinkComponents s = sink_component(x);
        REQUIRE(s.unique);
        CHECK(s.components[0] == x.full_set());
    }
    SUBCASE("two disjoint cycles yield two sinks") {
        const SinkComponents s = sink_component(two_cycles());
        CHECK_FALSE(s.unique);
        CHECK(s.components.size() == 2);
        CHECK_FALSE(is_strongly_connected(two_cycles()));
    }
}

TEST_CASE("pair table merges every pair of a synchronizing automaton") {
    const Automaton a = c4();
    const PairTable pt(a);
    REQUIRE(pt.all_compressible());
    for (State p = 0; p < 4; ++p) {
        for (State q = p + 1; q < 4; ++q) {
            const Word w = pt.merge_word(p, q);
            CHECK(w.size() == *pt.dist(p, q));
            CHECK(a.run(p, w) == a.run(q, w));
        }
    }
    CHECK(pt.max_dist() <= 9);
}

TEST_CASE("word action composes") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Automaton a = random_dfa(3 + seed % 10, 1 + seed % 3, 1000 + seed);
        Rng rng(seed);
        Word u, v;
        for (std::size_t i = 0; i < rng.below(6); ++i)
            u.push_back(static_cast<Letter>(rng.below(a.num_letters())));
        for (std::size_t i = 0; i < rng.below(6); ++i)
            v.push_back(static_cast<Letter>(rng.below(a.num_letters())));
        StateSet s(a.num_states());
        for (State q = 0; q < a.num_states(); ++q)
            if (rng.below(2))
                s.set(q);
        const StateSet via_uv = apply_word(a, s, concat(u, v));
        const StateSet stepwise = apply_word(a, apply_word(a, s, u), v);
        CHECK(via_uv == stepwise);
        CHECK(via_uv.count() <= s.count());
        // a state always survives the preimage of its own image
        if (s.any()) {
            const State q = static_cast<State>(s.find_first());
            const StateSet pre = preimage(a, apply_word(a, singleton(a.num_states(), q), u), u);
            CHECK(pre.test(q));
        }
    }
}

TEST_CASE("text format round trip") {
    const Automaton a = c4();
    const std::string text = format_automaton(a);
    CHECK(text == "4 2\n1 0\n2 1\n3 2\n0 0\n");
    CHECK(parse_automaton_string(text) == a);
    CHECK(parse_automaton_string("# comment\n 4 2\n1 0\n2 1\n3 2\n# mid comment\n0 0\n") == a);
    CHECK(automaton_hash(a) == automaton_hash(parse_automaton_string(text)));

    CHECK_THROWS_AS(parse_automaton_string("2 1\n0\n2\n"), ValidationError);  // target range
    CHECK_THROWS_AS(parse_automaton_string("2 2\n0 1\n"), ValidationError);   // truncated
    CHECK_THROWS_AS(parse_automaton_string("0 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_automaton_string("2 1\n0 0\n1\n"), ValidationError); // trailing entry
}

TEST_CASE("dot export mentions every state") {
    const std::string dot = to_dot(c4());
    CHECK(dot.find("0 -> 1 [label=\"a0\"]") != std::string::npos);
    CHECK(dot.find("3 -> 0 [label=\"a0,a1\"]") != std::string::npos);
}

TEST_CASE("word serialization") {
    CHECK(word_human({}, 2) == "eps");
    CHECK(word_human(c4_reset_word(), 2) == "a1a0a0a0a1a0a0a0a1");
    CHECK(word_machine(c4_reset_word()) == "1 0 0 0 1 0 0 0 1");
    CHECK(word_machine({}) == "");
}

TEST_CASE("restriction to a closed subset") {
    const Automaton a = two_cycles();
    std::vector<State> members;
    const Automaton sub = restrict_to(a, set_of(4, {2, 3}), &members);
    CHECK(sub.num_states() == 2);
    CHECK(members == std::vector<State>{2, 3});
    CHECK(sub.step(0, 0) == 1);
    CHECK_THROWS_AS(restrict_to(a, set_of(4, {0, 2}), nullptr), ValidationError);
}

TEST_SUITE_END();
