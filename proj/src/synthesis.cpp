#include "synkit/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace synkit {

namespace {

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

std::int64_t to_int64_sat(const BigInt& x) {
    if (x > kInt64Max)
        return kInt64Max;
    return static_cast<std::int64_t>(x);
}

} // namespace

std::int64_t sat_add(std::int64_t x, std::int64_t y) {
    return to_int64_sat(BigInt(x) + BigInt(y));
}

std::int64_t sat_mul(std::int64_t x, std::int64_t y) {
    return to_int64_sat(BigInt(x) * BigInt(y));
}

std::int64_t ds_bound_minus_one(const RatVec& alpha) {
    try {
        return static_cast<std::int64_t>(ds_count(alpha)) - 1;
    } catch (const DsCapError& e) {
        return to_int64_sat(e.trivial_bound - 1);
    }
}

std::string ResetCertificate::serialize(const Automaton& a) const {
    std::ostringstream out;
    out << "automaton=" << std::hex << automaton_hash(a) << std::dec << '\n';
    out << "word=" << word_machine(word) << '\n';
    out << "length=" << word.size() << '\n';
    out << "bound=" << bound_name << '\n';
    out << "bound_value=" << bound_value << '\n';
    if (pair_compression_bound)
        out << "pair_compression_bound=" << *pair_compression_bound << '\n';
    out << "steps=" << steps.size() << '\n';
    for (std::size_t i = 0; i < steps.size(); ++i)
        out << "step" << i << '=' << word_machine(steps[i]) << '\n';
    return out.str();
}

ResetCertificate make_certificate(const Automaton& a, Word word, std::string bound_name,
                                  std::int64_t bound_value, std::vector<Word> steps) {
    if (rank_of_word(a, word) != 1)
        throw InternalError("certificate word is not a reset word");
    if (static_cast<std::int64_t>(word.size()) > bound_value)
        throw InternalError("certificate word exceeds its certified bound");
    ResetCertificate cert;
    cert.word = std::move(word);
    cert.bound_name = std::move(bound_name);
    cert.bound_value = bound_value;
    cert.steps = std::move(steps);
    return cert;
}

// -- greedy extension ---------------------------------------------------------

ResetCertificate greedy_extension(const Automaton& a, const WordSet& w1, const WordSet& w2,
                                  const RatVec& alpha, const Word& w0) {
    w1.validate(a);
    w2.validate(a);
    a.validate_word(w0);
    const std::size_t n = a.num_states();
    if (n == 1)
        return make_certificate(a, {}, "greedy-extension", 0, {});

    const InducedAutomaton b = build_induced(a, w1, w2);
    if (apply_word(a, a.full_set(), w0) != b.r_set)
        throw ValidationError("w0 does not map the state set onto R");

    if (alpha.size() != n)
        throw ValidationError("alpha has wrong length");
    Rat mass_total = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (alpha[q] < 0)
            throw ValidationError("alpha must be non-negative");
        if (alpha[q] > 0 && !b.r_set.test(q))
            throw ValidationError("alpha must be supported on R");
        mass_total += alpha[q];
    }
    if (mass_total != 1)
        throw ValidationError("alpha must be stochastic");

    const std::size_t r = b.r();
    const std::int64_t d1 = static_cast<std::int64_t>(w1.max_length());
    const std::int64_t d2 = static_cast<std::int64_t>(w2.max_length());
    const std::int64_t ds_minus_1 = ds_bound_minus_one(alpha);

    if (r == 1)
        return make_certificate(a, w0, "greedy-extension",
                                static_cast<std::int64_t>(w0.size()), {});

    // restriction of alpha to R, and the composite-letter actions on R
    RatVec alpha_r(r);
    for (std::size_t i = 0; i < r; ++i)
        alpha_r[i] = alpha[b.states[i]];
    const std::size_t L = b.num_letters();

    const bool r_is_q = r == n;
    StateSet cur(r);
    std::vector<Word> steps;
    Rat cur_mass;

    auto mass_of = [&](const StateSet& s) {
        Rat m = 0;
        for (std::size_t i = s.find_first(); i != StateSet::npos; i = s.find_next(i))
            m += alpha_r[i];
        return m;
    };
    auto preimage_under = [&](const StateSet& s, std::size_t letter) {
        StateSet pre(r);
        for (std::size_t i = 0; i < r; ++i)
            if (s.test(b.next(i, letter)))
                pre.set(static_cast<std::size_t>(i));
        return pre;
    };

    bool started = false;
    if (r_is_q) {
        // try to start from a single state and a plain letter pulling more mass
        for (std::size_t q = 0; q < n && !started; ++q) {
            if (alpha[q] == 0)
                continue;
            for (Letter c = 0; c < a.num_letters() && !started; ++c) {
                StateSet pre(n);
                for (State p = 0; p < n; ++p)
                    if (a.step(p, c) == q)
                        pre.set(p);
                if (pre.count() > 1 && mass_of(pre) > alpha[q]) {
                    cur = std::move(pre);
                    cur_mass = mass_of(cur);
                    steps.push_back(Word{c});
                    started = true;
                }
            }
        }
    }
    if (!started) {
        // start from the smallest state of R carrying mass
        std::size_t start = StateSet::npos;
        for (std::size_t i = 0; i < r; ++i)
            if (alpha_r[i] > 0) {
                start = i;
                break;
            }
        StateSet x(r);
        x.set(start);
        const Rat base = alpha_r[start];
        bool found = false;
        for (std::size_t l = 0; l < L && !found; ++l) {
            StateSet pre = preimage_under(x, l);
            if (mass_of(pre) > base) {
                cur = std::move(pre);
                cur_mass = mass_of(cur);
                steps.push_back(b.letters[l]);
                found = true;
            }
        }
        if (!found)
            throw CriterionError("no extension word for the start state; premises do not hold");
    }

    while (cur.count() < r) {
        bool found = false;
        for (std::size_t l = 0; l < L && !found; ++l) {
            StateSet pre = preimage_under(cur, l);
            const Rat m = mass_of(pre);
            if (m > cur_mass) {
                cur = std::move(pre);
                cur_mass = m;
                steps.push_back(b.letters[l]);
                found = true;
            }
        }
        if (!found)
            throw CriterionError("extension stalled before covering R; premises do not hold");
        if (static_cast<std::int64_t>(steps.size()) > ds_minus_1)
            throw InternalError("greedy extension exceeded its step bound");
    }

    Word word = w0;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        word = concat(word, *it);

    const bool letter_start = started; // set only by the single-letter start
    std::int64_t bound;
    if (letter_start)
        bound = sat_add(1, sat_mul(ds_minus_1 - 1, sat_add(d1, d2)));
    else
        bound = sat_add(static_cast<std::int64_t>(w0.size()),
                        sat_mul(ds_minus_1, sat_add(d1, d2)));
    return make_certificate(a, std::move(word), "greedy-extension", bound, std::move(steps));
}

// -- greedy compression ----------------------------------------------------------

ResetCertificate greedy_compression(const Automaton& a) {
    const std::size_t n = a.num_states();
    if (n == 1)
        return make_certificate(a, {}, "pairwise-greedy", 0, {});
    const PairTable pt(a);
    if (!pt.all_compressible()) {
        const auto pair = pt.incompressible_pair();
        throw CriterionError("not synchronizing: pair {" + std::to_string(pair->first) + "," +
                             std::to_string(pair->second) + "} is incompressible");
    }
    StateSet image = a.full_set();
    Word word;
    std::vector<Word> steps;
    while (image.count() > 1) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        State bp = 0, bq = 0;
        for (std::size_t p = image.find_first(); p != StateSet::npos; p = image.find_next(p)) {
            for (std::size_t q = image.find_next(p); q != StateSet::npos; q = image.find_next(q)) {
                const auto d = pt.dist(static_cast<State>(p), static_cast<State>(q));
                if (*d < best) {
                    best = *d;
                    bp = static_cast<State>(p);
                    bq = static_cast<State>(q);
                }
            }
        }
        Word step = pt.merge_word(bp, bq);
        image = apply_word(a, image, step);
        word = concat(word, step);
        steps.push_back(std::move(step));
    }
    const std::int64_t bound =
        sat_mul(static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(pt.max_dist()));
    return make_certificate(a, std::move(word), "pairwise-greedy", bound, std::move(steps));
}

// -- reduction procedures -----------------------------------------------------------

namespace {

// flattened 0/1 vector of the word matrix given the word's state map
RatVec flatten_action(const std::vector<State>& action, std::size_t n) {
    RatVec v(n * n);
    for (std::size_t q = 0; q < n; ++q)
        v[q * n + action[q]] = 1;
    return v;
}

} // namespace

WordSet reduce_general(const Automaton& a, std::size_t d) {
    const std::size_t n = a.num_states();
    SpanBasis span(n * n);

    std::vector<Word> kept;
    std::vector<std::vector<State>> actions;
    std::vector<State> id(n);
    for (State q = 0; q < n; ++q)
        id[q] = q;
    span.insert(flatten_action(id, n));
    kept.emplace_back();
    actions.push_back(std::move(id));

    std::size_t level_begin = 0;
    for (std::size_t len = 0; len < d; ++len) {
        const std::size_t level_end = kept.size();
        bool grew = false;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                std::vector<State> action(n);
                for (State q = 0; q < n; ++q)
                    action[q] = a.step(actions[i][q], c);
                if (span.insert(flatten_action(action, n))) {
                    Word w = kept[i];
                    w.push_back(c);
                    kept.push_back(std::move(w));
                    actions.push_back(std::move(action));
                    grew = true;
                }
            }
        }
        if (!grew)
            break; // stagnation is permanent
        level_begin = level_end;
    }
    return WordSet::of(std::move(kept));
}

AlphaReduction reduce_alpha_detail(const Automaton& a, std::size_t d, const RatVec& alpha,
                                   std::size_t target_rank) {
    const std::size_t n = a.num_states();
    if (alpha.size() != n)
        throw ValidationError("alpha has wrong length");
    SpanBasis span(n);

    AlphaReduction out;
    std::vector<Word> kept;
    std::vector<RatVec> vecs;
    span.insert(alpha);
    if (span.rank() >= target_rank)
        out.full_rank_level = 0;
    kept.emplace_back();
    vecs.push_back(alpha);

    std::size_t level_begin = 0;
    for (std::size_t len = 0; len < d; ++len) {
        const std::size_t level_end = kept.size();
        bool grew = false;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                RatVec v(n);
                for (State q = 0; q < n; ++q)
                    if (vecs[i][q] != 0)
                        v[a.step(q, c)] += vecs[i][q];
                if (span.insert(v)) {
                    Word w = kept[i];
                    w.push_back(c);
                    kept.push_back(std::move(w));
                    vecs.push_back(std::move(v));
                    grew = true;
                    if (!out.full_rank_level && span.rank() >= target_rank)
                        out.full_rank_level = len + 1;
                }
            }
        }
        if (!grew)
            break;
        level_begin = level_end;
    }
    out.rank = span.rank();
    out.words = WordSet::of(std::move(kept));
    return out;
}

WordSet reduce_alpha(const Automaton& a, std::size_t d, const RatVec& alpha) {
    return reduce_alpha_detail(a, d, alpha, a.num_states() + 1).words;
}

WordSet reduce_primitive(const Automaton& a, const WordSet& w1, std::size_t d) {
    w1.validate(a);
    const std::size_t n = a.num_states();

    StateSet r_set(n);
    std::vector<std::vector<State>> w1_actions;
    for (const Word& w : w1.words) {
        auto action = a.word_action(w);
        for (State q = 0; q < n; ++q)
            r_set.set(action[q]);
        w1_actions.push_back(std::move(action));
    }
    std::vector<State> states;
    std::vector<std::uint32_t> ridx(n, 0);
    for (std::size_t q = r_set.find_first(); q != StateSet::npos; q = r_set.find_next(q)) {
        ridx[q] = static_cast<std::uint32_t>(states.size());
        states.push_back(static_cast<State>(q));
    }
    const std::size_t r = states.size();

    using BitRow = boost::dynamic_bitset<std::uint64_t>;
    std::vector<BitRow> mask(r, BitRow(r));

    std::vector<Word> kept;
    std::vector<std::vector<State>> actions;
    std::vector<State> id(n);
    for (State q = 0; q < n; ++q)
        id[q] = q;
    kept.emplace_back();
    actions.push_back(id);

    auto absorb = [&](const std::vector<State>& action) {
        // pattern of [action . w1] on R, for every w1; true if a zero entry flipped
        bool fresh = false;
        for (const auto& act1 : w1_actions) {
            for (std::size_t i = 0; i < r; ++i) {
                const std::size_t j = ridx[act1[action[states[i]]]];
                if (!mask[i].test(j)) {
                    mask[i].set(j);
                    fresh = true;
                }
            }
        }
        return fresh;
    };

    absorb(id);
    if (is_primitive_pattern(mask))
        return WordSet::of(std::move(kept));

    std::size_t level_begin = 0;
    for (std::size_t len = 0; len < d; ++len) {
        const std::size_t level_end = kept.size();
        bool grew = false;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                std::vector<State> action(n);
                for (State q = 0; q < n; ++q)
                    action[q] = a.step(actions[i][q], c);
                // peek: does this word contribute a new positive entry?
                bool fresh = false;
                for (const auto& act1 : w1_actions) {
                    for (std::size_t s = 0; s < r && !fresh; ++s)
                        if (!mask[s].test(ridx[act1[action[states[s]]]]))
                            fresh = true;
                    if (fresh)
                        break;
                }
                if (!fresh)
                    continue;
                absorb(action);
                Word w = kept[i];
                w.push_back(c);
                kept.push_back(std::move(w));
                actions.push_back(std::move(action));
                grew = true;
                if (is_primitive_pattern(mask))
                    return WordSet::of(std::move(kept));
            }
        }
        if (!grew)
            break;
        level_begin = level_end;
    }
    throw CriterionError("word set cannot be made primitive on R");
}

bool is_factor_closed(const WordSet& ws) {
    std::set<Word> members(ws.words.begin(), ws.words.end());
    for (const Word& w : ws.words) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t j = i + 1; j <= w.size(); ++j) {
                Word cut(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                cut.insert(cut.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
                if (!members.count(cut))
                    return false;
            }
        }
    }
    return true;
}

WordSet reduce_factor_closed(const Automaton& a, const WordSet& ws, ReduceMode mode,
                             const RatVec* alpha) {
    ws.validate(a);
    if (mode == ReduceMode::Alpha && alpha == nullptr)
        throw ValidationError("alpha reduction needs a vector");
    if (!is_factor_closed(ws))
        throw ValidationError("word set is not factor-closed");

    const std::size_t n = a.num_states();
    const std::size_t max_len = ws.max_length();
    std::set<Word> members(ws.words.begin(), ws.words.end());

    const std::size_t dim = mode == ReduceMode::General ? n * n : n;
    SpanBasis span(dim);

    std::vector<Word> kept;
    std::vector<std::vector<State>> actions; // General mode
    std::vector<RatVec> vecs;                // Alpha mode

    std::vector<State> id(n);
    for (State q = 0; q < n; ++q)
        id[q] = q;
    if (mode == ReduceMode::General) {
        span.insert(flatten_action(id, n));
        actions.push_back(id);
    } else {
        if (alpha->size() != n)
            throw ValidationError("alpha has wrong length");
        span.insert(*alpha);
        vecs.push_back(*alpha);
    }
    kept.emplace_back();

    std::size_t level_begin = 0;
    for (std::size_t len = 0; len < max_len; ++len) {
        const std::size_t level_end = kept.size();
        bool grew = false;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                Word w = kept[i];
                w.push_back(c);
                if (!members.count(w))
                    continue;
                bool inserted;
                std::vector<State> action;
                RatVec v;
                if (mode == ReduceMode::General) {
                    action.resize(n);
                    for (State q = 0; q < n; ++q)
                        action[q] = a.step(actions[i][q], c);
                    inserted = span.insert(flatten_action(action, n));
                } else {
                    v.assign(n, Rat(0));
                    for (State q = 0; q < n; ++q)
                        if (vecs[i][q] != 0)
                            v[a.step(q, c)] += vecs[i][q];
                    inserted = span.insert(v);
                }
                if (inserted) {
                    kept.push_back(std::move(w));
                    if (mode == ReduceMode::General)
                        actions.push_back(std::move(action));
                    else
                        vecs.push_back(std::move(v));
                    grew = true;
                }
            }
        }
        if (!grew)
            break;
        level_begin = level_end;
    }
    return WordSet::of(std::move(kept));
}

// -- small-rank pipeline ----------------------------------------------------------------

namespace {

// Shortest-word distances from every state into `target`, with witness words.
struct ReachTable {
    std::vector<std::size_t> dist;
    std::vector<Word> witness;
    std::size_t max_dist = 0;
};

ReachTable reach_into(const Automaton& a, const StateSet& target) {
    const std::size_t n = a.num_states();
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    ReachTable out;
    out.dist.assign(n, kInf);
    out.witness.assign(n, {});

    std::vector<std::vector<std::pair<State, Letter>>> rev(n);
    for (State q = 0; q < n; ++q)
        for (Letter c = 0; c < a.num_letters(); ++c)
            rev[a.step(q, c)].emplace_back(q, c);

    std::deque<State> queue;
    for (std::size_t q = target.find_first(); q != StateSet::npos; q = target.find_next(q)) {
        out.dist[q] = 0;
        queue.push_back(static_cast<State>(q));
    }
    std::vector<Letter> via(n, 0);
    while (!queue.empty()) {
        const State cur = queue.front();
        queue.pop_front();
        for (auto [p, c] : rev[cur]) {
            if (out.dist[p] == kInf) {
                out.dist[p] = out.dist[cur] + 1;
                via[p] = c;
                queue.push_back(p);
            }
        }
    }
    for (State q = 0; q < n; ++q) {
        if (out.dist[q] == kInf)
            throw InternalError("state cannot reach the target set");
        out.max_dist = std::max(out.max_dist, out.dist[q]);
        Word w;
        State p = q;
        while (!target.test(p)) {
            w.push_back(via[p]);
            p = a.step(p, via[p]);
        }
        out.witness[q] = std::move(w);
    }
    return out;
}

constexpr std::size_t kCompressionRankCap = 20;

// Shortest sequence of composite letters of `b` taking `start_mask` (over the
// R-indices) to a set of smaller cardinality; BFS over subsets of R.
std::vector<std::size_t> shortest_compressing_letters(const InducedAutomaton& b,
                                                      std::uint32_t start_mask,
                                                      bool to_singleton) {
    const std::size_t r = b.r();
    if (r > kCompressionRankCap)
        throw BudgetError("image too large for exact subset compression");
    const std::size_t L = b.num_letters();
    const std::size_t space = std::size_t{1} << r;
    const auto start_count = static_cast<std::size_t>(std::popcount(start_mask));

    auto goal = [&](std::uint32_t m) {
        const auto c = static_cast<std::size_t>(std::popcount(m));
        return to_singleton ? c == 1 : c < start_count;
    };
    if (goal(start_mask))
        return {};

    std::vector<std::uint32_t> img(L);
    std::vector<std::int8_t> visited(space, 0);
    std::vector<std::uint32_t> parent(space, 0);
    std::vector<std::uint32_t> parent_letter(space, 0);
    std::vector<std::uint32_t> frontier{start_mask};
    visited[start_mask] = 1;

    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (const std::uint32_t cur : frontier) {
            for (std::size_t l = 0; l < L; ++l) {
                std::uint32_t m = 0;
                for (std::size_t i = 0; i < r; ++i)
                    if (cur & (1u << i))
                        m |= 1u << b.next(i, l);
                if (visited[m])
                    continue;
                visited[m] = 1;
                parent[m] = cur;
                parent_letter[m] = static_cast<std::uint32_t>(l);
                if (goal(m)) {
                    std::vector<std::size_t> letters;
                    std::uint32_t at = m;
                    while (at != start_mask) {
                        letters.push_back(parent_letter[at]);
                        at = parent[at];
                    }
                    std::reverse(letters.begin(), letters.end());
                    return letters;
                }
                next.push_back(m);
            }
        }
        frontier = std::move(next);
    }
    throw CriterionError("image cannot be compressed by the composite letters");
}

} // namespace

RankSynthesis synthesize_via_small_rank(const Automaton& a, const Word& w, bool pin_refinement,
                                        bool exact_bfs) {
    a.validate_word(w);
    if (!is_synchronizing(a))
        throw ValidationError("automaton is not synchronizing");
    const StateSet q_w = apply_word(a, a.full_set(), w);
    const std::size_t r = q_w.count();

    RankSynthesis out;
    out.r = r;
    if (r == 1) {
        out.word = w;
        return out;
    }

    const SinkComponents sinks = sink_component(a);
    if (!sinks.unique)
        throw InternalError("synchronizing automaton must have a unique sink component");
    const StateSet& s = sinks.components[0];

    // d: stagnation length of the word-matrix span chain on the sink. From
    // there on the span never grows, and reset words into each sink state
    // witness completeness for every stochastic vector of the sink subspace.
    // A stationary vector alone can complete strictly earlier, so it must not
    // drive this choice.
    const Automaton sub = restrict_to(a, s);
    std::size_t d_complete = 0;
    if (sub.num_states() > 1) {
        const std::size_t cap = sub.num_states() * sub.num_states();
        d_complete = reduce_general(sub, cap).max_length();
    }
    StateSet target = s & q_w;
    if (target.none())
        throw InternalError("sink component must meet the image of w");
    const ReachTable reach = reach_into(a, target);
    out.d = std::max({d_complete, reach.max_dist, std::size_t{1}});

    // composite automaton on Q.w: letters are (reduced word) . w, plus the
    // reachability witnesses, which the reduction does not preserve
    WordSet w2 = reduce_general(a, out.d);
    std::vector<Word> extra;
    for (std::size_t q = q_w.find_first(); q != StateSet::npos; q = q_w.find_next(q))
        extra.push_back(reach.witness[q]);
    w2 = union_of(w2, WordSet::of(std::move(extra)));
    WordSet w1;
    w1.words.push_back(w);
    const InducedAutomaton b = build_induced(a, w1, w2);

    Word word = w;
    StateSet image = q_w;
    if (pin_refinement) {
        // one direct shortest compression of Q.w before switching to composite letters
        const PairTable pt(a);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        State bp = 0, bq = 0;
        for (std::size_t p = image.find_first(); p != StateSet::npos; p = image.find_next(p))
            for (std::size_t q = image.find_next(p); q != StateSet::npos; q = image.find_next(q)) {
                const auto dd = pt.dist(static_cast<State>(p), static_cast<State>(q));
                if (!dd)
                    throw InternalError("synchronizing automaton with incompressible pair");
                if (*dd < best) {
                    best = *dd;
                    bp = static_cast<State>(p);
                    bq = static_cast<State>(q);
                }
            }
        Word v1 = pt.merge_word(bp, bq);
        image = apply_word(a, image, v1);
        word = concat(word, v1);
        out.steps.push_back(std::move(v1));
    }

    while (image.count() > 1) {
        // current image need not sit inside R yet; the first composite letter
        // pulls it there, so expand one ply in base space and continue in masks
        std::uint32_t mask = 0;
        bool in_r = true;
        for (std::size_t q = image.find_first(); q != StateSet::npos; q = image.find_next(q)) {
            if (!b.r_set.test(q)) {
                in_r = false;
                break;
            }
        }
        std::vector<std::size_t> letters;
        if (in_r) {
            for (std::size_t q = image.find_first(); q != StateSet::npos; q = image.find_next(q))
                mask |= 1u << b.index_of(static_cast<State>(q));
            letters = shortest_compressing_letters(b, mask, exact_bfs);
        } else {
            // try single letters first, then letter-prefixed searches
            std::size_t chosen = std::numeric_limits<std::size_t>::max();
            std::vector<std::size_t> best_tail;
            std::size_t best_len = std::numeric_limits<std::size_t>::max();
            for (std::size_t l = 0; l < b.num_letters(); ++l) {
                const StateSet after = apply_word(a, image, b.letters[l]);
                if (after.count() < image.count()) {
                    chosen = l;
                    best_tail.clear();
                    best_len = 1;
                    break;
                }
                std::uint32_t m = 0;
                for (std::size_t q = after.find_first(); q != StateSet::npos;
                     q = after.find_next(q))
                    m |= 1u << b.index_of(static_cast<State>(q));
                try {
                    auto tail = shortest_compressing_letters(b, m, false);
                    if (tail.size() + 1 < best_len) {
                        best_len = tail.size() + 1;
                        chosen = l;
                        best_tail = std::move(tail);
                    }
                } catch (const CriterionError&) {
                    // dead end behind this letter; another one may still work
                }
            }
            if (chosen == std::numeric_limits<std::size_t>::max())
                throw CriterionError("image cannot be compressed by the composite letters");
            letters.push_back(chosen);
            letters.insert(letters.end(), best_tail.begin(), best_tail.end());
        }
        for (const std::size_t l : letters) {
            image = apply_word(a, image, b.letters[l]);
            word = concat(word, b.letters[l]);
            out.steps.push_back(b.letters[l]);
        }
    }
    out.word = std::move(word);
    return out;
}

namespace {

std::int64_t small_rank_bound(std::size_t w_len, std::size_t d, std::size_t r) {
    const auto wl = static_cast<std::int64_t>(w_len);
    const auto dd = static_cast<std::int64_t>(d);
    const auto rr = static_cast<std::int64_t>(r);
    if (r >= 4)
        return sat_add(sat_mul(sat_add(wl, dd), (rr * rr * rr - rr) / 6), -dd);
    return sat_add(wl, sat_mul(sat_add(wl, dd), (rr - 1) * (rr - 1)));
}

} // namespace

ResetCertificate small_rank_pipeline(const Automaton& a, const Word& w) {
    RankSynthesis syn = synthesize_via_small_rank(a, w, false);
    const std::int64_t bound =
        syn.r == 1 ? static_cast<std::int64_t>(w.size()) : small_rank_bound(w.size(), syn.d, syn.r);
    if (static_cast<std::int64_t>(syn.word.size()) > bound)
        syn = synthesize_via_small_rank(a, w, false, true); // optimal composite word is within the bound
    ResetCertificate cert =
        make_certificate(a, std::move(syn.word), "small-rank", bound, std::move(syn.steps));
    const auto wl = static_cast<std::int64_t>(w.size());
    const auto rr = static_cast<std::int64_t>(syn.r);
    cert.pair_compression_bound =
        sat_add(wl, sat_mul(sat_add(wl, static_cast<std::int64_t>(syn.d)), (rr * rr - rr) / 2));
    return cert;
}

// -- completeness/primitivity combination ------------------------------------------------

CombineResult combine_complete_primitive(const Automaton& a, const WordSet& w1,
                                         const WordSet& w2, const WordSet& w) {
    w1.validate(a);
    w2.validate(a);
    w.validate(a);
    if (!is_strongly_connected(a))
        throw ValidationError("combination requires a strongly connected automaton");

    const InducedAutomaton b = build_induced(a, w1, w2);
    const std::size_t r = b.r();
    std::vector<boost::dynamic_bitset<std::uint64_t>> digraph(
        r, boost::dynamic_bitset<std::uint64_t>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < b.num_letters(); ++l)
            digraph[i].set(b.next(i, l));
    if (!is_primitive_pattern(digraph))
        throw ValidationError("underlying digraph of the induced automaton is not primitive");

    const std::size_t n = a.num_states();
    const RatMat p1 = wordset_matrix(a, w1);
    const RatMat p2 = wordset_matrix(a, w2);
    const RatMat w_avg = wordset_matrix(a, WordSet{w.words, std::nullopt});

    const RatVec alpha = stationary_distribution(p2 * p1).alpha;

    // n words of W whose alpha-images are independent
    SpanBasis span(n);
    std::vector<Word> d_rows;
    for (const Word& wi : w.words) {
        if (span.insert(vec_after_word(a, alpha, wi)))
            d_rows.push_back(wi);
        if (d_rows.size() == n)
            break;
    }
    if (d_rows.size() < n)
        throw ValidationError("W is not complete with respect to alpha");

    Rat delta(1, 2);
    for (int iter = 0; iter < 64; ++iter) {
        const RatMat mix = p2.scaled(Rat(1) - delta) + w_avg.scaled(delta);
        const RatMat s_delta = mix * p1;
        const RatVec beta = stationary_distribution(s_delta).alpha;
        RatMat d_mat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const RatVec row = vec_after_word(a, beta, d_rows[i]);
            for (std::size_t j = 0; j < n; ++j)
                d_mat.at(i, j) = row[j];
        }
        if (det_exact(d_mat) != 0) {
            CombineResult out{build_induced(a, w1, union_of(w2, w)), delta, beta,
                              std::move(d_rows)};
            return out;
        }
        delta /= 2;
    }
    throw BudgetError("mixing weight search exhausted after 64 halvings");
}

} // namespace synkit
