#include "synkit/classes.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "synkit/simplex.hpp"

namespace synkit {

std::string QuasiEulerianWitness::serialize() const {
    std::ostringstream out;
    out << "c=" << c << '\n';
    out << "e_set=";
    bool first = true;
    for (std::size_t q = e_set.find_first(); q != StateSet::npos; q = e_set.find_next(q)) {
        if (!first)
            out << ',';
        out << q;
        first = false;
    }
    out << '\n';
    out << "s=" << (s ? std::to_string(*s) : "-") << '\n';
    out << "structural=" << (structural_ok ? "true" : "false") << '\n';
    for (std::size_t l = 0; l < p.p.size(); ++l)
        out << "p" << l << '=' << format_rat(p.p[l]) << '\n';
    for (std::size_t q = 0; q < alpha.size(); ++q)
        out << "alpha" << q << '=' << format_rat(alpha[q]) << '\n';
    return out.str();
}

namespace {

// Stationary vector with equal entries on E, for a fixed letter distribution:
// solve the stationarity equations plus normalization under the equality
// constraints, exactly. Unknowns: one shared value for E, one value per state
// outside E.
std::optional<RatVec> equal_entry_stationary(const Automaton& a, const StateSet& e,
                                             const LetterDistribution& p) {
    const std::size_t n = a.num_states();
    const RatMat m = markov_matrix(a, p);

    std::vector<std::size_t> var_of(n); // state -> unknown index; E shares unknown 0
    std::size_t vars = 1;
    for (State q = 0; q < n; ++q)
        var_of[q] = e.test(q) ? 0 : vars++;

    std::vector<RatVec> rows;
    RatVec rhs;
    for (std::size_t j = 0; j < n; ++j) { // stationarity at state j
        RatVec eq(vars, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            Rat coef = m.at(i, j);
            if (i == j)
                coef -= 1;
            if (coef != 0)
                eq[var_of[i]] += coef;
        }
        rows.push_back(std::move(eq));
        rhs.push_back(0);
    }
    RatVec norm(vars, Rat(0));
    for (State q = 0; q < n; ++q)
        norm[var_of[q]] += 1;
    rows.push_back(std::move(norm));
    rhs.push_back(1);

    const LinearSolution sol = solve_exact(rows, rhs);
    if (!sol.consistent)
        return std::nullopt;
    RatVec alpha(n);
    for (State q = 0; q < n; ++q) {
        alpha[q] = sol.x[var_of[q]];
        if (alpha[q] < 0)
            return std::nullopt;
    }
    if (mul_row(alpha, m) != alpha)
        return std::nullopt; // free-variable zeroing may miss; treat as no witness
    return alpha;
}

// in-edge condition: no transition from outside E may enter E \ {s}
bool external_edges_only_into(const Automaton& a, const StateSet& e, State s) {
    for (State q = 0; q < a.num_states(); ++q) {
        if (e.test(q))
            continue;
        for (Letter l = 0; l < a.num_letters(); ++l) {
            const State t = a.step(q, l);
            if (e.test(t) && t != s)
                return false;
        }
    }
    return true;
}

// Positive letter distribution making the columns of [P] at E \ {s} sum to 1,
// found by maximizing the minimum letter probability with an exact simplex.
std::optional<LetterDistribution> column_sum_distribution(const Automaton& a, const StateSet& e,
                                                          State s) {
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();
    std::vector<std::vector<std::size_t>> colsum(k, std::vector<std::size_t>(n, 0));
    for (State q = 0; q < n; ++q)
        for (Letter l = 0; l < k; ++l)
            ++colsum[l][a.step(q, l)];

    // variables: P_0..P_{k-1}, t, slack_0..slack_{k-1}
    std::vector<std::size_t> cols;
    for (std::size_t q = e.find_first(); q != StateSet::npos; q = e.find_next(q))
        if (q != s)
            cols.push_back(q);
    const std::size_t m = cols.size() + 1 + k;
    const std::size_t vars = k + 1 + k;
    RatMat lp(m, vars);
    RatVec b(m, Rat(0));
    std::size_t row = 0;
    for (const std::size_t q : cols) {
        for (Letter l = 0; l < k; ++l)
            lp.at(row, l) = static_cast<long>(colsum[l][q]);
        b[row] = 1;
        ++row;
    }
    for (Letter l = 0; l < k; ++l)
        lp.at(row, l) = 1;
    b[row] = 1;
    ++row;
    for (Letter l = 0; l < k; ++l) {
        lp.at(row, l) = 1;
        lp.at(row, k) = -1;
        lp.at(row, k + 1 + l) = -1;
        b[row] = 0;
        ++row;
    }
    RatVec c(vars, Rat(0));
    c[k] = 1; // maximize t

    const LpResult res = solve_lp_max(lp, b, c);
    if (res.status != LpStatus::Optimal || res.objective <= 0)
        return std::nullopt;
    LetterDistribution dist;
    dist.p.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
    dist.validate(k);
    return dist;
}

// next size-m subset of {0..n-1} in lexicographic order; false when done
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t m = comb.size();
    std::size_t i = m;
    while (i > 0) {
        --i;
        if (comb[i] < n - m + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < m; ++j)
                comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::optional<QuasiEulerianWitness> detect_quasi_eulerian(const Automaton& a, std::size_t c,
                                                          std::size_t budget) {
    const std::size_t n = a.num_states();
    if (c >= n)
        throw ValidationError("defect c must be smaller than the state count");
    const std::size_t size = n - c;

    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    std::size_t tried = 0;
    do {
        if (++tried > budget)
            throw BudgetError("quasi-Eulerian enumeration budget exceeded after " +
                              std::to_string(tried - 1) + " candidate sets");
        StateSet e(n);
        for (const std::size_t q : comb)
            e.set(q);
        for (const std::size_t s : comb) {
            const auto dist = column_sum_distribution(a, e, static_cast<State>(s));
            if (!dist)
                continue;
            const auto alpha = equal_entry_stationary(a, e, *dist);
            if (!alpha)
                continue;
            QuasiEulerianWitness w;
            w.c = c;
            w.e_set = e;
            w.p = *dist;
            w.alpha = *alpha;
            w.structural_ok = external_edges_only_into(a, e, static_cast<State>(s));
            // report a distinguished state with external in-edges when one exists
            w.s = static_cast<State>(s);
            for (const std::size_t cand : comb) {
                bool external = false;
                for (State q = 0; q < n && !external; ++q)
                    if (!e.test(q))
                        for (Letter l = 0; l < a.num_letters(); ++l)
                            if (a.step(q, l) == cand) {
                                external = true;
                                break;
                            }
                if (external) {
                    w.s = static_cast<State>(cand);
                    break;
                }
            }
            return w;
        }
    } while (next_combination(comb, n));
    return std::nullopt;
}

ResetCertificate quasi_eulerian_reset(const Automaton& a, std::size_t c) {
    const std::size_t n = a.num_states();
    if (n == 1)
        return make_certificate(a, {}, "quasi-eulerian", 0, {});
    if (!is_synchronizing(a))
        throw ValidationError("automaton is not synchronizing");
    if (!is_strongly_connected(a))
        throw ClassMismatchError("quasi-Eulerian synthesis needs a strongly connected automaton");

    const auto witness = detect_quasi_eulerian(a, c);
    if (!witness)
        throw ClassMismatchError("no quasi-Eulerian witness for defect " + std::to_string(c));
    const RatVec& alpha = witness->alpha;

    // minimal completeness length d
    const AlphaReduction detail = reduce_alpha_detail(a, n - 1, alpha, n);
    if (!detail.full_rank_level)
        throw CriterionError("stationary vector is not complete for the full space");
    const std::size_t d = std::max<std::size_t>(*detail.full_rank_level, 1);

    const WordSet reduced = reduce_alpha(a, d, alpha);

    // expand to letter-prefixed proper suffixes; this set supports a positive
    // distribution whose stationary vector is alpha
    std::vector<Word> expanded;
    std::set<Word> suffixes;
    for (const Word& u : reduced.words)
        for (std::size_t i = 1; i <= u.size(); ++i)
            suffixes.insert(Word(u.begin() + static_cast<std::ptrdiff_t>(i), u.end()));
    if (suffixes.empty())
        suffixes.insert(Word{});
    for (const Word& suf : suffixes)
        for (Letter l = 0; l < a.num_letters(); ++l) {
            Word w{l};
            w.insert(w.end(), suf.begin(), suf.end());
            expanded.push_back(std::move(w));
        }
    WordSet w2 = WordSet::of(std::move(expanded));

    WordSet w1;
    w1.words.emplace_back();
    ResetCertificate inner = greedy_extension(a, w1, w2, alpha, Word{});

    std::int64_t bound;
    if (c == 0)
        bound = sat_add(1, sat_mul(static_cast<std::int64_t>(n) - 2,
                                   static_cast<std::int64_t>(d)));
    else
        bound = sat_mul(sat_mul(std::int64_t{1} << std::min<std::size_t>(c, 62),
                                static_cast<std::int64_t>(n - c + 1)),
                        static_cast<std::int64_t>(d));
    return make_certificate(a, std::move(inner.word), "quasi-eulerian", bound,
                            std::move(inner.steps));
}

// -- clusters --------------------------------------------------------------------

ClusterStructure letter_clusters(const Automaton& a, Letter letter) {
    if (letter >= a.num_letters())
        throw ValidationError("letter index out of range");
    const std::size_t n = a.num_states();
    std::vector<State> f(n);
    for (State q = 0; q < n; ++q)
        f[q] = a.step(q, letter);

    // cycle detection by walking with colors
    std::vector<std::uint8_t> color(n, 0); // 0 new, 1 on path, 2 done
    std::vector<bool> on_cycle(n, false);
    for (State start = 0; start < n; ++start) {
        if (color[start])
            continue;
        std::vector<State> path;
        State q = start;
        while (color[q] == 0) {
            color[q] = 1;
            path.push_back(q);
            q = f[q];
        }
        if (color[q] == 1) { // found a fresh cycle; mark it
            State t = q;
            do {
                on_cycle[t] = true;
                t = f[t];
            } while (t != q);
        }
        for (const State p : path)
            color[p] = 2;
    }

    // heights: distance to the cycle
    std::vector<std::size_t> height(n, 0);
    for (State q = 0; q < n; ++q) {
        if (on_cycle[q])
            continue;
        std::size_t h = 0;
        State t = q;
        while (!on_cycle[t]) {
            ++h;
            t = f[t];
        }
        height[q] = h;
    }

    // components via union-find over q ~ f(q)
    std::vector<State> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](State q) {
        while (parent[q] != q) {
            parent[q] = parent[parent[q]];
            q = parent[q];
        }
        return q;
    };
    for (State q = 0; q < n; ++q) {
        const State x = find(q), y = find(f[q]);
        if (x != y)
            parent[std::max(x, y)] = std::min(x, y);
    }

    std::vector<std::vector<State>> groups(n);
    for (State q = 0; q < n; ++q)
        groups[find(q)].push_back(q);

    ClusterStructure out;
    out.letter = letter;
    for (State root = 0; root < n; ++root) {
        if (groups[root].empty())
            continue;
        Cluster cl;
        cl.members = groups[root];
        State cycle_min = 0;
        bool have = false;
        for (const State q : cl.members) {
            if (on_cycle[q] && (!have || q < cycle_min)) {
                cycle_min = q;
                have = true;
            }
            cl.heights.push_back(height[q]);
            cl.height = std::max(cl.height, height[q]);
        }
        State t = cycle_min;
        do {
            cl.cycle.push_back(t);
            t = f[t];
        } while (t != cycle_min);
        out.clusters.push_back(std::move(cl));
    }
    std::size_t total_cycle = 0;
    for (std::size_t i = 0; i < out.clusters.size(); ++i) {
        total_cycle += out.clusters[i].cycle.size();
        out.height = std::max(out.height, out.clusters[i].height);
        if (out.clusters[i].cycle.size() > out.clusters[out.largest].cycle.size())
            out.largest = i;
    }
    out.other_cycle_states = total_cycle - out.clusters[out.largest].cycle.size();
    return out;
}

std::size_t min_quasi_one_cluster_defect(const Automaton& a) {
    std::size_t best = a.num_states();
    for (Letter l = 0; l < a.num_letters(); ++l)
        best = std::min(best, letter_clusters(a, l).other_cycle_states);
    return best;
}

namespace {

bool is_prime(std::size_t x) {
    if (x < 2)
        return false;
    for (std::size_t d = 2; d * d <= x; ++d)
        if (x % d == 0)
            return false;
    return true;
}

} // namespace

ResetCertificate quasi_one_cluster_reset(const Automaton& a, std::size_t c) {
    const std::size_t n = a.num_states();
    if (n == 1)
        return make_certificate(a, {}, "quasi-one-cluster", 0, {});
    if (!is_synchronizing(a))
        throw ValidationError("automaton is not synchronizing");

    // first letter whose clusters leave at most c cycle states outside the largest
    std::optional<ClusterStructure> chosen;
    for (Letter l = 0; l < a.num_letters(); ++l) {
        ClusterStructure cs = letter_clusters(a, l);
        if (cs.other_cycle_states <= c) {
            chosen = std::move(cs);
            break;
        }
    }
    if (!chosen)
        throw ClassMismatchError("no letter has defect at most " + std::to_string(c));

    const Letter letter = chosen->letter;
    const std::size_t cycle_len = chosen->largest_cluster().cycle.size();
    const std::size_t h = chosen->height;

    const std::int64_t nn = static_cast<std::int64_t>(n);
    const std::size_t r = is_prime(cycle_len) ? cycle_len : 2;
    std::int64_t bound;
    if (c == 0)
        bound = sat_add(1, sat_mul(2 * nn - static_cast<std::int64_t>(r), nn - 2));
    else
        bound = sat_mul(sat_mul(std::int64_t{1} << std::min<std::size_t>(c, 62),
                                2 * nn - static_cast<std::int64_t>(c)),
                        nn - static_cast<std::int64_t>(c) + 1);

    // single cycle state: the letter power alone resets
    if (cycle_len == 1 && chosen->other_cycle_states == 0) {
        Word w(h, letter);
        return make_certificate(a, std::move(w), "quasi-one-cluster", bound, {});
    }

    if (!is_strongly_connected(a)) {
        // funnel everything into the sink, then solve the sink automaton
        const SinkComponents sinks = sink_component(a);
        if (!sinks.unique)
            throw InternalError("synchronizing automaton must have a unique sink component");
        const StateSet& s = sinks.components[0];
        std::vector<State> members;
        const Automaton sub = restrict_to(a, s, &members);

        Word v;
        StateSet cur = a.full_set();
        while (true) {
            StateSet outside = cur - (cur & s);
            if (outside.none())
                break;
            // shortest word taking the smallest outside state into the sink
            const State q = static_cast<State>(outside.find_first());
            std::deque<std::pair<State, Word>> queue{{q, {}}};
            std::vector<bool> seen(n, false);
            seen[q] = true;
            Word best;
            bool found = false;
            while (!queue.empty() && !found) {
                auto [p, w] = queue.front();
                queue.pop_front();
                for (Letter l = 0; l < a.num_letters() && !found; ++l) {
                    const State t = a.step(p, l);
                    Word next = w;
                    next.push_back(l);
                    if (s.test(t)) {
                        best = next;
                        found = true;
                    } else if (!seen[t]) {
                        seen[t] = true;
                        queue.emplace_back(t, std::move(next));
                    }
                }
            }
            if (!found)
                throw InternalError("state cannot reach the sink component");
            v = concat(v, best);
            cur = apply_word(a, cur, best);
        }

        ResetCertificate sub_cert = quasi_one_cluster_reset(sub, c);
        Word lifted;
        for (const Letter l : sub_cert.word)
            lifted.push_back(l);
        Word word = concat(v, lifted);
        std::vector<Word> steps = std::move(sub_cert.steps);
        steps.insert(steps.begin(), v);
        return make_certificate(a, std::move(word), "quasi-one-cluster", bound,
                                std::move(steps));
    }

    // W1 = letter powers h..h+|C|-1; W2 = reduced words of the proof length
    std::vector<Word> powers;
    for (std::size_t i = 0; i < cycle_len; ++i)
        powers.emplace_back(h + i, letter);
    WordSet w1 = WordSet::of(std::move(powers));
    const std::size_t d2 = c == 0 ? n - r + 1 : n - 1;
    WordSet w2 = reduce_general(a, d2);

    const RatMat chain = wordset_matrix(a, w2) * wordset_matrix(a, w1);
    const RatVec beta = stationary_distribution(chain).alpha;

    Word w0(h, letter);
    ResetCertificate inner = greedy_extension(a, w1, w2, beta, w0);
    return make_certificate(a, std::move(inner.word), "quasi-one-cluster", bound,
                            std::move(inner.steps));
}

} // namespace synkit
