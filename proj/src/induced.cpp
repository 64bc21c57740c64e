#include "synkit/induced.hpp"

#include <algorithm>
#include <map>

#include "synkit/synthesis.hpp"

namespace synkit {

WordSet WordSet::of(std::vector<Word> ws) {
    std::sort(ws.begin(), ws.end(), word_less);
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    WordSet out;
    out.words = std::move(ws);
    return out;
}

WordSet WordSet::all_up_to(std::size_t k, std::size_t d) {
    WordSet out;
    out.words.emplace_back();
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= d; ++len) {
        const std::size_t level_end = out.words.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Letter a = 0; a < k; ++a) {
                Word w = out.words[i];
                w.push_back(a);
                out.words.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return out;
}

WordSet WordSet::with_uniform_dist() const {
    WordSet out = *this;
    out.dist = std::vector<Rat>(words.size(), Rat(1, static_cast<long>(words.size())));
    return out;
}

std::size_t WordSet::max_length() const {
    std::size_t m = 0;
    for (const Word& w : words)
        m = std::max(m, w.size());
    return m;
}

bool WordSet::contains(const Word& w) const {
    return std::binary_search(words.begin(), words.end(), w, word_less);
}

void WordSet::validate(const Automaton& a) const {
    if (words.empty())
        throw ValidationError("word set must be non-empty");
    for (const Word& w : words)
        a.validate_word(w);
    if (dist) {
        if (dist->size() != words.size())
            throw ValidationError("word distribution has wrong arity");
        Rat sum = 0;
        for (const Rat& p : *dist) {
            if (p <= 0)
                throw ValidationError("word probabilities must be positive");
            sum += p;
        }
        if (sum != 1)
            throw ValidationError("word probabilities must sum to 1");
    }
}

WordSet union_of(const WordSet& x, const WordSet& y) {
    std::vector<Word> all = x.words;
    all.insert(all.end(), y.words.begin(), y.words.end());
    return WordSet::of(std::move(all));
}

std::size_t InducedAutomaton::index_of(State base_state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), base_state);
    if (it == states.end() || *it != base_state)
        throw ValidationError("state is not in R");
    return static_cast<std::size_t>(it - states.begin());
}

InducedAutomaton build_induced(const Automaton& a, const WordSet& w1, const WordSet& w2) {
    w1.validate(a);
    w2.validate(a);

    const std::size_t n = a.num_states();
    StateSet r_set(n);
    for (const Word& w : w1.words) {
        const auto action = a.word_action(w);
        for (State q = 0; q < n; ++q)
            r_set.set(action[q]);
    }
    std::vector<State> states;
    for (std::size_t q = r_set.find_first(); q != StateSet::npos; q = r_set.find_next(q))
        states.push_back(static_cast<State>(q));

    // Composite letters in (w2, w1) order, deduplicated by action on R.
    std::vector<Word> letters;
    std::vector<std::vector<State>> actions; // per letter: R-index -> R-index
    std::map<std::vector<State>, std::size_t> seen;
    for (const Word& u2 : w2.words) {
        const auto act2 = a.word_action(u2);
        for (const Word& u1 : w1.words) {
            const auto act1 = a.word_action(u1);
            std::vector<State> on_r(states.size());
            for (std::size_t i = 0; i < states.size(); ++i) {
                const State target = act1[act2[states[i]]];
                const auto it = std::lower_bound(states.begin(), states.end(), target);
                on_r[i] = static_cast<State>(it - states.begin());
            }
            if (seen.emplace(on_r, letters.size()).second) {
                letters.push_back(concat(u2, u1));
                actions.push_back(std::move(on_r));
            }
        }
    }

    InducedAutomaton out{a, std::move(states), std::move(r_set), std::move(letters), {}};
    out.table.resize(out.states.size() * out.letters.size());
    for (std::size_t i = 0; i < out.states.size(); ++i)
        for (std::size_t l = 0; l < out.letters.size(); ++l)
            out.table[i * out.letters.size() + l] = actions[l][i];
    return out;
}

RatMat wordset_matrix(const Automaton& a, const WordSet& ws) {
    ws.validate(a);
    const std::vector<Rat>& dist =
        ws.dist ? *ws.dist : std::vector<Rat>(ws.words.size(), Rat(1, static_cast<long>(ws.words.size())));
    RatMat m(a.num_states(), a.num_states());
    for (std::size_t i = 0; i < ws.words.size(); ++i) {
        const auto action = a.word_action(ws.words[i]);
        for (State q = 0; q < a.num_states(); ++q)
            m.at(q, action[q]) += dist[i];
    }
    return m;
}

RatMat induced_markov(const InducedAutomaton& b, const WordSet& w1, const WordSet& w2) {
    const RatMat product = wordset_matrix(b.base, w2) * wordset_matrix(b.base, w1);
    const std::size_t r = b.r();
    RatMat out(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.at(i, j) = product.at(b.states[i], b.states[j]);
    if (!out.is_row_stochastic())
        throw InternalError("induced chain is not row stochastic");
    return out;
}

bool is_complete(const Automaton& a, const WordSet& ws, const RatVec& alpha,
                 const StateSet& v_states) {
    ws.validate(a);
    if (alpha.size() != a.num_states())
        throw ValidationError("alpha has wrong length");
    const std::size_t target = v_states.count();
    SpanBasis span(a.num_states());
    for (const Word& w : ws.words) {
        const RatVec v = vec_after_word(a, alpha, w);
        for (std::size_t q = 0; q < v.size(); ++q)
            if (v[q] != 0 && !v_states.test(q))
                return false; // vector sticks out of the coordinate subspace
        span.insert(v);
        if (span.rank() == target)
            return true;
    }
    return span.rank() == target;
}

Word find_extension_word(const Automaton& a, const RatVec& x, const RatVec& alpha,
                         const WordSet& ws) {
    ws.validate(a);
    const Rat base = dot(x, alpha);
    for (const Word& w : ws.words) {
        if (dot(x, vec_after_word(a, alpha, w)) > base)
            return w;
    }
    throw CriterionError("no extension word exists; completeness premises do not hold");
}

bool criterion_synchronizing(const Automaton& a, const LetterDistribution& p) {
    if (!is_strongly_connected(a))
        throw ValidationError("criterion requires a strongly connected automaton");
    const std::size_t n = a.num_states();
    if (n == 1)
        return true;
    const RatVec alpha = stationary_distribution(markov_matrix(a, p)).alpha;
    const WordSet reduced = reduce_alpha(a, n - 1, alpha);
    return is_complete(a, reduced, alpha, a.full_set());
}

} // namespace synkit
