#include "synkit/automaton.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

namespace synkit {

Automaton::Automaton(std::size_t n, std::size_t k, std::vector<State> delta)
    : n_(n), k_(k), delta_(std::move(delta)) {
    if (n < 1 || k < 1)
        throw ValidationError("automaton needs n >= 1 and k >= 1");
    if (n > kMaxStates)
        throw ValidationError("automaton exceeds the state cap of 65536");
    if (delta_.size() != n * k)
        throw ValidationError("transition table has wrong size");
    for (State t : delta_)
        if (t >= n)
            throw ValidationError("transition target out of range");
}

State Automaton::run(State q, const Word& w) const {
    for (Letter a : w)
        q = delta_[q * k_ + a];
    return q;
}

std::vector<State> Automaton::word_action(const Word& w) const {
    std::vector<State> map(n_);
    for (State q = 0; q < n_; ++q)
        map[q] = q;
    for (Letter a : w) {
        for (State q = 0; q < n_; ++q)
            map[q] = delta_[map[q] * k_ + a];
    }
    return map;
}

StateSet Automaton::full_set() const {
    StateSet s(n_);
    s.set();
    return s;
}

void Automaton::validate_word(const Word& w) const {
    for (Letter a : w)
        if (a >= k_)
            throw ValidationError("letter index " + std::to_string(a) +
                                  " out of range for alphabet of size " + std::to_string(k_));
}

StateSet apply_word(const Automaton& a, const StateSet& s, const Word& w) {
    a.validate_word(w);
    if (s.size() != a.num_states())
        throw ValidationError("state set size mismatch");
    StateSet cur = s;
    for (Letter letter : w) {
        StateSet next(a.num_states());
        for (std::size_t q = cur.find_first(); q != StateSet::npos; q = cur.find_next(q))
            next.set(a.step(static_cast<State>(q), letter));
        cur = std::move(next);
    }
    return cur;
}

StateSet preimage(const Automaton& a, const StateSet& s, const Word& w) {
    a.validate_word(w);
    if (s.size() != a.num_states())
        throw ValidationError("state set size mismatch");
    StateSet cur = s;
    // Peel letters from the back: (S.u^-1).a^-1 with w = xa.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        StateSet next(a.num_states());
        for (State q = 0; q < a.num_states(); ++q)
            if (cur.test(a.step(q, *it)))
                next.set(q);
        cur = std::move(next);
    }
    return cur;
}

std::size_t rank_of_word(const Automaton& a, const Word& w) {
    return apply_word(a, a.full_set(), w).count();
}

StateSet singleton(std::size_t n, State q) {
    StateSet s(n);
    s.set(q);
    return s;
}

// -- pair BFS -----------------------------------------------------------------

std::size_t PairTable::index(State p, State q) const {
    // triangular index over p < q
    return static_cast<std::size_t>(p) * n_ - (static_cast<std::size_t>(p) * (p + 1)) / 2 +
           (q - p - 1);
}

PairTable::PairTable(const Automaton& a) : a_(&a), n_(a.num_states()) {
    const std::size_t k = a.num_letters();
    const std::size_t pairs = n_ * (n_ - 1) / 2;
    if (pairs * k > (std::size_t{1} << 31))
        throw BudgetError("pair graph too large");
    dist_.assign(pairs, -1);
    via_.assign(pairs, 0);

    // Reverse adjacency of the pair graph, then multi-source BFS from all
    // pairs some single letter merges.
    std::vector<std::vector<std::pair<std::uint32_t, Letter>>> rev(pairs);
    std::deque<std::uint32_t> queue;
    for (State p = 0; p < n_; ++p) {
        for (State q = p + 1; q < n_; ++q) {
            const std::size_t idx = index(p, q);
            for (Letter c = 0; c < k; ++c) {
                State tp = a.step(p, c);
                State tq = a.step(q, c);
                if (tp == tq) {
                    if (dist_[idx] < 0) {
                        dist_[idx] = 1;
                        via_[idx] = c;
                        queue.push_back(static_cast<std::uint32_t>(idx));
                    }
                } else {
                    if (tp > tq)
                        std::swap(tp, tq);
                    rev[index(tp, tq)].emplace_back(static_cast<std::uint32_t>(idx), c);
                }
            }
        }
    }
    while (!queue.empty()) {
        const std::uint32_t cur = queue.front();
        queue.pop_front();
        for (auto [pred, letter] : rev[cur]) {
            if (dist_[pred] < 0) {
                dist_[pred] = dist_[cur] + 1;
                via_[pred] = letter;
                queue.push_back(pred);
            }
        }
    }

    all_compressible_ = true;
    max_dist_ = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        if (dist_[i] < 0)
            all_compressible_ = false;
        else
            max_dist_ = std::max(max_dist_, static_cast<std::size_t>(dist_[i]));
    }
}

std::optional<std::size_t> PairTable::dist(State p, State q) const {
    if (p == q)
        return 0;
    if (p > q)
        std::swap(p, q);
    const std::int64_t d = dist_[index(p, q)];
    if (d < 0)
        return std::nullopt;
    return static_cast<std::size_t>(d);
}

Word PairTable::merge_word(State p, State q) const {
    Word w;
    if (p == q)
        return w;
    if (p > q)
        std::swap(p, q);
    std::size_t idx = index(p, q);
    if (dist_[idx] < 0)
        throw ValidationError("pair is incompressible");
    while (true) {
        const Letter c = via_[idx];
        w.push_back(c);
        State tp = a_->step(p, c);
        State tq = a_->step(q, c);
        if (tp == tq)
            return w;
        p = std::min(tp, tq);
        q = std::max(tp, tq);
        idx = index(p, q);
    }
}

std::optional<std::pair<State, State>> PairTable::incompressible_pair() const {
    for (State p = 0; p < n_; ++p)
        for (State q = p + 1; q < n_; ++q)
            if (dist_[index(p, q)] < 0)
                return std::make_pair(p, q);
    return std::nullopt;
}

bool is_synchronizing(const Automaton& a) {
    if (a.num_states() == 1)
        return true;
    return PairTable(a).all_compressible();
}

// -- SCC (iterative Tarjan) -----------------------------------------------------

std::vector<std::vector<State>> strongly_connected_components(const Automaton& a) {
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();
    constexpr std::uint32_t kUnset = 0xffffffffu;

    std::vector<std::uint32_t> idx(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    std::vector<std::vector<State>> sccs;
    std::uint32_t counter = 0;

    struct Frame {
        State q;
        std::size_t next_letter;
    };
    std::vector<Frame> call;

    for (State root = 0; root < n; ++root) {
        if (idx[root] != kUnset)
            continue;
        call.push_back({root, 0});
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_letter < k) {
                const State t = a.step(f.q, static_cast<Letter>(f.next_letter));
                ++f.next_letter;
                if (idx[t] == kUnset) {
                    idx[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    call.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.q] = std::min(low[f.q], idx[t]);
                }
            } else {
                const State q = f.q;
                call.pop_back();
                if (!call.empty())
                    low[call.back().q] = std::min(low[call.back().q], low[q]);
                if (low[q] == idx[q]) {
                    std::vector<State> comp;
                    while (true) {
                        const State w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == q)
                            break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
            }
        }
    }
    std::sort(sccs.begin(), sccs.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return sccs;
}

SinkComponents sink_component(const Automaton& a) {
    const auto sccs = strongly_connected_components(a);
    std::vector<std::uint32_t> comp_of(a.num_states());
    for (std::uint32_t c = 0; c < sccs.size(); ++c)
        for (State q : sccs[c])
            comp_of[q] = c;

    SinkComponents out;
    for (std::uint32_t c = 0; c < sccs.size(); ++c) {
        bool sink = true;
        for (State q : sccs[c]) {
            for (Letter l = 0; l < a.num_letters() && sink; ++l)
                if (comp_of[a.step(q, l)] != c)
                    sink = false;
            if (!sink)
                break;
        }
        if (sink) {
            StateSet s(a.num_states());
            for (State q : sccs[c])
                s.set(q);
            out.components.push_back(std::move(s));
        }
    }
    out.unique = out.components.size() == 1;
    return out;
}

bool is_strongly_connected(const Automaton& a) {
    return strongly_connected_components(a).size() == 1;
}

Automaton restrict_to(const Automaton& a, const StateSet& s, std::vector<State>* members) {
    if (s.size() != a.num_states() || s.none())
        throw ValidationError("restriction set must be a non-empty subset of the states");
    std::vector<State> states;
    std::vector<std::uint32_t> pos(a.num_states(), 0xffffffffu);
    for (std::size_t q = s.find_first(); q != StateSet::npos; q = s.find_next(q)) {
        pos[q] = static_cast<std::uint32_t>(states.size());
        states.push_back(static_cast<State>(q));
    }
    std::vector<State> delta(states.size() * a.num_letters());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (Letter l = 0; l < a.num_letters(); ++l) {
            const State t = a.step(states[i], l);
            if (!s.test(t))
                throw ValidationError("state set is not closed under the letters");
            delta[i * a.num_letters() + l] = pos[t];
        }
    }
    if (members)
        *members = states;
    return Automaton(states.size(), a.num_letters(), std::move(delta));
}

// -- text formats ----------------------------------------------------------------

namespace {

std::string next_data_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos)
            continue;
        if (line[i] == '#')
            continue;
        return line;
    }
    throw ValidationError("unexpected end of automaton file");
}

} // namespace

Automaton parse_automaton(std::istream& in) {
    std::istringstream head(next_data_line(in));
    long long n = 0, k = 0;
    if (!(head >> n >> k) || n < 1 || k < 1)
        throw ValidationError("automaton header must be 'n k' with n,k >= 1");
    std::vector<State> delta;
    delta.reserve(static_cast<std::size_t>(n * k));
    for (long long q = 0; q < n; ++q) {
        std::istringstream row(next_data_line(in));
        for (long long a = 0; a < k; ++a) {
            long long t;
            if (!(row >> t) || t < 0 || t >= n)
                throw ValidationError("bad transition entry in row " + std::to_string(q));
            delta.push_back(static_cast<State>(t));
        }
        long long extra;
        if (row >> extra)
            throw ValidationError("trailing entries in row " + std::to_string(q));
    }
    return Automaton(static_cast<std::size_t>(n), static_cast<std::size_t>(k), std::move(delta));
}

Automaton parse_automaton_string(const std::string& text) {
    std::istringstream in(text);
    return parse_automaton(in);
}

Automaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    return parse_automaton(in);
}

std::string format_automaton(const Automaton& a) {
    std::ostringstream out;
    out << a.num_states() << ' ' << a.num_letters() << '\n';
    for (State q = 0; q < a.num_states(); ++q) {
        for (Letter l = 0; l < a.num_letters(); ++l) {
            if (l)
                out << ' ';
            out << a.step(q, l);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_dot(const Automaton& a) {
    std::ostringstream out;
    out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (State q = 0; q < a.num_states(); ++q) {
        // group parallel edges into one arrow with a combined label
        std::vector<std::vector<Letter>> by_target(a.num_states());
        for (Letter l = 0; l < a.num_letters(); ++l)
            by_target[a.step(q, l)].push_back(l);
        for (State t = 0; t < a.num_states(); ++t) {
            if (by_target[t].empty())
                continue;
            out << "  " << q << " -> " << t << " [label=\"";
            for (std::size_t i = 0; i < by_target[t].size(); ++i) {
                if (i)
                    out << ',';
                out << 'a' << by_target[t][i];
            }
            out << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string word_human(const Word& w, std::size_t k) {
    if (w.empty())
        return "eps";
    std::ostringstream out;
    if (k <= 10) {
        for (Letter a : w)
            out << 'a' << a;
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                out << ' ';
            out << 'a' << w[i];
        }
    }
    return out.str();
}

std::string word_machine(const Word& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out << ' ';
        out << w[i];
    }
    return out.str();
}

std::uint64_t automaton_hash(const Automaton& a) {
    const std::string text = format_automaton(a);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

bool word_less(const Word& u, const Word& v) {
    if (u.size() != v.size())
        return u.size() < v.size();
    return u < v;
}

} // namespace synkit
