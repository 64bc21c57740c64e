#include "synkit/codes.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace synkit {

void PrefixCode::validate() const {
    if (k < 2)
        throw ValidationError("prefix code needs an alphabet of at least 2 letters");
    if (k > 10)
        throw ValidationError("prefix code digits support alphabets up to 10 letters");
    if (words.empty())
        throw ValidationError("prefix code must be non-empty");
    for (const std::string& w : words) {
        if (w.empty())
            throw ValidationError("codewords must be non-empty");
        for (const char ch : w)
            if (ch < '0' || ch >= static_cast<char>('0' + k))
                throw ValidationError("codeword '" + w + "' has a digit outside the alphabet");
    }
    std::vector<std::string> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i] == sorted[i + 1])
            throw ValidationError("duplicate codeword '" + sorted[i] + "'");
        if (sorted[i + 1].compare(0, sorted[i].size(), sorted[i]) == 0)
            throw ValidationError("'" + sorted[i] + "' is a prefix of '" + sorted[i + 1] + "'");
    }
    Rat kraft = 0;
    for (const std::string& w : words) {
        Rat term = 1;
        for (std::size_t i = 0; i < w.size(); ++i)
            term /= static_cast<long>(k);
        kraft += term;
    }
    if (kraft != 1)
        throw ValidationError("code is not maximal: Kraft sum is " + format_rat(kraft));
}

PrefixCode PrefixCode::parse(std::istream& in) {
    PrefixCode t;
    std::string line;
    bool have_k = false;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#')
            continue;
        std::istringstream row(line);
        if (!have_k) {
            long long k = 0;
            if (!(row >> k) || k < 2)
                throw ValidationError("prefix code header must be the alphabet size");
            t.k = static_cast<std::size_t>(k);
            have_k = true;
        } else {
            std::string w;
            row >> w;
            t.words.push_back(w);
        }
    }
    if (!have_k)
        throw ValidationError("empty prefix code file");
    std::sort(t.words.begin(), t.words.end());
    t.validate();
    return t;
}

PrefixCode PrefixCode::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    return parse(in);
}

std::string PrefixCode::format() const {
    std::ostringstream out;
    out << k << '\n';
    std::vector<std::string> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    for (const std::string& w : sorted)
        out << w << '\n';
    return out.str();
}

namespace {

bool label_less(const std::string& x, const std::string& y) {
    if (x.size() != y.size())
        return x.size() < y.size();
    return x < y;
}

} // namespace

Decoder decoder_from_code(const PrefixCode& t) {
    t.validate();
    // states are the proper prefixes, in (length, lex) order; the root is ""
    std::vector<std::string> prefixes;
    for (const std::string& w : t.words)
        for (std::size_t len = 0; len < w.size(); ++len)
            prefixes.push_back(w.substr(0, len));
    std::sort(prefixes.begin(), prefixes.end(), label_less);
    prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());

    std::map<std::string, State> id;
    for (std::size_t i = 0; i < prefixes.size(); ++i)
        id[prefixes[i]] = static_cast<State>(i);
    std::set<std::string> codewords(t.words.begin(), t.words.end());

    const std::size_t n = prefixes.size();
    const std::size_t k = t.k;
    if (n != (t.words.size() - 1) / (k - 1))
        throw InternalError("decoder state count disagrees with the code size");

    std::vector<State> delta(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            std::string child = prefixes[i];
            child.push_back(static_cast<char>('0' + a));
            if (codewords.count(child)) {
                delta[i * k + a] = 0;
            } else {
                const auto it = id.find(child);
                if (it == id.end())
                    throw InternalError("maximal code is missing an internal node");
                delta[i * k + a] = it->second;
            }
        }
    }
    Decoder d{Automaton(n, k, std::move(delta)), std::move(prefixes), 0};
    for (const std::string& label : d.state_labels)
        d.height = std::max(d.height, label.size());
    d.height += 1; // codewords are one longer than the deepest proper prefix
    return d;
}

std::string format_labels(const Decoder& d) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.state_labels.size(); ++i)
        out << i << ' ' << (d.state_labels[i].empty() ? "eps" : d.state_labels[i]) << '\n';
    return out.str();
}

std::optional<Decoder> as_decoder(const Automaton& a) {
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();
    if (n == 1) {
        Decoder d{a, {""}, 1};
        return d;
    }
    // every non-root state needs exactly one incoming edge
    std::vector<std::size_t> indeg(n, 0);
    for (State q = 0; q < n; ++q)
        for (Letter l = 0; l < k; ++l) {
            const State t = a.step(q, l);
            if (t != 0)
                ++indeg[t];
        }
    for (State q = 1; q < n; ++q)
        if (indeg[q] != 1)
            return std::nullopt;
    // the tree edges must reach every state from the root
    std::vector<std::string> labels(n);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<State> queue{0};
    std::size_t visited = 1;
    while (!queue.empty()) {
        const State q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < k; ++l) {
            const State t = a.step(q, l);
            if (t == 0)
                continue;
            if (seen[t])
                return std::nullopt; // two tree edges into one state
            seen[t] = true;
            labels[t] = labels[q] + static_cast<char>('0' + l);
            queue.push_back(t);
            ++visited;
        }
    }
    if (visited != n)
        return std::nullopt;
    Decoder d{a, std::move(labels), 0};
    for (const std::string& label : d.state_labels)
        d.height = std::max(d.height, label.size());
    d.height += 1;
    return d;
}

Word small_rank_word(const Decoder& d) {
    const Automaton& a = d.automaton;
    const std::size_t n = a.num_states();
    if (n == 1)
        return {};
    const std::size_t k = a.num_letters();
    std::size_t r = 0;
    for (std::size_t pow = 1; pow < n; pow *= k)
        ++r;
    for (std::size_t len = 1; len <= r; ++len) {
        Word w(len, 0);
        while (true) {
            if (rank_of_word(a, w) <= len)
                return w;
            // next word of the same length in lex order
            std::size_t i = len;
            while (i > 0 && w[i - 1] == k - 1)
                w[--i] = 0;
            if (i == 0)
                break;
            ++w[i - 1];
        }
    }
    throw InternalError("no word of logarithmic rank exists; decoder structure violated");
}

ResetCertificate decoder_reset(const Decoder& d) {
    const Automaton& a = d.automaton;
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();

    std::size_t r_formula = 0;
    for (std::size_t pow = 1; pow < n; pow *= k)
        ++r_formula;
    const auto rf = static_cast<std::int64_t>(r_formula);
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t bound;
    if (r_formula >= 4)
        bound = sat_add(2, sat_mul(rf + nn - 1, (rf * rf * rf - rf) / 6 - 1));
    else
        bound = sat_add(2, sat_mul(rf + nn - 1, (rf - 1) * (rf - 1)));
    const std::int64_t pair_bound = sat_add(rf, sat_mul(rf + nn - 1, (rf * rf - rf) / 2));

    if (n == 1) {
        ResetCertificate cert = make_certificate(a, {}, "decoder", std::max<std::int64_t>(bound, 0), {});
        cert.pair_compression_bound = pair_bound;
        return cert;
    }
    if (!is_synchronizing(a))
        throw ValidationError("decoder is not synchronizing");

    const Word w = small_rank_word(d);
    RankSynthesis syn = synthesize_via_small_rank(a, w, true);
    if (static_cast<std::int64_t>(syn.word.size()) > bound)
        syn = synthesize_via_small_rank(a, w, false, true);
    ResetCertificate cert =
        make_certificate(a, std::move(syn.word), "decoder", bound, std::move(syn.steps));
    cert.pair_compression_bound = pair_bound;
    return cert;
}

// -- generators -----------------------------------------------------------------------

Automaton gen_cerny(std::size_t n) {
    if (n < 2)
        throw ValidationError("the cyclic family needs n >= 2");
    std::vector<State> delta(n * 2);
    for (State q = 0; q < n; ++q) {
        delta[q * 2 + 0] = static_cast<State>((q + 1) % n);        // letter a cycles
        delta[q * 2 + 1] = q + 1 == n ? 0 : q;                     // letter b shifts only n-1
    }
    return Automaton(n, 2, std::move(delta));
}

Automaton gen_xnk(std::size_t n, std::size_t k) {
    if (k < 3)
        throw ValidationError("the linear-threshold decoder family needs k >= 3");
    if (n < k + 2)
        throw ValidationError("the linear-threshold decoder family needs n >= k + 2");
    const std::size_t ell = (n + k) / (k + 1) - 1; // ceil(n/(k+1)) - 1
    std::vector<State> delta(n * k, 0);            // default: everything returns to 0
    for (std::size_t i = 0; i < ell; ++i) {
        const std::size_t branch = (k + 1) * i;
        for (std::size_t j = 1; j <= k; ++j)
            if (branch + j <= n - 1)
                delta[branch * k + (j - 1)] = static_cast<State>(branch + j);
        // the +1 child continues the letter-0 chain to the next branch state
        delta[(branch + 1) * k + 0] = static_cast<State>((k + 1) * (i + 1));
    }
    for (std::size_t i = (k + 1) * ell; i + 1 <= n - 1; ++i)
        delta[i * k + 0] = static_cast<State>(i + 1);
    return Automaton(n, k, std::move(delta));
}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0)
        throw ValidationError("empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng rng(seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full));
    return rng.next();
}

Automaton gen_random_dfa(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (n < 1 || k < 1)
        throw ValidationError("need n >= 1 and k >= 1");
    Rng rng(seed);
    std::vector<State> delta(n * k);
    for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = static_cast<State>(rng.below(n));
    return Automaton(n, k, std::move(delta));
}

Decoder gen_random_decoder(std::size_t n, std::uint64_t seed) {
    if (n < 1)
        throw ValidationError("need at least one internal node");
    Rng rng(seed);

    // leaf-insertion growth: pick any node of the current tree uniformly,
    // push it down under a fresh internal node and attach a fresh leaf on a
    // uniformly chosen side; after n rounds the tree is uniform over all
    // binary trees with n internal nodes
    struct Node {
        std::int32_t left = -1, right = -1; // -1 = leaf
    };
    std::vector<Node> nodes;   // internal nodes
    // encode tree slots as: (owner, side); root slot is (-1, 0)
    std::int32_t root = -1;    // index into nodes, or -1 while the tree is a single leaf
    struct Slot {
        std::int32_t parent;
        int side;
    };
    // total nodes after i insertions: 2i + 1 (internal + leaves)
    std::vector<Slot> all_slots{{-1, 0}};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = rng.below(all_slots.size());
        const int new_side = static_cast<int>(rng.below(2));
        const Slot target = all_slots[pick];
        const auto fresh = static_cast<std::int32_t>(nodes.size());
        nodes.push_back({});

        // displaced subtree: whatever occupied the picked slot
        std::int32_t displaced;
        if (target.parent < 0)
            displaced = root;
        else
            displaced = target.side == 0 ? nodes[target.parent].left : nodes[target.parent].right;

        if (new_side == 0) {
            nodes[fresh].left = -1; // fresh leaf
            nodes[fresh].right = displaced;
        } else {
            nodes[fresh].left = displaced;
            nodes[fresh].right = -1;
        }
        if (target.parent < 0)
            root = fresh;
        else if (target.side == 0)
            nodes[target.parent].left = fresh;
        else
            nodes[target.parent].right = fresh;

        // update slots: the picked slot now holds `fresh`; its two child slots
        // replace the old references
        all_slots[pick] = target; // unchanged: still the same (parent, side) position
        all_slots.push_back({fresh, 0});
        all_slots.push_back({fresh, 1});
    }

    // read codewords off the tree
    PrefixCode code;
    code.k = 2;
    std::vector<std::pair<std::int32_t, std::string>> stack{{root, ""}};
    while (!stack.empty()) {
        auto [node, path] = stack.back();
        stack.pop_back();
        if (node < 0) {
            code.words.push_back(path);
            continue;
        }
        stack.emplace_back(nodes[node].right, path + "1");
        stack.emplace_back(nodes[node].left, path + "0");
    }
    std::sort(code.words.begin(), code.words.end());
    return decoder_from_code(code);
}

} // namespace synkit
