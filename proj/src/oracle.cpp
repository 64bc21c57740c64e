#include "synkit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace synkit {

namespace {

std::size_t memory_budget_mb(const OracleOptions& options) {
    if (options.memory_budget_mb)
        return options.memory_budget_mb;
    if (const char* env = std::getenv("SYNKIT_MEMORY_BUDGET_MB")) {
        const long v = std::atol(env);
        if (v > 0)
            return static_cast<std::size_t>(v);
    }
    return 2048;
}

// byte-sliced image tables: image(S, letter) = OR over the three byte slices
struct ImageTables {
    std::size_t slices;
    std::vector<std::uint32_t> lut; // [letter][slice][byte]

    ImageTables(const Automaton& a) {
        const std::size_t n = a.num_states();
        const std::size_t k = a.num_letters();
        slices = (n + 7) / 8;
        lut.assign(k * slices * 256, 0);
        for (std::size_t letter = 0; letter < k; ++letter) {
            for (std::size_t slice = 0; slice < slices; ++slice) {
                for (std::size_t byte = 0; byte < 256; ++byte) {
                    std::uint32_t img = 0;
                    for (std::size_t bit = 0; bit < 8; ++bit) {
                        if (!(byte & (std::size_t{1} << bit)))
                            continue;
                        const std::size_t q = slice * 8 + bit;
                        if (q < n)
                            img |= std::uint32_t{1}
                                   << a.step(static_cast<State>(q), static_cast<Letter>(letter));
                    }
                    lut[(letter * slices + slice) * 256 + byte] = img;
                }
            }
        }
    }

    std::uint32_t image(std::uint32_t set, std::size_t letter) const {
        std::uint32_t img = 0;
        for (std::size_t slice = 0; slice < slices; ++slice)
            img |= lut[(letter * slices + slice) * 256 + ((set >> (8 * slice)) & 0xff)];
        return img;
    }
};

} // namespace

OracleResult exact_reset_threshold(const Automaton& a, const OracleOptions& options) {
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();
    if (n > kOracleMaxStates)
        throw BudgetError("oracle supports at most 24 states");
    if (n == 1)
        return {true, 0, {}};

    const std::size_t space = std::size_t{1} << n;
    // visited bits + parent mask + parent letter
    const std::size_t bytes = space / 8 + space * sizeof(std::uint32_t) + space;
    if (bytes > memory_budget_mb(options) * std::size_t{1024} * 1024)
        throw BudgetError("oracle would exceed the memory budget");

    const ImageTables tables(a);
    std::vector<std::uint64_t> visited(space / 64 + 1, 0);
    std::vector<std::uint32_t> parent(space, 0);
    std::vector<std::uint8_t> parent_letter(space, 0);

    const auto full = static_cast<std::uint32_t>(space - 1);
    auto visit = [&](std::uint32_t s) {
        visited[s >> 6] |= std::uint64_t{1} << (s & 63);
    };
    auto seen = [&](std::uint32_t s) {
        return (visited[s >> 6] >> (s & 63)) & 1;
    };

    std::vector<std::uint32_t> frontier{full};
    visit(full);
    std::size_t depth = 0;
    std::uint32_t found = 0;
    bool done = false;

    // below this width the fork/join overhead outweighs the expansion work
    constexpr std::size_t kParallelWidth = 4096;

    std::vector<std::uint32_t> images; // flat frontier-by-letter expansion
    while (!frontier.empty() && !done) {
        ++depth;
        images.assign(frontier.size() * k, 0);

        // expansion is data-parallel; the claim pass below stays serial and
        // ordered so both lanes produce the same BFS tree and witness
        const auto limit = static_cast<std::int64_t>(frontier.size());
        if (options.parallel && frontier.size() >= kParallelWidth) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (std::int64_t i = 0; i < limit; ++i)
                for (std::size_t l = 0; l < k; ++l)
                    images[static_cast<std::size_t>(i) * k + l] =
                        tables.image(frontier[static_cast<std::size_t>(i)], l);
        } else {
            for (std::int64_t i = 0; i < limit; ++i)
                for (std::size_t l = 0; l < k; ++l)
                    images[static_cast<std::size_t>(i) * k + l] =
                        tables.image(frontier[static_cast<std::size_t>(i)], l);
        }

        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i < frontier.size() && !done; ++i) {
            for (std::size_t l = 0; l < k; ++l) {
                const std::uint32_t t = images[i * k + l];
                if (seen(t))
                    continue;
                visit(t);
                parent[t] = frontier[i];
                parent_letter[t] = static_cast<std::uint8_t>(l);
                if (std::popcount(t) == 1) {
                    found = t;
                    done = true;
                    break;
                }
                next.push_back(t);
            }
        }
        frontier = std::move(next);
    }

    if (!done)
        return {false, 0, {}};

    OracleResult out;
    out.synchronizing = true;
    out.threshold = depth;
    std::uint32_t at = found;
    while (at != full) {
        out.witness.push_back(parent_letter[at]);
        at = parent[at];
    }
    std::reverse(out.witness.begin(), out.witness.end());
    if (out.witness.size() != depth)
        throw InternalError("oracle witness length disagrees with the BFS depth");
    return out;
}

PairThresholdResult exact_pair_threshold(const Automaton& a) {
    if (a.num_states() == 1)
        return {true, 0};
    const PairTable pt(a);
    return {pt.all_compressible(), pt.all_compressible() ? pt.max_dist() : 0};
}

namespace {

void check_word_budget(const Automaton& a, std::size_t d) {
    std::size_t total = 1;
    std::size_t level = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        level *= a.num_letters();
        total += level;
        if (total > 2'000'000)
            throw BudgetError("word enumeration budget exceeded");
    }
}

} // namespace

std::vector<RatVec> brute_span(const Automaton& a, const RatVec& alpha, std::size_t d) {
    if (alpha.size() != a.num_states())
        throw ValidationError("alpha has wrong length");
    check_word_budget(a, d);
    SpanBasis span(a.num_states());
    span.insert(alpha);
    std::vector<RatVec> level{alpha};
    for (std::size_t len = 1; len <= d; ++len) {
        std::vector<RatVec> next;
        next.reserve(level.size() * a.num_letters());
        for (const RatVec& v : level) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                RatVec u(v.size(), Rat(0));
                for (State q = 0; q < a.num_states(); ++q)
                    if (v[q] != 0)
                        u[a.step(q, c)] += v[q];
                span.insert(u);
                next.push_back(std::move(u));
            }
        }
        level = std::move(next);
    }
    return span.basis();
}

std::vector<RatVec> brute_span_general(const Automaton& a, std::size_t d) {
    check_word_budget(a, d);
    const std::size_t n = a.num_states();
    SpanBasis span(n * n);
    std::vector<State> id(n);
    for (State q = 0; q < n; ++q)
        id[q] = q;
    auto flatten = [n](const std::vector<State>& action) {
        RatVec v(n * n);
        for (std::size_t q = 0; q < n; ++q)
            v[q * n + action[q]] = 1;
        return v;
    };
    span.insert(flatten(id));
    std::vector<std::vector<State>> level{id};
    for (std::size_t len = 1; len <= d; ++len) {
        std::vector<std::vector<State>> next;
        next.reserve(level.size() * a.num_letters());
        for (const auto& action : level) {
            for (Letter c = 0; c < a.num_letters(); ++c) {
                std::vector<State> u(n);
                for (State q = 0; q < n; ++q)
                    u[q] = a.step(action[q], c);
                span.insert(flatten(u));
                next.push_back(std::move(u));
            }
        }
        level = std::move(next);
    }
    return span.basis();
}

} // namespace synkit
