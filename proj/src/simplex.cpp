#include "synkit/simplex.hpp"

#include <limits>

namespace synkit {

namespace {

// Dense tableau with basis bookkeeping; rows 0..m-1 are constraints, the last
// row is the (negated) objective.
struct Tableau {
    std::size_t m, n; // constraints, variables (incl. artificials)
    std::vector<RatVec> rows;
    RatVec rhs;
    RatVec obj;      // reduced costs
    Rat obj_value;   // negative of current objective
    std::vector<std::size_t> basis;

    void pivot(std::size_t row, std::size_t col) {
        const Rat inv = Rat(1) / rows[row][col];
        for (std::size_t j = 0; j < n; ++j)
            rows[row][j] *= inv;
        rhs[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || rows[i][col] == 0)
                continue;
            const Rat f = rows[i][col];
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] -= f * rows[row][j];
            rhs[i] -= f * rhs[row];
        }
        if (obj[col] != 0) {
            const Rat f = obj[col];
            for (std::size_t j = 0; j < n; ++j)
                obj[j] -= f * rows[row][j];
            obj_value -= f * rhs[row];
        }
        basis[row] = col;
    }

    // Bland's rule: entering = smallest index with negative reduced cost;
    // leaving = ratio test, ties by smallest basis variable.
    LpStatus run() {
        while (true) {
            std::size_t enter = n;
            for (std::size_t j = 0; j < n; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == n)
                return LpStatus::Optimal;
            std::size_t leave = m;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (rows[i][enter] <= 0)
                    continue;
                const Rat ratio = rhs[i] / rows[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m)
                return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult solve_lp_max(const RatMat& a, const RatVec& b, const RatVec& c) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n)
        throw ValidationError("LP shape mismatch");

    // Phase I with artificial variables; flip rows so the rhs is non-negative.
    Tableau t;
    t.m = m;
    t.n = n + m;
    t.rows.assign(m, RatVec(t.n));
    t.rhs.assign(m, Rat(0));
    t.basis.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            t.rows[i][j] = flip ? -a.at(i, j) : a.at(i, j);
        t.rhs[i] = flip ? -b[i] : b[i];
        t.rows[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    // minimize the artificial sum
    t.obj.assign(t.n, Rat(0));
    t.obj_value = 0;
    for (std::size_t j = n; j < t.n; ++j)
        t.obj[j] = 1;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < t.n; ++j)
            t.obj[j] -= t.rows[i][j];
        t.obj_value -= t.rhs[i];
    }
    if (t.run() == LpStatus::Unbounded)
        throw InternalError("phase-one problem cannot be unbounded");
    if (t.obj_value != 0)
        return {LpStatus::Infeasible, Rat(0), {}};

    // drive leftover artificials out of the basis, then drop them
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n)
            continue;
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col < n)
            t.pivot(i, col);
        // a fully zero row is a redundant constraint; its artificial stays
        // basic at value zero and never re-enters because we drop the columns
    }
    t.n = n;
    for (auto& row : t.rows)
        row.resize(n);

    // Phase II: maximize c.x == minimize -c.x
    t.obj.assign(n, Rat(0));
    t.obj_value = 0;
    for (std::size_t j = 0; j < n; ++j)
        t.obj[j] = -c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] >= n)
            continue;
        const Rat f = t.obj[t.basis[i]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            t.obj[j] -= f * t.rows[i][j];
        t.obj_value -= f * t.rhs[i];
    }
    const LpStatus status = t.run();
    if (status == LpStatus::Unbounded)
        return {LpStatus::Unbounded, Rat(0), {}};

    // obj_value tracks the negative of the minimized objective, i.e. c.x
    LpResult out{LpStatus::Optimal, t.obj_value, RatVec(n, Rat(0))};
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n)
            out.x[t.basis[i]] = t.rhs[i];
    return out;
}

} // namespace synkit
