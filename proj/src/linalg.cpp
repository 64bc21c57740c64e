#include "synkit/linalg.hpp"

#include <algorithm>
#include <set>

namespace synkit {

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& other) const {
    if (cols_ != other.rows_)
        throw ValidationError("matrix shape mismatch in product");
    RatMat out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t l = 0; l < cols_; ++l) {
            const Rat& x = at(i, l);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rat& y = other.at(l, j);
                if (y != 0)
                    out.at(i, j) += x * y;
            }
        }
    }
    return out;
}

RatMat RatMat::operator+(const RatMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("matrix shape mismatch in sum");
    RatMat out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = a_[i] + other.a_[i];
    return out;
}

RatMat RatMat::scaled(const Rat& c) const {
    RatMat out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = a_[i] * c;
    return out;
}

bool RatMat::is_row_stochastic() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat sum = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j) < 0)
                return false;
            sum += at(i, j);
        }
        if (sum != 1)
            return false;
    }
    return true;
}

RatVec mul_row(const RatVec& x, const RatMat& m) {
    if (x.size() != m.rows())
        throw ValidationError("vector/matrix shape mismatch");
    RatVec out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& y = m.at(i, j);
            if (y != 0)
                out[j] += x[i] * y;
        }
    }
    return out;
}

Rat dot(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size())
        throw ValidationError("vector length mismatch");
    Rat out = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && y[i] != 0)
            out += x[i] * y[i];
    return out;
}

RatVec characteristic_vec(const StateSet& s) {
    RatVec v(s.size());
    for (std::size_t q = s.find_first(); q != StateSet::npos; q = s.find_next(q))
        v[q] = 1;
    return v;
}

RatMat word_matrix(const Automaton& a, const Word& w) {
    a.validate_word(w);
    const auto action = a.word_action(w);
    RatMat m(a.num_states(), a.num_states());
    for (State q = 0; q < a.num_states(); ++q)
        m.at(q, action[q]) = 1;
    return m;
}

RatVec vec_after_word(const Automaton& a, const RatVec& v, const Word& w) {
    a.validate_word(w);
    if (v.size() != a.num_states())
        throw ValidationError("vector length mismatch");
    const auto action = a.word_action(w);
    RatVec out(v.size());
    for (State q = 0; q < a.num_states(); ++q)
        if (v[q] != 0)
            out[action[q]] += v[q];
    return out;
}

LetterDistribution LetterDistribution::uniform(std::size_t k) {
    LetterDistribution d;
    d.p.assign(k, Rat(1, static_cast<long>(k)));
    return d;
}

void LetterDistribution::validate(std::size_t k) const {
    if (p.size() != k)
        throw ValidationError("letter distribution has wrong arity");
    Rat sum = 0;
    for (const Rat& x : p) {
        if (x <= 0)
            throw ValidationError("letter probabilities must be positive");
        sum += x;
    }
    if (sum != 1)
        throw ValidationError("letter probabilities must sum to 1");
}

RatMat markov_matrix(const Automaton& a, const LetterDistribution& p) {
    p.validate(a.num_letters());
    RatMat m(a.num_states(), a.num_states());
    for (State q = 0; q < a.num_states(); ++q)
        for (Letter l = 0; l < a.num_letters(); ++l)
            m.at(q, a.step(q, l)) += p.p[l];
    return m;
}

// -- exact linear solving ---------------------------------------------------------

LinearSolution solve_exact(const std::vector<RatVec>& rows, const RatVec& rhs) {
    if (rows.size() != rhs.size())
        throw ValidationError("system shape mismatch");
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows[0].size() : 0;
    std::vector<RatVec> a = rows;
    RatVec b = rhs;
    for (const auto& r : a)
        if (r.size() != n)
            throw ValidationError("ragged system");

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a[sel][col] == 0)
            ++sel;
        if (sel == m)
            continue;
        std::swap(a[sel], a[row]);
        std::swap(b[sel], b[row]);
        const Rat inv = Rat(1) / a[row][col];
        for (std::size_t j = col; j < n; ++j)
            a[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0)
                continue;
            const Rat f = a[i][col];
            for (std::size_t j = col; j < n; ++j)
                a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }

    LinearSolution out;
    out.rank = pivot_col.size();
    out.free_vars = n - out.rank;
    out.consistent = true;
    for (std::size_t i = out.rank; i < m; ++i)
        if (b[i] != 0)
            out.consistent = false;
    out.x.assign(n, Rat(0));
    if (out.consistent)
        for (std::size_t i = 0; i < out.rank; ++i)
            out.x[pivot_col[i]] = b[i];
    return out;
}

Rat det_exact(const RatMat& m) {
    if (m.rows() != m.cols())
        throw ValidationError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<RatVec> a(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m.at(i, j);
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && a[sel][col] == 0)
            ++sel;
        if (sel == n)
            return Rat(0);
        if (sel != col) {
            std::swap(a[sel], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rat inv = Rat(1) / a[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0)
                continue;
            const Rat f = a[i][col] * inv;
            for (std::size_t j = col; j < n; ++j)
                a[i][j] -= f * a[col][j];
        }
    }
    return det;
}

StationaryResult stationary_distribution(const RatMat& m) {
    if (m.rows() != m.cols())
        throw ValidationError("stationary distribution needs a square matrix");
    if (!m.is_row_stochastic())
        throw ValidationError("matrix is not row stochastic");
    const std::size_t n = m.rows();

    // n stationarity equations (columns of M - I) plus the normalization row.
    std::vector<RatVec> rows;
    RatVec rhs;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec eq(n);
        for (std::size_t i = 0; i < n; ++i) {
            eq[i] = m.at(i, j);
            if (i == j)
                eq[i] -= 1;
        }
        rows.push_back(std::move(eq));
        rhs.push_back(0);
    }
    rows.emplace_back(n, Rat(1));
    rhs.push_back(1);

    const LinearSolution sol = solve_exact(rows, rhs);
    if (!sol.consistent)
        throw InternalError("stationary system inconsistent for a stochastic matrix");

    StationaryResult out;
    out.alpha = sol.x;
    out.unique = sol.free_vars == 0;

    Rat sum = 0;
    for (const Rat& x : out.alpha) {
        if (x < 0)
            throw InternalError("stationary solution has a negative entry");
        sum += x;
    }
    if (sum != 1 || mul_row(out.alpha, m) != out.alpha)
        throw InternalError("stationary solution failed verification");
    return out;
}

// -- spans --------------------------------------------------------------------------

RatVec SpanBasis::reduce(RatVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rat& c = v[pivots_[r]];
        if (c != 0) {
            const Rat f = c; // rows are normalized to a leading 1
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[r][j] != 0)
                    v[j] -= f * rows_[r][j];
        }
    }
    return v;
}

bool SpanBasis::contains(const RatVec& v) const {
    if (v.size() != dim_)
        throw ValidationError("vector dimension mismatch");
    const RatVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rat& x) { return x == 0; });
}

bool SpanBasis::insert(const RatVec& v) {
    if (v.size() != dim_)
        throw ValidationError("vector dimension mismatch");
    RatVec r = reduce(v);
    std::size_t lead = 0;
    while (lead < dim_ && r[lead] == 0)
        ++lead;
    if (lead == dim_)
        return false;
    const Rat inv = Rat(1) / r[lead];
    for (std::size_t j = lead; j < dim_; ++j)
        r[j] *= inv;
    // keep full reduction: clear the new pivot column from existing rows
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rat c = rows_[i][lead];
        if (c != 0)
            for (std::size_t j = 0; j < dim_; ++j)
                if (r[j] != 0)
                    rows_[i][j] -= c * r[j];
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
}

std::size_t span_rank(const std::vector<RatVec>& vs) {
    if (vs.empty())
        return 0;
    SpanBasis basis(vs[0].size());
    for (const auto& v : vs)
        basis.insert(v);
    return basis.rank();
}

bool in_span(const RatVec& v, const std::vector<RatVec>& vs) {
    SpanBasis basis(v.size());
    for (const auto& u : vs)
        basis.insert(u);
    return basis.contains(v);
}

// -- primitivity ----------------------------------------------------------------------

namespace {

using BitRow = boost::dynamic_bitset<std::uint64_t>;

std::vector<BitRow> bool_mul(const std::vector<BitRow>& x, const std::vector<BitRow>& y) {
    const std::size_t r = x.size();
    std::vector<BitRow> out(r, BitRow(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = x[i].find_first(); l != BitRow::npos; l = x[i].find_next(l))
            out[i] |= y[l];
    return out;
}

bool all_positive(const std::vector<BitRow>& x) {
    for (const BitRow& row : x)
        if (row.count() != row.size())
            return false;
    return true;
}

} // namespace

bool is_primitive_pattern(const std::vector<BitRow>& pattern) {
    const std::size_t r = pattern.size();
    if (r == 0)
        throw ValidationError("empty pattern");
    // exponent bound for a primitive r x r matrix
    const std::size_t e = (r - 1) * (r - 1) + 1;
    std::vector<BitRow> acc;
    std::vector<BitRow> base = pattern;
    std::size_t rem = e;
    while (rem) {
        if (rem & 1)
            acc = acc.empty() ? base : bool_mul(acc, base);
        rem >>= 1;
        if (rem)
            base = bool_mul(base, base);
    }
    return all_positive(acc);
}

bool is_primitive(const RatMat& m, const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) < 0)
                throw ValidationError("primitivity requires a non-negative matrix");
    const std::size_t r = idx.size();
    if (r == 0)
        throw ValidationError("empty index set");
    std::vector<BitRow> pattern(r, BitRow(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (m.at(idx[i], idx[j]) > 0)
                pattern[i].set(j);
    return is_primitive_pattern(pattern);
}

bool is_primitive(const RatMat& m) {
    if (m.rows() != m.cols())
        throw ValidationError("primitivity of a non-square matrix");
    std::vector<std::size_t> idx(m.rows());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    return is_primitive(m, idx);
}

// -- distinct subset sums ----------------------------------------------------------------

std::size_t ds_count(const RatVec& g) {
    for (const Rat& x : g)
        if (x < 0)
            throw ValidationError("ds_count requires a non-negative vector");
    std::vector<Rat> sums{Rat(0)}; // sorted, distinct
    std::vector<Rat> merged;
    for (const Rat& e : g) {
        if (e == 0)
            continue;
        merged.clear();
        merged.reserve(sums.size() * 2);
        std::size_t i = 0, j = 0;
        // merge sums with sums + e
        while (i < sums.size() || j < sums.size()) {
            Rat next;
            if (j == sums.size() || (i < sums.size() && sums[i] <= sums[j] + e))
                next = sums[i++];
            else
                next = sums[j++] + e;
            if (merged.empty() || merged.back() != next)
                merged.push_back(std::move(next));
        }
        sums.swap(merged);
        if (sums.size() > kDsCap + 1) {
            BigInt bound = (BigInt(1) << g.size()) - 1;
            throw DsCapError("distinct subset sums exceed the cap", bound);
        }
    }
    return sums.size() - 1;
}

} // namespace synkit
