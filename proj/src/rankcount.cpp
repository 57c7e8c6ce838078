#include "horolab/rankcount.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/modring.hpp"
#include "horolab/parallel.hpp"

namespace horolab::rankcnt {

void RankCountQuery::validate() const {
    if (!(1 <= r && r < n && n < d)) throw PreconditionViolated("need 1 <= r < n < d");
    if (p < 3 || !modring::is_prime(p)) throw PreconditionViolated("p must be an odd prime");
    if (!(1 <= b && b <= (p - 1) / 2)) throw PreconditionViolated("need 1 <= b <= (p-1)/2");
}

namespace {

// mod-p row-echelon span tracker of capacity n rows of width d
struct Span {
    int d;
    i64 p;
    int rank = 0;
    std::vector<std::vector<i64>> rows;  // reduced, with leading pivots normalized to 1
    std::vector<int> pivot_col;

    explicit Span(int dim, i64 prime) : d(dim), p(prime) {}

    // returns true when the vector enlarges the span
    bool add(std::vector<i64> v) {
        for (int k = 0; k < rank; ++k) {
            i64 c = v[std::size_t(pivot_col[std::size_t(k)])];
            if (c == 0) continue;
            for (int j = 0; j < d; ++j) v[std::size_t(j)] = modring::mod_pos(v[std::size_t(j)] - c * rows[std::size_t(k)][std::size_t(j)], p);
        }
        int piv = -1;
        for (int j = 0; j < d; ++j)
            if (v[std::size_t(j)] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) return false;
        i64 inv = modring::inv_mod(v[std::size_t(piv)], p);
        for (int j = 0; j < d; ++j) v[std::size_t(j)] = i64((i128(v[std::size_t(j)]) * inv) % p);
        rows.push_back(std::move(v));
        pivot_col.push_back(piv);
        ++rank;
        return true;
    }
};

u64 column_candidates(int d, i64 b) {
    u64 out = 1;
    for (int i = 0; i < d; ++i) out *= u64(2 * b + 1);
    return out;
}

void decode_column(u64 code, int d, i64 b, std::vector<i64>& col) {
    for (int i = d - 1; i >= 0; --i) {
        col[std::size_t(i)] = i64(code % u64(2 * b + 1)) - b;
        code /= u64(2 * b + 1);
    }
}

// count completions given the span after some prefix of columns (recursive)
i64 count_from(const RankCountQuery& query, const Span& span, int cols_done) {
    const int remaining = query.n - cols_done;
    if (span.rank > query.r) return 0;
    if (span.rank + remaining < query.r) return 0;
    if (remaining == 0) return span.rank == query.r ? 1 : 0;
    const u64 per_col = column_candidates(query.d, query.b);
    i64 total = 0;
    std::vector<i64> col(std::size_t(query.d));
    for (u64 code = 0; code < per_col; ++code) {
        decode_column(code, query.d, query.b, col);
        std::vector<i64> red(std::size_t(query.d));
        for (int i = 0; i < query.d; ++i) red[std::size_t(i)] = modring::mod_pos(col[std::size_t(i)], query.p);
        Span next = span;
        next.add(red);
        total = checked_add(total, count_from(query, next, cols_done + 1));
    }
    return total;
}

}  // namespace

i64 count_rank(const RankCountQuery& query, unsigned threads, u64 cap) {
    query.validate();
    i128 total_cand = 1;
    for (int i = 0; i < query.d * query.n; ++i) {
        total_cand *= (2 * query.b + 1);
        if (total_cand > i128(cap)) throw EnumerationTooLarge("(2b+1)^{dn} exceeds the cap");
    }
    const u64 per_col = column_candidates(query.d, query.b);
    // parallel over the first column
    auto parts = parallel_chunks<i64>(std::size_t(per_col), threads, [&](std::size_t code) {
        std::vector<i64> col(std::size_t(query.d));
        decode_column(u64(code), query.d, query.b, col);
        Span span(query.d, query.p);
        std::vector<i64> red(std::size_t(query.d));
        for (int i = 0; i < query.d; ++i) red[std::size_t(i)] = modring::mod_pos(col[std::size_t(i)], query.p);
        span.add(red);
        return count_from(query, span, 1);
    });
    i64 total = 0;
    for (i64 part : parts) total = checked_add(total, part);
    return total;
}

i64 count_rank_naive(const RankCountQuery& query, u64 cap) {
    query.validate();
    i128 total_cand = 1;
    for (int i = 0; i < query.d * query.n; ++i) {
        total_cand *= (2 * query.b + 1);
        if (total_cand > i128(cap)) throw EnumerationTooLarge("naive oracle cap exceeded");
    }
    i64 count = 0;
    modring::IntMatrix x(query.d, query.n);
    const i64 w = 2 * query.b + 1;
    for (u64 code = 0; code < u64(total_cand); ++code) {
        u64 c = code;
        for (int i = query.d * query.n - 1; i >= 0; --i) {
            x(i / query.n, i % query.n) = i64(c % u64(w)) - query.b;
            c /= u64(w);
        }
        if (modring::rank_mod_p(x, query.p) == query.r) ++count;
    }
    return count;
}

double envelope(const RankCountQuery& query) {
    double first = std::pow(double(query.b), query.d * query.r);
    double second = std::pow(double(query.b), query.d * query.n) *
                    std::pow(double(query.p), -double(query.d - query.r) * double(query.n - query.r));
    return std::max(first, second);
}

LowerBoundReport check_lower_bounds(const RankCountQuery& query, unsigned threads) {
    LowerBoundReport rep;
    rep.query = query;
    rep.count = count_rank(query, threads);
    // N >= b^{dr}
    rep.simple_ok = i128(rep.count) >= checked_pow128(query.b, query.d * query.r);
    // N > b^{dr} ((b/2)^d p^{r-d})^{n-r}: multiply through by 2^{d(n-r)} p^{(d-r)(n-r)}
    i128 lhs = checked_mul128(i128(rep.count), checked_mul128(checked_pow128(2, query.d * (query.n - query.r)),
                                                              checked_pow128(query.p, (query.d - query.r) * (query.n - query.r))));
    i128 rhs = checked_pow128(query.b, query.d * query.n);
    rep.halfbox_ok = lhs > rhs;
    rep.ratio = double(rep.count) / envelope(query);
    return rep;
}

i64 count_invertible(int r, i64 p, i64 b) {
    i128 total = 1;
    for (int i = 0; i < r * r; ++i) total *= (2 * b + 1);
    if (total > i128(10'000'000)) throw EnumerationTooLarge("invertible-count cap exceeded");
    i64 count = 0;
    modring::IntMatrix y(r, r);
    const i64 w = 2 * b + 1;
    for (u64 code = 0; code < u64(total); ++code) {
        u64 c = code;
        for (int i = r * r - 1; i >= 0; --i) {
            y(i / r, i % r) = i64(c % u64(w)) - b;
            c /= u64(w);
        }
        if (modring::rank_mod_p(y, p) == r) ++count;
    }
    return count;
}

std::vector<RatioRow> ratio_scan(int d, int n, int r, const std::vector<i64>& primes, unsigned threads) {
    std::vector<RatioRow> rows;
    for (i64 p : primes) {
        for (i64 b = 1; b <= (p - 1) / 2; ++b) {
            RankCountQuery query{d, n, r, p, b};
            LowerBoundReport rep = check_lower_bounds(query, threads);
            rows.push_back({p, b, rep.count, envelope(query), rep.ratio, rep.simple_ok && rep.halfbox_ok});
        }
    }
    return rows;
}

}  // namespace horolab::rankcnt
