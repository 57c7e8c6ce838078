#pragma once

#include <string>
#include <vector>

#include "horolab/checked.hpp"
#include "horolab/errors.hpp"

namespace horolab::rankcnt {

// count of integer d x n matrices with entries in [-b, b] whose reduction
// mod p has the prescribed rank r, with 1 <= r < n < d and 1 <= b <= (p-1)/2
struct RankCountQuery {
    int d = 3, n = 2, r = 1;
    i64 p = 3;
    i64 b = 1;

    void validate() const;
};

// column-by-column enumeration carrying the mod-p column span; branches whose
// achievable rank cannot end at r are pruned
i64 count_rank(const RankCountQuery& query, unsigned threads = 1, u64 cap = 1'000'000'000ull);
// unpruned double-loop oracle
i64 count_rank_naive(const RankCountQuery& query, u64 cap = 1'000'000ull);

// max(b^{dr}, b^{dn} p^{-(d-r)(n-r)})
double envelope(const RankCountQuery& query);

struct LowerBoundReport {
    RankCountQuery query;
    i64 count = 0;
    bool simple_ok = false;   // N >= b^{dr}
    bool halfbox_ok = false;  // N > b^{dr} ((b/2)^d p^{r-d})^{n-r}, exact arithmetic
    double ratio = 0;         // N / envelope
};
LowerBoundReport check_lower_bounds(const RankCountQuery& query, unsigned threads = 1);

// #{Y in M_r(Z) : ||Y||_inf <= b, det(Y) nonzero mod p}; always exceeds b^{r^2}
i64 count_invertible(int r, i64 p, i64 b);

struct RatioRow {
    i64 p, b;
    i64 count;
    double envelope_value;
    double ratio;
    bool lower_ok;
};
std::vector<RatioRow> ratio_scan(int d, int n, int r, const std::vector<i64>& primes, unsigned threads = 1);

}  // namespace horolab::rankcnt
