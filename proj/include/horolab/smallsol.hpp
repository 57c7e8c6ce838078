#pragma once

#include "horolab/geomnum.hpp"
#include "horolab/primitive.hpp"

namespace horolab::smallsol {

using modring::IntMatrix;
using modring::IntVector;
using modring::ModMatrix;

// data for counting the solutions x in Z^d of x R = b mod q that land in the
// inflated window q^{n/d} Omega
struct CongruenceInstance {
    ModMatrix r;            // d x n, primitive
    IntVector b;            // length n
    gon::BoxRegion omega;   // subset of R^d
    int d() const { return int(r.rows()); }
    int n() const { return int(r.cols()); }
    i64 q() const { return r.q(); }
    double scale() const;  // q^{n/d}
};

// exact count by direct congruence testing over Z^d intersected with the window
i64 count_solutions(const CongruenceInstance& inst, u64 cap = modring::kDefaultEnumCap);

// the solution set as a grid: (Z^d A + b C) / q^{n/d}, with Z^d A the
// homogeneous solutions (det A = q^n) and C R + q D = I_n
struct GridData {
    IntMatrix kernel;      // A
    IntVector translate;   // b C
    double scale;          // q^{n/d}
    gon::Grid grid;        // scaled real form, covolume one
};
GridData grid_construct(const ModMatrix& r, const IntVector& b);

// count of grid points inside Omega, via the same membership predicate as
// count_solutions; the two agree exactly for every box region
i64 grid_count(const GridData& grid, const gon::BoxRegion& omega);

// empirical distribution of the solution count over R in R_q with q^{-1}R in U
struct Histogram {
    std::vector<i64> counts;  // index r = 0..r_max
    i64 overflow = 0;
    i64 total = 0;
    double prob(std::size_t r) const { return total == 0 ? 0 : double(counts[r]) / double(total); }
};
Histogram hist_distribution(int d, int n, i64 q, const gon::BoxRegion& window_u, const gon::BoxRegion& omega,
                            const IntVector& b, int r_max, bool exhaustive, u64 samples = 0, u64 seed = 1,
                            u64 cap = modring::kDefaultEnumCap);

// Monte-Carlo limit probabilities at d = 2, n = 1: the invariant measure on
// lattices for b = 0, on grids (lattice plus uniform fiber translate) otherwise
struct LimitEstimate {
    std::vector<double> prob;    // index r
    std::vector<double> stderr_;
    double overflow = 0;
    u64 samples = 0;
};
LimitEstimate limit_constant_mc(const gon::BoxRegion& omega, i64 b, int r_max, u64 samples, u64 seed,
                                unsigned threads = 1);

// joint variant: one sampled grid pair evaluated against several windows
struct JointSpec {
    gon::BoxRegion omega;
    i64 b = 0;
    i64 target_r = 0;
};
std::pair<double, double> joint_limit_mc(const std::vector<JointSpec>& specs, u64 samples, u64 seed,
                                         unsigned threads = 1);

// n = d: fraction of R in GL_n(Z/qZ) with q^{-1}R in U whose unique solution
// b R^{-1} lands in q Omega (both regions live on tori)
double inverse_experiment(int n, i64 q, const gon::BoxRegion& window_u, const gon::BoxRegion& omega,
                          const IntVector& b, u64 cap = modring::kDefaultEnumCap);

}  // namespace horolab::smallsol
