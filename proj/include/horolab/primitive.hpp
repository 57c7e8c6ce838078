#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <vector>

#include "horolab/modring.hpp"

namespace horolab::prim {

using modring::IntMatrix;
using modring::ModMatrix;

// R (d x n over Z/qZ) is primitive when its rows generate (Z/qZ)^n,
// equivalently rank(R mod p) = n for every prime p | q.
bool is_primitive(const ModMatrix& r);

// #R_q = q^{dn} prod_{p|q} prod_{j=d+1-n}^{d} (1 - p^{-j}), exact
i64 primitive_count(int d, int n, i64 q);

// brute-force count under the candidate cap q^{dn}
i64 primitive_count_enumerated(int d, int n, i64 q, u64 cap = modring::kDefaultEnumCap);

// visit every primitive R in row-major lexicographic order
void for_each_primitive(int d, int n, i64 q, const std::function<void(const ModMatrix&)>& fn,
                        u64 cap = modring::kDefaultEnumCap);

// integer data realizing the solution set {x in Z^d : x R = b mod q}:
// rows of `kernel` span the homogeneous solutions (det = +q^n) and
// shift_rows * R + q * shift_compl = I_n, so b * shift_rows is a particular
// solution.  Throws NotPrimitive when the rows of R do not generate.
struct SolutionLattice {
    IntMatrix kernel;       // d x d, det = q^n
    IntMatrix kernel_compl; // d x n, kernel * R' + q * kernel_compl = 0
    IntMatrix shift_rows;   // n x d
    IntMatrix shift_compl;  // n x n
};
SolutionLattice solve_congruence_lattice(const ModMatrix& r);

// one representative per coset of the block congruence subgroup (top-right
// (d-n) x n block = 0 mod q) acting on SL_d(Z); for n = d the single identity
struct CosetRep {
    i64 id = 0;
    IntMatrix gamma;  // in SL_d(Z), det exactly 1
};

class ParamBijection {
  public:
    // enumerates the coset representatives; cap bounds the q^{dn} scan
    ParamBijection(int d, int n, i64 q, u64 cap = modring::kDefaultEnumCap);

    const std::vector<CosetRep>& reps() const { return reps_; }
    int d() const { return d_; }
    int n() const { return n_; }
    i64 q() const { return q_; }

    // (gamma, U) -> gamma^{-1} (0; U) mod q
    ModMatrix forward(const CosetRep& rep, const ModMatrix& u) const;
    // inverse direction; throws NotPrimitive on a non-primitive R
    std::pair<i64, ModMatrix> inverse(const ModMatrix& r) const;

  private:
    int d_, n_;
    i64 q_;
    std::vector<CosetRep> reps_;
    std::map<std::vector<i64>, i64> orbit_to_id_;
};

std::vector<CosetRep> coset_reps(int d, int n, i64 q, u64 cap = modring::kDefaultEnumCap);

// integer inverse of a unimodular matrix (det +-1), exact
IntMatrix unimodular_inverse(const IntMatrix& g);

// completion of a primitive R to an SL_{d+n}(Z) matrix eta such that
// eta * n_+(q^{-1}R) D(q) lands in the subgroup block shape
IntMatrix complete_to_sl(const ModMatrix& r);

// machine check of the block-matrix integrality identity behind the coset
// parametrization: all entries integral and det = 1, in exact arithmetic
bool check_mtx_relation(const CosetRep& rep, const ModMatrix& u);

struct HoroPoint {
    ModMatrix r;
    Eigen::MatrixXd point;    // (d+n) x (d+n), det 1
    Eigen::MatrixXd dq_block; // d x d block diag(I_{d-n}, q I_n) / q^{n/d}; empty when n = d
};
HoroPoint horosphere_point(const ModMatrix& r);

}  // namespace horolab::prim
