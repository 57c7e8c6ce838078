#pragma once

#include <map>
#include <string>
#include <vector>

#include "horolab/expsum.hpp"
#include "horolab/modring.hpp"
#include "horolab/rng.hpp"

namespace horolab::kloos {

using modring::GlTable;
using modring::IntMatrix;
using modring::ModMatrix;

// K_n(A, B; q) = sum over X in GL_n(Z/qZ) of e_q(tr(AX + B X^{-1})),
// accumulated as an exact residue histogram.
ExpSum brute(const ModMatrix& a, const ModMatrix& b, u64 cap = modring::kDefaultEnumCap, unsigned threads = 1);
ExpSum brute_over(const GlTable& gl, const ModMatrix& a, const ModMatrix& b);

// multiplicative splitting over the prime-power factors of q; exact histogram
// via root-of-unity convolution
ExpSum crt(const ModMatrix& a, const ModMatrix& b, u64 cap = modring::kDefaultEnumCap);

// divisor reduction: for l | q/rad(q) and l | B, the sum vanishes unless
// l | A, and otherwise collapses to l^{n^2} K_n(A/l, B/l; q/l)
ExpSum reduce(const ModMatrix& a, const ModMatrix& b, i64 l, u64 cap = modring::kDefaultEnumCap);

// stationary-phase evaluation for modulus p^beta, beta >= 2, A,B nonzero mod p;
// exact, cost #GL_n(Z/p^floor(beta/2)) instead of #GL_n(Z/p^beta).
// lift_style picks the representative lift (0: least nonnegative, 1: shifted);
// the total is representative-independent.
ExpSum primepower(const ModMatrix& a, const ModMatrix& b, i64 p, int beta, int lift_style = 0);

// closed form for K_n(0, A; p^m) in terms of rank(A / p^{m-1} mod p)
i64 ramanujan_eval(const ModMatrix& a, i64 p, int m);

// K_n(0, A; q) for arbitrary q, assembled multiplicatively from the closed form
i64 kn0a_exact(const ModMatrix& a);

// matrix Gauss sum G_p(C, D) = sum over Z in M_n(F_p) of e_p(tr(C Z^2 + D Z))
ExpSum gauss_brute(const ModMatrix& c, const ModMatrix& d, u64 cap = modring::kDefaultEnumCap);

// #{Y in GL_n(Z/qZ) : A Y = Y^{-1} B mod q}
i64 count_c(const ModMatrix& a, const ModMatrix& b, u64 cap = modring::kDefaultEnumCap);

// F_p-dimension of {Z : CZ + ZC = 0}, or of {Z : Z + CZ + ZC = 0} (affine)
int dim_anticommutant(const ModMatrix& c, bool affine = false);

// ---------------------------------------------------------------------------
// machine-checked inequality suite
// ---------------------------------------------------------------------------

struct BoundReport {
    std::string bound;
    std::map<std::string, double> params;
    double measured = 0;      // max magnitude over the scan point
    double bound_value = 0;   // bound with its stated constant
    double ratio = 0;         // measured / (bound with constant 1)
    bool pass = true;
};

struct BoundScan {
    std::string bound;        // etres1 | etres2 | cpab | dc | vardc | nlifts | gauss | kgenq | kmain | kn0a
    int n = 1;
    std::vector<i64> moduli;  // primes or prime powers or general q, per family
    bool exhaustive = true;
    int samples = 0;
    u64 seed = 1;
    double eps = 0.1;
};

std::vector<BoundReport> verify_kloos_bounds(const std::vector<BoundScan>& scans);

// the scan set exercised by the acceptance suite
std::vector<BoundScan> acceptance_bound_scans();

}  // namespace horolab::kloos
