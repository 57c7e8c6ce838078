#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "horolab/kloosterman.hpp"
#include "horolab/primitive.hpp"

namespace horolab::horo {

using modring::IntMatrix;
using modring::ModMatrix;
using Complex = std::complex<double>;

// band-limited test function on the double torus:
// f(T1, T2) = sum of coeff * e^{2 pi i (tr(tN T1) + tr(tM T2))}
struct TrigTerm {
    IntMatrix freq_n;  // d x n
    IntMatrix freq_m;  // n x d
    Complex coeff;
};
struct TrigPoly {
    std::vector<TrigTerm> terms;
};
// throws on duplicate frequencies
void validate(const TrigPoly& f);

// normalized Weyl sum over the primitive set: (1/#R_q) sum_R e_q(tr(tN R))
Complex weyl_sum(int d, int n, i64 q, const IntMatrix& freq_n, u64 cap = modring::kDefaultEnumCap);
// divisor-sum evaluation for n = 1 (exact, no enumeration)
Complex weyl_sum_formula_n1(int d, i64 q, const IntMatrix& freq_n);

// the two faces of the sample average for n = d: direct evaluation over
// GL_n(Z/qZ) versus the Fourier-Kloosterman expansion; they must agree
Complex aq_direct(const TrigPoly& f, int n, i64 q, u64 cap = modring::kDefaultEnumCap);
Complex aq_expand(const TrigPoly& f, int n, i64 q, u64 cap = modring::kDefaultEnumCap);

// joint character sum for n < d via the coset decomposition, plus an
// independent direct-enumeration path used as its oracle
Complex weyl_joint(const prim::ParamBijection& pb, const IntMatrix& freq_n, const IntMatrix& freq_m,
                   u64 cap = modring::kDefaultEnumCap);
Complex weyl_joint_direct(const prim::ParamBijection& pb, const IntMatrix& freq_n, const IntMatrix& freq_m);

// ---------------------------------------------------------------------------
// Hecke points on the modular surface (d = 2)
// ---------------------------------------------------------------------------

// flip/translate reduction into {|x| <= 1/2, |z| >= 1}
Complex reduce_fundamental(Complex z, int max_iter = 10000, double tol = 1e-12);

struct HeckeOrbit {
    i64 m;
    Complex base;
    std::vector<Complex> points;  // sigma_1(m) points, reduced
};
HeckeOrbit hecke_points(i64 m, Complex z);

// test functions on the modular surface, in (x, y) coordinates
struct SurfaceFn {
    std::function<double(double, double)> f;
    double tail_limit = 0;  // exact value of f for y >= tail_from
    double tail_from = 1e308;
};
SurfaceFn indicator_y_gt(double c);
SurfaceFn smooth_bump(double x0, double y0, double radius);
SurfaceFn y_power_truncated(double s, double ymax);

double hecke_average(const SurfaceFn& phi, i64 m, Complex z);
// composite operator assembled from the T_m via the square-divisor identity
double hecke_dq_average(const SurfaceFn& phi, i64 q, Complex z);

// mean against the hyperbolic area measure (3/pi) y^{-2} dx dy, adaptive
// Gauss-Legendre with an analytic tail above phi.tail_from
double mu0_mean(const SurfaceFn& phi, double tol = 1e-8);

// ---------------------------------------------------------------------------
// decay scans
// ---------------------------------------------------------------------------

struct DecayPoint {
    double x;      // q or m
    double value;  // measured magnitude
};

struct DecayTarget {
    double vartheta = 0;        // predicted exponent
    double vartheta_alt = 0;    // secondary exponent (documentation)
    double kappa = 0;           // Sobolev orders, documentation-only
    double kappa_alt = 0;
    double theta_doc = 7.0 / 64.0;
    double eps = 0.1;
    double slack = 0.15;
    double slope = 0;
    double fitted_constant = 0; // exp(intercept)
    double residual = 0;
    bool pass = false;
};

// least-squares fit of log(value) against log(x); zero values are skipped
DecayTarget fit_decay(const std::vector<DecayPoint>& pts, double predicted_exponent, double eps = 0.1,
                      double slack = 0.15);

// per-modulus maximum of |weyl_sum| over nonzero modes with entries bounded
// by mode_bound, against the divisor-function envelope (asserted for n = 1)
struct WeylScanRow {
    i64 q = 0;
    double max_abs = 0;
    double envelope = 0;
    bool envelope_ok = true;
};
std::vector<WeylScanRow> weyl_decay_scan(int d, int n, const std::vector<i64>& qs, i64 mode_bound,
                                         u64 cap = modring::kDefaultEnumCap);

}  // namespace horolab::horo
