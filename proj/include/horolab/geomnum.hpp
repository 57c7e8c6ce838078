#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "horolab/checked.hpp"
#include "horolab/errors.hpp"
#include "horolab/rng.hpp"

namespace horolab::gon {

// row basis of a covolume-one lattice Z^d g; rescaled to |det| = 1 at
// construction, rejecting singular input
struct LatticeBasis {
    Eigen::MatrixXd g;

    explicit LatticeBasis(const Eigen::MatrixXd& basis);
    int dim() const { return int(g.rows()); }
};

struct Grid {
    LatticeBasis basis;
    Eigen::VectorXd shift;
};

// finite union of half-open boxes prod [lo_i, hi_i)
struct Box {
    Eigen::VectorXd lo, hi;
    bool contains(const Eigen::VectorXd& x) const;
    double volume() const;
};
struct BoxRegion {
    std::vector<Box> boxes;
    bool flagged_disjoint = true;

    int dim() const { return boxes.empty() ? 0 : int(boxes.front().lo.size()); }
    bool contains(const Eigen::VectorXd& x) const;
    double volume() const;
    void check_disjoint() const;  // throws PreconditionViolated on overlap
};

// Lagrange reduction (d = 2) or LLL with delta = 0.99 (3 <= d <= 6)
Eigen::MatrixXd reduce_basis(const Eigen::MatrixXd& g);

// exact Euclidean successive minima via reduction + exhaustive enumeration
std::vector<double> successive_minima(const LatticeBasis& lattice);

// every integer coefficient vector m with || m g + t ||_2 <= radius
void for_each_point_in_ball(const Eigen::MatrixXd& g, const Eigen::VectorXd& shift, double radius,
                            const std::function<void(const Eigen::VectorXd&)>& fn);
// every lattice/grid point with sup norm at most bound
void for_each_point_in_supbox(const Eigen::MatrixXd& g, const Eigen::VectorXd& shift, double bound,
                              const std::function<void(const Eigen::VectorXd&)>& fn);

i64 count_points_ball(const LatticeBasis& lattice, double radius);
i64 count_points_region(const Grid& grid, const BoxRegion& region);
inline i64 count_points_region(const LatticeBasis& lattice, const BoxRegion& region) {
    return count_points_region(Grid{lattice, Eigen::VectorXd::Zero(lattice.dim())}, region);
}

// point count divided by prod_i (1 + radius / lambda_i)
double minkowski_ratio(const LatticeBasis& lattice, double radius);

// sum over nonzero integer n x d matrices X of 1 / (a + b ||X g||_inf^kappa),
// truncated with a certified dyadic tail bound below `tol`
struct PhiResult {
    double value = 0;
    double tail_bound = 0;
    double cutoff = 0;         // sup-norm truncation radius
    double pointwise_ratio = 0;  // value relative to the lambda_1 envelope
};
PhiResult phi_eval(const LatticeBasis& lattice, int n, double a, double b, double kappa, double tol = 1e-9);

// fundamental-domain coordinate with density (3/pi) y^{-2}, by rejection
std::complex<double> haar_sample_z(Rng& rng);
// Haar-random covolume-one lattice in the plane (coordinate sample + rotation)
LatticeBasis haar_sample_sl2(Rng& rng);

// densities for the mean-value check; rho vanishes outside sup norm <= cut
struct Density {
    std::string name;
    std::function<double(const Eigen::VectorXd&)> rho;
    double integral = 0;  // integral of rho over the plane (within the cut)
    double cut = 0;
};
Density density_ball_indicator(double radius);
Density density_box_indicator(const BoxRegion& region);
Density density_supnorm_rational(double kappa, double cut);

struct SiegelReport {
    std::string density;
    u64 samples = 0;
    double mean = 0;
    double target = 0;
    double stderr_ = 0;
    bool pass = false;
};
SiegelReport siegel_check_d2(const Density& rho, u64 samples, u64 seed, unsigned threads = 1);

}  // namespace horolab::gon
