#include "horolab/geomnum.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/modring.hpp"
#include "horolab/parallel.hpp"

namespace horolab::gon {

LatticeBasis::LatticeBasis(const Eigen::MatrixXd& basis) : g(basis) {
    if (g.rows() != g.cols() || g.rows() < 1) throw PreconditionViolated("basis must be square");
    double det = std::abs(g.determinant());
    if (det < 1e-12) throw PreconditionViolated("basis rows are dependent");
    g /= std::pow(det, 1.0 / double(g.rows()));
    if (std::abs(std::abs(g.determinant()) - 1.0) > 1e-9) throw PreconditionViolated("normalization failed");
}

bool Box::contains(const Eigen::VectorXd& x) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        if (x(i) < lo(i) || x(i) >= hi(i)) return false;
    return true;
}

double Box::volume() const {
    double v = 1;
    for (Eigen::Index i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi(i) - lo(i));
    return v;
}

bool BoxRegion::contains(const Eigen::VectorXd& x) const {
    for (const auto& b : boxes)
        if (b.contains(x)) return true;
    return false;
}

double BoxRegion::volume() const {
    double v = 0;
    for (const auto& b : boxes) v += b.volume();
    return v;
}

void BoxRegion::check_disjoint() const {
    if (!flagged_disjoint) return;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            bool overlap = true;
            for (Eigen::Index k = 0; k < boxes[i].lo.size(); ++k)
                if (boxes[i].hi(k) <= boxes[j].lo(k) || boxes[j].hi(k) <= boxes[i].lo(k)) overlap = false;
            if (overlap) throw PreconditionViolated("boxes overlap");
        }
}

// ---------------------------------------------------------------------------
// reduction
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd lagrange_reduce(Eigen::MatrixXd g) {
    Eigen::RowVector2d b1 = g.row(0), b2 = g.row(1);
    if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
    for (int it = 0; it < 1000; ++it) {
        double mu = std::round(b2.dot(b1) / b1.squaredNorm());
        b2 -= mu * b1;
        if (b2.squaredNorm() >= b1.squaredNorm()) break;
        std::swap(b1, b2);
    }
    g.row(0) = b1;
    g.row(1) = b2;
    return g;
}

Eigen::MatrixXd lll_reduce(Eigen::MatrixXd g, double delta) {
    const int d = int(g.rows());
    Eigen::MatrixXd star, mu;
    auto gram_schmidt = [&]() {
        star = g;
        mu = Eigen::MatrixXd::Identity(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < i; ++j) {
                mu(i, j) = g.row(i).dot(star.row(j)) / star.row(j).squaredNorm();
                star.row(i) -= mu(i, j) * star.row(j);
            }
    };
    gram_schmidt();
    int k = 1, guard = 0;
    while (k < d && ++guard < 100000) {
        for (int j = k - 1; j >= 0; --j) {
            double r = std::round(mu(k, j));
            if (r != 0) {
                g.row(k) -= r * g.row(j);
                gram_schmidt();
            }
        }
        if (star.row(k).squaredNorm() >= (delta - mu(k, k - 1) * mu(k, k - 1)) * star.row(k - 1).squaredNorm()) {
            ++k;
        } else {
            g.row(k).swap(g.row(k - 1));
            gram_schmidt();
            k = std::max(k - 1, 1);
        }
    }
    return g;
}

}  // namespace

Eigen::MatrixXd reduce_basis(const Eigen::MatrixXd& g) {
    if (g.rows() == 1) return g;
    if (g.rows() == 2) return lagrange_reduce(g);
    return lll_reduce(g, 0.99);
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

namespace {

// depth-first sphere enumeration on a Gram-Schmidt decomposition of g
void enumerate_ball(const Eigen::MatrixXd& g, const Eigen::VectorXd& shift, double radius,
                    const std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&)>& fn) {
    const int d = int(g.rows());
    Eigen::MatrixXd star = g;
    Eigen::MatrixXd mu = Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) {
            mu(i, j) = g.row(i).dot(star.row(j)) / star.row(j).squaredNorm();
            star.row(i) -= mu(i, j) * star.row(j);
        }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    if (shift.size() == d && shift.squaredNorm() > 0) c = g.transpose().fullPivLu().solve(shift);
    const double r2 = radius * radius * (1 + 1e-12) + 1e-12;
    Eigen::VectorXd m = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd point = Eigen::VectorXd::Zero(d);
    std::function<void(int, double)> descend = [&](int level, double partial) {
        if (level < 0) {
            point = shift;
            for (int i = 0; i < d; ++i) point += m(i) * g.row(i).transpose();
            fn(m, point);
            return;
        }
        double center = c(level);
        for (int j = level + 1; j < d; ++j) center += mu(j, level) * (m(j) + c(j));
        double w2 = star.row(level).squaredNorm();
        double span = std::sqrt(std::max(0.0, (r2 - partial) / w2));
        i64 lo = i64(std::ceil(-center - span - 1e-9));
        i64 hi = i64(std::floor(-center + span + 1e-9));
        for (i64 v = lo; v <= hi; ++v) {
            m(level) = double(v);
            double coord = double(v) + center;
            double next = partial + coord * coord * w2;
            if (next <= r2) descend(level - 1, next);
        }
        m(level) = 0;
    };
    descend(d - 1, 0.0);
}

}  // namespace

void for_each_point_in_ball(const Eigen::MatrixXd& g, const Eigen::VectorXd& shift, double radius,
                            const std::function<void(const Eigen::VectorXd&)>& fn) {
    enumerate_ball(g, shift, radius, [&](const Eigen::VectorXd&, const Eigen::VectorXd& p) { fn(p); });
}

void for_each_point_in_supbox(const Eigen::MatrixXd& g, const Eigen::VectorXd& shift, double bound,
                              const std::function<void(const Eigen::VectorXd&)>& fn) {
    const int d = int(g.rows());
    double radius = bound * std::sqrt(double(d));
    enumerate_ball(g, shift, radius, [&](const Eigen::VectorXd&, const Eigen::VectorXd& p) {
        if (p.lpNorm<Eigen::Infinity>() <= bound * (1 + 1e-12)) fn(p);
    });
}

std::vector<double> successive_minima(const LatticeBasis& lattice) {
    const int d = lattice.dim();
    if (d > 6) throw DimensionTooLarge("successive minima supported up to dimension 6");
    Eigen::MatrixXd red = reduce_basis(lattice.g);
    double radius = 0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, red.row(i).norm());

    std::vector<std::pair<double, Eigen::VectorXd>> cand;  // (norm^2, coefficients)
    enumerate_ball(red, Eigen::VectorXd::Zero(d), radius, [&](const Eigen::VectorXd& m, const Eigen::VectorXd& p) {
        if (m.isZero()) return;
        cand.emplace_back(p.squaredNorm(), m);
    });
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    // shortest first, keep a maximal chain of exactly independent picks
    std::vector<double> minima;
    modring::IntMatrix picked = modring::IntMatrix::Zero(d, d);
    int rank = 0;
    for (const auto& [norm2, m] : cand) {
        for (int j = 0; j < d; ++j) picked(rank, j) = i64(std::llround(m(j)));
        if (modring::rank_exact(picked.topRows(rank + 1).eval()) == rank + 1) {
            minima.push_back(std::sqrt(norm2));
            ++rank;
            if (rank == d) break;
        }
    }
    if (rank != d) throw PreconditionViolated("internal: enumeration radius missed a minimum");
    return minima;
}

i64 count_points_ball(const LatticeBasis& lattice, double radius) {
    i64 count = 0;
    for_each_point_in_ball(lattice.g, Eigen::VectorXd::Zero(lattice.dim()), radius,
                           [&](const Eigen::VectorXd&) { ++count; });
    return count;
}

i64 count_points_region(const Grid& grid, const BoxRegion& region) {
    if (region.boxes.empty()) return 0;
    region.check_disjoint();
    double radius = 0;
    for (const auto& b : region.boxes)
        for (int corner = 0; corner < (1 << b.lo.size()); ++corner) {
            Eigen::VectorXd x(b.lo.size());
            for (Eigen::Index i = 0; i < b.lo.size(); ++i) x(i) = ((corner >> i) & 1) ? b.hi(i) : b.lo(i);
            radius = std::max(radius, (x - grid.shift).norm());
        }
    i64 count = 0;
    for_each_point_in_ball(grid.basis.g, grid.shift, radius * (1 + 1e-12) + 1e-9, [&](const Eigen::VectorXd& p) {
        if (region.contains(p)) ++count;
    });
    return count;
}

double minkowski_ratio(const LatticeBasis& lattice, double radius) {
    auto minima = successive_minima(lattice);
    double denom = 1;
    for (double l : minima) denom *= 1 + radius / l;
    return double(count_points_ball(lattice, radius)) / denom;
}

// ---------------------------------------------------------------------------
// majorant with certified truncation
// ---------------------------------------------------------------------------

PhiResult phi_eval(const LatticeBasis& lattice, int n, double a, double b, double kappa, double tol) {
    const int d = lattice.dim();
    if (kappa <= double(n) * d) throw PreconditionViolated("kappa must exceed n*d");
    if (a <= 0 || b <= 0) throw PreconditionViolated("a, b must be positive");
    auto minima = successive_minima(lattice);
    const double lambda1 = minima.front();

    // #{x : ||x g||_inf <= r} <= prod_i (1 + 2 sqrt(d) r / lambda_i) =: Q(r)
    auto q_bound = [&](double r) {
        double v = 1;
        for (double l : minima) v *= 1 + 2 * std::sqrt(double(d)) * r / l;
        return v;
    };
    auto tail_bound = [&](double r) {
        double total = 0;
        for (int m = 1; m <= 400; ++m) {
            double hi = r * std::pow(2.0, m), lo = r * std::pow(2.0, m - 1);
            double term = std::pow(q_bound(hi), n) / (b * std::pow(lo, kappa));
            total += term;
            if (term < total * 1e-16) break;
        }
        return total;
    };

    double cutoff = std::max({lambda1, std::pow(a / b, 1.0 / kappa), 1.0});
    while (tail_bound(cutoff) >= tol) {
        cutoff *= 2;
        // candidate work grows like Q(cutoff); kappa near n*d makes tight
        // tolerances genuinely unaffordable, so refuse rather than spin
        if (q_bound(cutoff) > 4e8) throw EnumerationTooLarge("certified tail needs an infeasible cutoff");
    }

    std::vector<double> values;  // row-vector sup norms up to the cutoff, zero included
    for_each_point_in_supbox(lattice.g, Eigen::VectorXd::Zero(d), cutoff,
                             [&](const Eigen::VectorXd& p) { values.push_back(p.lpNorm<Eigen::Infinity>()); });
    std::sort(values.begin(), values.end());

    // group n-tuples of rows by their maximal sup norm
    double total = 0;
    std::size_t idx = 0;
    double prev_cum = 0;
    while (idx < values.size()) {
        double level = values[idx];
        std::size_t j = idx;
        while (j < values.size() && values[j] <= level * (1 + 1e-12) + 1e-300) ++j;
        double cum = double(j);
        if (level > 0) total += (std::pow(cum, n) - std::pow(prev_cum, n)) / (a + b * std::pow(level, kappa));
        prev_cum = cum;
        idx = j;
    }

    PhiResult out;
    out.value = total;
    out.tail_bound = tail_bound(cutoff);
    out.cutoff = cutoff;
    double envelope;
    if (lambda1 >= std::pow(a / b, 1.0 / kappa)) {
        envelope = std::pow(lambda1, -kappa) / b;
    } else {
        envelope = 1.0 / a;
        for (double l : minima) envelope *= std::pow(1 + std::pow(a / b, 1.0 / kappa) / l, n);
    }
    out.pointwise_ratio = total / envelope;
    return out;
}

// ---------------------------------------------------------------------------
// Haar sampling and the mean-value check
// ---------------------------------------------------------------------------

std::complex<double> haar_sample_z(Rng& rng) {
    const double y0 = std::sqrt(3.0) / 2.0;
    for (;;) {
        double x = rng.next_double() - 0.5;
        double y = y0 / (1.0 - rng.next_double());
        if (x * x + y * y >= 1.0) return {x, y};
    }
}

LatticeBasis haar_sample_sl2(Rng& rng) {
    std::complex<double> z = haar_sample_z(rng);
    double x = z.real(), y = z.imag();
    Eigen::MatrixXd g(2, 2);
    double s = std::sqrt(y);
    g << 1.0 / s, 0.0, x / s, s;
    double theta = 2.0 * M_PI * rng.next_double();
    Eigen::MatrixXd rot(2, 2);
    rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return LatticeBasis(g * rot);
}

Density density_ball_indicator(double radius) {
    return {"ball", [radius](const Eigen::VectorXd& x) { return x.norm() <= radius ? 1.0 : 0.0; },
            M_PI * radius * radius, radius};
}

Density density_box_indicator(const BoxRegion& region) {
    region.check_disjoint();
    double cut = 0;
    for (const auto& b : region.boxes) cut = std::max({cut, b.lo.cwiseAbs().maxCoeff(), b.hi.cwiseAbs().maxCoeff()});
    return {"boxes", [region](const Eigen::VectorXd& x) { return region.contains(x) ? 1.0 : 0.0; }, region.volume(),
            cut};
}

Density density_supnorm_rational(double kappa, double cut) {
    // integral over the sup-norm disc of radius `cut`: int_0^cut 8 t / (1 + t^kappa) dt
    auto f = [kappa](double t) { return 8 * t / (1 + std::pow(t, kappa)); };
    double integral = 0;
    const int steps = 20000;
    double h = cut / steps;
    for (int i = 0; i < steps; ++i) {
        double t0 = i * h, t1 = t0 + h;
        integral += (f(t0) + 4 * f(0.5 * (t0 + t1)) + f(t1)) * h / 6;
    }
    return {"supnorm", [kappa, cut](const Eigen::VectorXd& x) {
                double t = x.lpNorm<Eigen::Infinity>();
                return t <= cut ? 1.0 / (1.0 + std::pow(t, kappa)) : 0.0;
            },
            integral, cut};
}

SiegelReport siegel_check_d2(const Density& rho, u64 samples, u64 seed, unsigned threads) {
    const u64 chunk_size = 1024;
    const u64 n_chunks = (samples + chunk_size - 1) / chunk_size;
    struct Acc {
        double mean = 0, m2 = 0;
        u64 count = 0;
    };
    auto chunks = parallel_chunks<Acc>(std::size_t(n_chunks), threads, [&](std::size_t chunk) {
        Rng rng(seed, chunk);
        Acc acc;
        u64 lo = u64(chunk) * chunk_size;
        u64 hi = std::min(samples, lo + chunk_size);
        for (u64 i = lo; i < hi; ++i) {
            LatticeBasis lat = haar_sample_sl2(rng);
            double sum = 0;
            for_each_point_in_supbox(lat.g, Eigen::VectorXd::Zero(2), rho.cut, [&](const Eigen::VectorXd& p) {
                if (p.squaredNorm() > 1e-18) sum += rho.rho(p);
            });
            acc.count += 1;
            double delta = sum - acc.mean;
            acc.mean += delta / double(acc.count);
            acc.m2 += delta * (sum - acc.mean);
        }
        return acc;
    });
    // sequential combination in chunk order: identical across thread counts
    Acc total;
    for (const auto& c : chunks) {
        if (c.count == 0) continue;
        double delta = c.mean - total.mean;
        u64 merged = total.count + c.count;
        total.m2 += c.m2 + delta * delta * double(total.count) * double(c.count) / double(merged);
        total.mean += delta * double(c.count) / double(merged);
        total.count = merged;
    }
    SiegelReport rep;
    rep.density = rho.name;
    rep.samples = total.count;
    rep.mean = total.mean;
    rep.target = rho.integral;
    rep.stderr_ = std::sqrt(total.m2 / double(total.count - 1) / double(total.count));
    rep.pass = std::abs(rep.mean - rep.target) <= 3.0 * rep.stderr_;
    return rep;
}

}  // namespace horolab::gon
