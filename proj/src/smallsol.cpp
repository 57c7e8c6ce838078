#include "horolab/smallsol.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/parallel.hpp"

namespace horolab::smallsol {

using modring::mod_pos;

double CongruenceInstance::scale() const { return std::pow(double(q()), double(n()) / double(d())); }

namespace {

// membership of an integer point w in the inflated region s * Omega; this
// exact predicate is shared by the direct count and the grid count
bool in_scaled_region(const IntVector& w, const gon::BoxRegion& omega, double s) {
    for (const auto& box : omega.boxes) {
        bool inside = true;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            if (double(w(i)) < s * box.lo(i) || double(w(i)) >= s * box.hi(i)) {
                inside = false;
                break;
            }
        if (inside) return true;
    }
    return false;
}

// integer bounding ranges of s * Omega
void scaled_ranges(const gon::BoxRegion& omega, double s, std::vector<i64>& lo, std::vector<i64>& hi) {
    const int d = omega.dim();
    lo.assign(std::size_t(d), 0);
    hi.assign(std::size_t(d), -1);
    bool first = true;
    for (const auto& box : omega.boxes) {
        for (int i = 0; i < d; ++i) {
            i64 l = i64(std::floor(s * box.lo(i))) - 1;
            i64 h = i64(std::ceil(s * box.hi(i))) + 1;
            if (first) {
                lo[std::size_t(i)] = l;
                hi[std::size_t(i)] = h;
            } else {
                lo[std::size_t(i)] = std::min(lo[std::size_t(i)], l);
                hi[std::size_t(i)] = std::max(hi[std::size_t(i)], h);
            }
        }
        first = false;
    }
}

}  // namespace

i64 count_solutions(const CongruenceInstance& inst, u64 cap) {
    const int d = inst.d(), n = inst.n();
    const i64 q = inst.q();
    const double s = inst.scale();
    inst.omega.check_disjoint();
    std::vector<i64> lo, hi;
    scaled_ranges(inst.omega, s, lo, hi);
    i128 total = 1;
    for (int i = 0; i < d; ++i) {
        total *= std::max<i64>(0, hi[std::size_t(i)] - lo[std::size_t(i)] + 1);
        if (total > i128(cap)) throw EnumerationTooLarge("window too large to enumerate");
    }
    i64 count = 0;
    IntVector x(d);
    std::function<void(int)> rec = [&](int level) {
        if (level == d) {
            if (!in_scaled_region(x, inst.omega, s)) return;
            for (int j = 0; j < n; ++j) {
                i128 acc = 0;
                for (int i = 0; i < d; ++i) acc += i128(x(i)) * inst.r.m(i, j);
                if (mod_pos(i64(acc % q) - inst.b(j), q) != 0) return;
            }
            ++count;
            return;
        }
        for (i64 v = lo[std::size_t(level)]; v <= hi[std::size_t(level)]; ++v) {
            x(level) = v;
            rec(level + 1);
        }
    };
    rec(0);
    return count;
}

GridData grid_construct(const ModMatrix& r, const IntVector& b) {
    const int d = int(r.rows()), n = int(r.cols());
    if (b.size() != n) throw PreconditionViolated("translate length mismatch");
    prim::SolutionLattice sol = prim::solve_congruence_lattice(r);  // throws NotPrimitive
    IntVector translate = IntVector::Zero(d);
    for (int j = 0; j < d; ++j) {
        i128 acc = 0;
        for (int i = 0; i < n; ++i) acc += i128(b(i)) * sol.shift_rows(i, j);
        translate(j) = checked_narrow(acc);
    }
    double scale = std::pow(double(r.q()), double(n) / double(d));
    Eigen::MatrixXd basis = sol.kernel.cast<double>() / scale;
    Eigen::VectorXd shift = translate.cast<double>() / scale;
    return GridData{sol.kernel, translate, scale, gon::Grid{gon::LatticeBasis(basis), shift}};
}

i64 grid_count(const GridData& grid, const gon::BoxRegion& omega) {
    omega.check_disjoint();
    const int d = int(grid.kernel.rows());
    std::vector<i64> lo, hi;
    scaled_ranges(omega, grid.scale, lo, hi);
    // coefficient ranges: z = (w - t) A^{-1} over the corners of the ranges
    Eigen::MatrixXd ainv = grid.kernel.cast<double>().inverse();
    Eigen::VectorXd t = grid.translate.cast<double>();
    std::vector<i64> zlo(std::size_t(d), 0), zhi(std::size_t(d), 0);
    bool first = true;
    for (int corner = 0; corner < (1 << d); ++corner) {
        Eigen::VectorXd w(d);
        for (int i = 0; i < d; ++i) w(i) = double(((corner >> i) & 1) ? hi[std::size_t(i)] : lo[std::size_t(i)]);
        Eigen::VectorXd z = ainv.transpose() * (w - t);  // row convention: w = z A + t
        for (int i = 0; i < d; ++i) {
            i64 zl = i64(std::floor(z(i))) - 1, zh = i64(std::ceil(z(i))) + 1;
            if (first) {
                zlo[std::size_t(i)] = zl;
                zhi[std::size_t(i)] = zh;
            } else {
                zlo[std::size_t(i)] = std::min(zlo[std::size_t(i)], zl);
                zhi[std::size_t(i)] = std::max(zhi[std::size_t(i)], zh);
            }
        }
        first = false;
    }
    i64 count = 0;
    IntVector z(d), w(d);
    std::function<void(int)> rec = [&](int level) {
        if (level == d) {
            for (int j = 0; j < d; ++j) {
                i128 acc = grid.translate(j);
                for (int i = 0; i < d; ++i) acc += i128(z(i)) * grid.kernel(i, j);
                w(j) = checked_narrow(acc);
            }
            if (in_scaled_region(w, omega, grid.scale)) ++count;
            return;
        }
        for (i64 v = zlo[std::size_t(level)]; v <= zhi[std::size_t(level)]; ++v) {
            z(level) = v;
            rec(level + 1);
        }
    };
    rec(0);
    return count;
}

namespace {

bool in_torus_window(const ModMatrix& r, const gon::BoxRegion& window) {
    if (window.boxes.empty()) return true;
    Eigen::VectorXd point(r.rows() * r.cols());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) point(k++) = double(r.m(i, j)) / double(r.q());
    return window.contains(point);
}

}  // namespace

Histogram hist_distribution(int d, int n, i64 q, const gon::BoxRegion& window_u, const gon::BoxRegion& omega,
                            const IntVector& b, int r_max, bool exhaustive, u64 samples, u64 seed, u64 cap) {
    Histogram hist;
    hist.counts.assign(std::size_t(r_max) + 1, 0);
    auto record = [&](const ModMatrix& r) {
        CongruenceInstance inst{r, b, omega};
        i64 c = count_solutions(inst, cap);
        if (c <= r_max) ++hist.counts[std::size_t(c)];
        else ++hist.overflow;
        ++hist.total;
    };
    if (exhaustive) {
        prim::for_each_primitive(d, n, q, [&](const ModMatrix& r) {
            if (in_torus_window(r, window_u)) record(r);
        }, cap);
        return hist;
    }
    Rng rng(seed, 0);
    for (u64 s = 0; s < samples; ++s) {
        bool accepted = false;
        for (int tries = 0; tries < 10000; ++tries) {
            IntMatrix m(d, n);
            for (int i = 0; i < d * n; ++i) m(i / n, i % n) = rng.next_in(0, q - 1);
            ModMatrix r(m, q);
            if (!prim::is_primitive(r) || !in_torus_window(r, window_u)) continue;
            record(r);
            accepted = true;
            break;
        }
        if (!accepted) throw PreconditionViolated("rejection sampling starved");
    }
    return hist;
}

LimitEstimate limit_constant_mc(const gon::BoxRegion& omega, i64 b, int r_max, u64 samples, u64 seed,
                                unsigned threads) {
    omega.check_disjoint();
    const u64 chunk_size = 1024;
    const u64 n_chunks = (samples + chunk_size - 1) / chunk_size;
    struct Acc {
        std::vector<i64> counts;
        i64 overflow = 0;
        u64 total = 0;
    };
    auto chunks = parallel_chunks<Acc>(std::size_t(n_chunks), threads, [&](std::size_t chunk) {
        Rng rng(seed, chunk);
        Acc acc;
        acc.counts.assign(std::size_t(r_max) + 1, 0);
        u64 lo = u64(chunk) * chunk_size, hi = std::min(samples, lo + chunk_size);
        for (u64 i = lo; i < hi; ++i) {
            gon::LatticeBasis lat = gon::haar_sample_sl2(rng);
            Eigen::VectorXd shift = Eigen::VectorXd::Zero(2);
            if (b != 0) {
                // uniform fiber coordinate pushed through the translate map
                double u0 = rng.next_double(), u1 = rng.next_double();
                double f0 = double(b) * u0 - std::floor(double(b) * u0);
                double f1 = double(b) * u1 - std::floor(double(b) * u1);
                shift = f0 * lat.g.row(0).transpose() + f1 * lat.g.row(1).transpose();
            }
            i64 c = gon::count_points_region(gon::Grid{lat, shift}, omega);
            if (c <= r_max) ++acc.counts[std::size_t(c)];
            else ++acc.overflow;
            ++acc.total;
        }
        return acc;
    });
    Acc total;
    total.counts.assign(std::size_t(r_max) + 1, 0);
    for (const auto& c : chunks) {
        for (std::size_t r = 0; r < total.counts.size(); ++r) total.counts[r] += c.counts[r];
        total.overflow += c.overflow;
        total.total += c.total;
    }
    LimitEstimate out;
    out.samples = total.total;
    out.prob.resize(total.counts.size());
    out.stderr_.resize(total.counts.size());
    for (std::size_t r = 0; r < total.counts.size(); ++r) {
        double p = double(total.counts[r]) / double(total.total);
        out.prob[r] = p;
        out.stderr_[r] = std::sqrt(p * (1 - p) / double(total.total));
    }
    out.overflow = double(total.overflow) / double(total.total);
    return out;
}

std::pair<double, double> joint_limit_mc(const std::vector<JointSpec>& specs, u64 samples, u64 seed,
                                         unsigned threads) {
    const u64 chunk_size = 1024;
    const u64 n_chunks = (samples + chunk_size - 1) / chunk_size;
    struct Acc {
        u64 hits = 0, total = 0;
    };
    auto chunks = parallel_chunks<Acc>(std::size_t(n_chunks), threads, [&](std::size_t chunk) {
        Rng rng(seed, chunk);
        Acc acc;
        u64 lo = u64(chunk) * chunk_size, hi = std::min(samples, lo + chunk_size);
        for (u64 i = lo; i < hi; ++i) {
            gon::LatticeBasis lat = gon::haar_sample_sl2(rng);
            double u0 = rng.next_double(), u1 = rng.next_double();
            bool all = true;
            for (const auto& spec : specs) {
                Eigen::VectorXd shift = Eigen::VectorXd::Zero(2);
                if (spec.b != 0) {
                    double f0 = double(spec.b) * u0 - std::floor(double(spec.b) * u0);
                    double f1 = double(spec.b) * u1 - std::floor(double(spec.b) * u1);
                    shift = f0 * lat.g.row(0).transpose() + f1 * lat.g.row(1).transpose();
                }
                if (gon::count_points_region(gon::Grid{lat, shift}, spec.omega) != spec.target_r) {
                    all = false;
                    break;
                }
            }
            acc.hits += all ? 1 : 0;
            ++acc.total;
        }
        return acc;
    });
    u64 hits = 0, total = 0;
    for (const auto& c : chunks) {
        hits += c.hits;
        total += c.total;
    }
    double p = double(hits) / double(total);
    return {p, std::sqrt(p * (1 - p) / double(total))};
}

double inverse_experiment(int n, i64 q, const gon::BoxRegion& window_u, const gon::BoxRegion& omega,
                          const IntVector& b, u64 cap) {
    if (b.size() != n) throw PreconditionViolated("translate length mismatch");
    i64 hits = 0, total = 0;
    modring::GlEnumerator en(n, q, cap);
    while (auto r = en.next()) {
        if (!in_torus_window(*r, window_u)) continue;
        ++total;
        ModMatrix rinv = modring::mat_inv_mod(*r);
        Eigen::VectorXd x(n);
        for (int j = 0; j < n; ++j) {
            i128 acc = 0;
            for (int i = 0; i < n; ++i) acc += i128(mod_pos(b(i), q)) * rinv.m(i, j);
            x(j) = double(mod_pos(i64(acc % q), q)) / double(q);
        }
        if (omega.contains(x)) ++hits;
    }
    if (total == 0) return 0;
    return double(hits) / double(total);
}

}  // namespace horolab::smallsol
