// End-to-end acceptance suite: one pass/fail line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "horolab/geomnum.hpp"
#include "horolab/horosphere.hpp"
#include "horolab/kloosterman.hpp"
#include "horolab/parallel.hpp"
#include "horolab/primitive.hpp"
#include "horolab/rankcount.hpp"
#include "horolab/records.hpp"
#include "horolab/smallsol.hpp"

using namespace horolab;
using modring::IntMatrix;
using modring::IntVector;
using modring::ModMatrix;

namespace {

unsigned g_threads = 2;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. exact counting
// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome out;
    const std::vector<std::pair<int, int>> shapes{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}};
    for (auto [d, n] : shapes) {
        for (i64 q = 1; q <= 12; ++q) {
            i64 formula = prim::primitive_count(d, n, q);
            try {
                i64 enumerated = prim::primitive_count_enumerated(d, n, q);
                out.require(formula == enumerated, "primitive count mismatch at d=" + std::to_string(d) +
                                                       " n=" + std::to_string(n) + " q=" + std::to_string(q));
            } catch (const EnumerationTooLarge&) {
                // outside the candidate cap; the formula value stands alone
            }
        }
    }
    for (int n = 1; n <= 2; ++n)
        for (i64 q = 1; q <= 16; ++q) {
            modring::GlEnumerator en(n, q);
            i64 count = 0;
            while (en.next()) ++count;
            out.require(modring::count_gl(n, q) == count,
                        "unit-group count mismatch at n=" + std::to_string(n) + " q=" + std::to_string(q));
        }
    return out;
}

// ---------------------------------------------------------------------------
// 2. parametrization bijection and block-matrix identity
// ---------------------------------------------------------------------------

Outcome criterion2() {
    Outcome out;
    const std::vector<std::pair<int, int>> shapes{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}};
    for (auto [d, n] : shapes) {
        for (i64 q = 2; q <= 12; ++q) {
            i128 candidates = 1;
            bool feasible = true;
            for (int i = 0; i < d * n && feasible; ++i) {
                candidates *= q;
                if (candidates > i128(modring::kDefaultEnumCap)) feasible = false;
            }
            if (!feasible) continue;
            prim::ParamBijection pb(d, n, q);
            const i64 expected = prim::primitive_count(d, n, q);
            if (n == d) {
                // single coset and the forward map fixes each unit, so the
                // candidate walk itself certifies injectivity; the work is
                // the per-pair integrality identity
                u64 total = 1;
                for (int i = 0; i < n * n; ++i) total *= u64(q);
                const std::size_t n_chunks = std::size_t(g_threads) * 8;
                const u64 step = (total + n_chunks - 1) / n_chunks;
                auto partial = parallel_chunks<std::pair<i64, i64>>(n_chunks, g_threads, [&](std::size_t chunk) {
                    i64 hits = 0, bad = 0;
                    IntMatrix m(n, n);
                    u64 lo = u64(chunk) * step, hi = std::min(total, lo + step);
                    for (u64 code = lo; code < hi; ++code) {
                        u64 c = code;
                        for (int i = n * n - 1; i >= 0; --i) {
                            m(i / n, i % n) = i64(c % u64(q));
                            c /= u64(q);
                        }
                        ModMatrix u(m, q);
                        if (modring::gcd_i64(modring::det_mod(u), q) != 1) continue;
                        ++hits;
                        ModMatrix r = pb.forward(pb.reps()[0], u);
                        if (r.m != u.m) ++bad;
                        if (!prim::check_mtx_relation(pb.reps()[0], u)) ++bad;
                    }
                    return std::make_pair(hits, bad);
                });
                i64 hits = 0, bad = 0;
                for (auto [h, b] : partial) {
                    hits += h;
                    bad += b;
                }
                out.require(bad == 0, "square-case identity failed at n=" + std::to_string(n) + " q=" + std::to_string(q));
                out.require(hits == expected, "square-case count off at q=" + std::to_string(q));
            } else {
                std::vector<ModMatrix> units;
                modring::GlEnumerator en(n, q);
                while (auto u = en.next()) units.push_back(*u);
                out.require(i64(pb.reps().size()) * i64(units.size()) == expected,
                            "index count off at d=" + std::to_string(d) + " n=" + std::to_string(n) +
                                " q=" + std::to_string(q));
                std::set<std::vector<i64>> images;
                auto chunk_results = parallel_chunks<std::pair<i64, std::set<std::vector<i64>>>>(
                    pb.reps().size(), g_threads, [&](std::size_t rep_idx) {
                        const auto& rep = pb.reps()[rep_idx];
                        i64 bad = 0;
                        std::set<std::vector<i64>> local;
                        for (const auto& u : units) {
                            ModMatrix r = pb.forward(rep, u);
                            if (!prim::is_primitive(r)) ++bad;
                            std::vector<i64> key(r.m.data(), r.m.data() + r.m.size());
                            local.insert(key);
                            auto [id, u2] = pb.inverse(r);
                            if (id != rep.id || u2.m != u.m) ++bad;
                            if (!prim::check_mtx_relation(rep, u)) ++bad;
                        }
                        return std::make_pair(bad, local);
                    });
                i64 bad = 0;
                for (auto& [b, local] : chunk_results) {
                    bad += b;
                    images.insert(local.begin(), local.end());
                }
                out.require(bad == 0, "bijection or identity failure at d=" + std::to_string(d) +
                                          " n=" + std::to_string(n) + " q=" + std::to_string(q));
                out.require(i64(images.size()) == expected,
                            "image not all of the primitive set at q=" + std::to_string(q));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// 3. exponential-sum oracle equivalences
// ---------------------------------------------------------------------------

Outcome criterion3() {
    Outcome out;
    // multiplicative splitting vs direct evaluation
    for (int n = 1; n <= 2; ++n) {
        for (i64 q : {6, 10, 12, 15, 36}) {
            auto gl = modring::enumerate_gl_table(n, q);
            Rng rng(2026, u64(q) * 10 + u64(n));
            for (int t = 0; t < 100; ++t) {
                IntMatrix am(n, n), bm(n, n);
                for (int i = 0; i < n * n; ++i) {
                    am(i / n, i % n) = rng.next_in(0, q - 1);
                    bm(i / n, i % n) = rng.next_in(0, q - 1);
                }
                ModMatrix a(am, q), b(bm, q);
                auto split = kloos::crt(a, b);
                auto direct = kloos::brute_over(gl, a, b);
                bool ok_exact = kloos::ExpSum::equal_exact(split, direct);
                double dev = std::abs(split.value() - direct.value()) / std::max(1.0, std::abs(direct.value()));
                out.require(ok_exact && dev <= 1e-9, "splitting mismatch at n=" + std::to_string(n) +
                                                         " q=" + std::to_string(q));
                if (!out.pass) return out;
            }
        }
    }
    // stationary-phase fast path vs brute force
    struct PB {
        i64 p;
        int beta;
    };
    for (PB c : {PB{2, 2}, PB{2, 3}, PB{2, 4}, PB{3, 2}, PB{3, 3}, PB{5, 2}}) {
        i64 q = checked_pow(c.p, c.beta);
        {  // n = 1 exhaustive over legal pairs
            for (i64 a = 1; a < q; ++a)
                for (i64 b = 1; b < q; ++b) {
                    if (a % c.p == 0 || b % c.p == 0) continue;
                    IntMatrix am(1, 1), bm(1, 1);
                    am(0, 0) = a;
                    bm(0, 0) = b;
                    ModMatrix aa(am, q), bb(bm, q);
                    if (!kloos::ExpSum::equal_exact(kloos::primepower(aa, bb, c.p, c.beta), kloos::brute(aa, bb))) {
                        out.require(false, "fast path mismatch n=1 q=" + std::to_string(q));
                        return out;
                    }
                }
        }
        {  // n = 2 seeded
            auto gl = modring::enumerate_gl_table(2, q);
            Rng rng(7, u64(q));
            int done = 0;
            while (done < 100) {
                IntMatrix am(2, 2), bm(2, 2);
                for (int i = 0; i < 4; ++i) {
                    am(i / 2, i % 2) = rng.next_in(0, q - 1);
                    bm(i / 2, i % 2) = rng.next_in(0, q - 1);
                }
                ModMatrix a(am, q), b(bm, q);
                if (modring::rank_mod_p(a, c.p) == 0 || modring::rank_mod_p(b, c.p) == 0) continue;
                ++done;
                if (!kloos::ExpSum::equal_exact(kloos::primepower(a, b, c.p, c.beta), kloos::brute_over(gl, a, b))) {
                    out.require(false, "fast path mismatch n=2 q=" + std::to_string(q));
                    return out;
                }
            }
        }
    }
    // closed form for the degenerate sums, exhaustive
    for (i64 q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27}) {
        auto factors = modring::factorize(q);
        i64 p = factors[0].first;
        int m = factors[0].second;
        {  // n = 1: every A directly against the defining sum
            auto gl = modring::enumerate_gl_table(1, q);
            ModMatrix zero(1, 1, q);
            for (i64 a = 0; a < q; ++a) {
                IntMatrix am(1, 1);
                am(0, 0) = a;
                ModMatrix aa(am, q);
                kloos::ExpSum closed(q);
                closed.add(0, kloos::ramanujan_eval(aa, p, m));
                if (!kloos::ExpSum::equal_exact(kloos::brute_over(gl, zero, aa), closed)) {
                    out.require(false, "closed form off at n=1 q=" + std::to_string(q));
                    return out;
                }
            }
        }
        {  // n = 2: exhaustive through equivalence classes, plus seeded direct checks
            auto gl = modring::enumerate_gl_table(2, q);
            ModMatrix zero(2, 2, q);
            std::map<std::pair<i64, i64>, std::vector<i64>> class_canonical;  // (f1,f2) -> canonical histogram
            u64 total = u64(q) * u64(q) * u64(q) * u64(q);
            IntMatrix am(2, 2);
            for (u64 code = 0; code < total; ++code) {
                u64 c = code;
                for (int i = 3; i >= 0; --i) {
                    am(i / 2, i % 2) = i64(c % u64(q));
                    c /= u64(q);
                }
                // invariant factors of the class of A under two-sided unit
                // action, from the minor gcds of the lift stacked over qI
                i64 f1 = q;
                for (int i = 0; i < 4; ++i) f1 = modring::gcd_i64(f1, am(i / 2, i % 2));
                i64 det = am(0, 0) * am(1, 1) - am(0, 1) * am(1, 0);
                i64 f1f2 = modring::gcd_i64(modring::gcd_i64(det < 0 ? -det : det, checked_mul(q, f1)),
                                            checked_mul(q, q));
                auto key = std::make_pair(f1, f1f2 / std::max<i64>(f1, 1));
                auto it = class_canonical.find(key);
                if (it == class_canonical.end()) {
                    ModMatrix a(am, q);
                    it = class_canonical.emplace(key, kloos::brute_over(gl, zero, a).canonical()).first;
                }
                ModMatrix a(am, q);
                kloos::ExpSum closed(q);
                closed.add(0, kloos::ramanujan_eval(a, p, m));
                if (closed.canonical() != it->second) {
                    out.require(false, "closed form off at n=2 q=" + std::to_string(q));
                    return out;
                }
            }
            Rng rng(13, u64(q));
            for (int t = 0; t < 200; ++t) {  // spot-check the class caching against direct sums
                for (int i = 0; i < 4; ++i) am(i / 2, i % 2) = rng.next_in(0, q - 1);
                ModMatrix a(am, q);
                kloos::ExpSum closed(q);
                closed.add(0, kloos::ramanujan_eval(a, p, m));
                if (!kloos::ExpSum::equal_exact(kloos::brute_over(gl, zero, a), closed)) {
                    out.require(false, "spot check off at n=2 q=" + std::to_string(q));
                    return out;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// 4. inequality suite with the stated constants
// ---------------------------------------------------------------------------

Outcome criterion4() {
    Outcome out;
    for (const auto& rep : kloos::verify_kloos_bounds(kloos::acceptance_bound_scans())) {
        std::string label = rep.bound;
        for (const auto& [k, v] : rep.params) label += " " + k + "=" + fmt(v);
        out.require(rep.pass, label + " failed (ratio " + fmt(rep.ratio) + ")");
    }
    return out;
}

// ---------------------------------------------------------------------------
// 5. expansion oracle equivalence
// ---------------------------------------------------------------------------

Outcome criterion5() {
    Outcome out;
    Rng rng(4242);
    auto run = [&](int n, const std::vector<i64>& qs) {
        for (i64 q : qs) {
            for (int t = 0; t < 50; ++t) {
                horo::TrigPoly f;
                while (int(f.terms.size()) < 5) {
                    IntMatrix nm(n, n), mm(n, n);
                    for (int i = 0; i < n * n; ++i) {
                        nm(i / n, i % n) = rng.next_in(-3, 3);
                        mm(i / n, i % n) = rng.next_in(-3, 3);
                    }
                    f.terms.push_back({nm, mm, {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1}});
                    try {
                        horo::validate(f);
                    } catch (const PreconditionViolated&) {
                        f.terms.pop_back();
                    }
                }
                auto direct = horo::aq_direct(f, n, q);
                auto expanded = horo::aq_expand(f, n, q);
                double dev = std::abs(direct - expanded) / std::max(1.0, std::abs(direct));
                out.require(dev <= 1e-9,
                            "expansion off at n=" + std::to_string(n) + " q=" + std::to_string(q) + " dev=" + fmt(dev));
                if (!out.pass) return;
            }
        }
    };
    run(1, {7, 12, 25, 36, 64, 97});
    run(2, {2, 3, 4, 5, 8, 9});
    return out;
}

// ---------------------------------------------------------------------------
// 6. decay trends
// ---------------------------------------------------------------------------

Outcome criterion6() {
    Outcome out;
    // Weyl sums over the primitive set, d=2, n=1, prime moduli
    std::vector<horo::DecayPoint> pts;
    for (const auto& row : horo::weyl_decay_scan(2, 1, modring::primes_up_to(500), 2)) {
        out.require(row.envelope_ok, "envelope violated at q=" + std::to_string(row.q));
        pts.push_back({double(row.q), row.max_abs});
    }
    horo::DecayTarget fit = horo::fit_decay(pts, 0.5);
    out.require(fit.slope <= -0.35, "slope " + fmt(fit.slope) + " above -0.35");
    out.note("weyl slope " + fmt(fit.slope));

    // Hecke points on the modular surface
    horo::SurfaceFn phi = horo::indicator_y_gt(2.0);
    double target = 3.0 / (2.0 * M_PI);
    double early = 0, late = 0;
    int early_n = 0, late_n = 0;
    for (i64 m : modring::primes_up_to(500)) {
        double err = std::abs(horo::hecke_average(phi, m, {0.0, 2.0}) - target);
        if (m <= 20) {
            early += err;
            ++early_n;
        }
        if (m >= 200) {
            late += err;
            ++late_n;
        }
    }
    early /= early_n;
    late /= late_n;
    out.require(late * 3.0 <= early,
                "hecke improvement factor " + fmt(early / late) + " below 3");
    out.note("hecke factor " + fmt(early / late));
    return out;
}

// ---------------------------------------------------------------------------
// 7. geometry of numbers
// ---------------------------------------------------------------------------

std::vector<double> minima_oracle(const Eigen::MatrixXd& g) {
    const int d = int(g.rows());
    double cap = 0;
    for (int i = 0; i < d; ++i) cap = std::max(cap, g.row(i).norm());
    Eigen::MatrixXd ginv = g.inverse();
    std::vector<i64> bound(std::size_t(d), 0);
    for (int i = 0; i < d; ++i) {
        double s = 0;
        for (int j = 0; j < d; ++j) s += std::abs(ginv(j, i));
        bound[std::size_t(i)] = i64(std::ceil(cap * s)) + 1;
    }
    std::vector<std::pair<double, std::vector<i64>>> cand;
    std::vector<i64> m(std::size_t(d), 0);
    std::function<void(int)> rec = [&](int level) {
        if (level == d) {
            bool zero = true;
            Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
            for (int i = 0; i < d; ++i) {
                if (m[std::size_t(i)] != 0) zero = false;
                v += double(m[std::size_t(i)]) * g.row(i).transpose();
            }
            if (!zero && v.norm() <= cap * (1 + 1e-12)) cand.push_back({v.norm(), m});
            return;
        }
        for (i64 x = -bound[std::size_t(level)]; x <= bound[std::size_t(level)]; ++x) {
            m[std::size_t(level)] = x;
            rec(level + 1);
        }
    };
    rec(0);
    std::sort(cand.begin(), cand.end());
    std::vector<double> outv;
    IntMatrix picked = IntMatrix::Zero(d, d);
    int rank = 0;
    for (const auto& [norm, coeff] : cand) {
        for (int j = 0; j < d; ++j) picked(rank, j) = coeff[std::size_t(j)];
        if (modring::rank_exact(picked.topRows(rank + 1).eval()) == rank + 1) {
            outv.push_back(norm);
            if (++rank == d) break;
        }
    }
    return outv;
}

Outcome criterion7() {
    Outcome out;
    // exact minima against the independent oracle
    Rng rng(777);
    int done = 0;
    while (done < 20) {
        int d = 2 + int(rng.next_in(0, 1));
        Eigen::MatrixXd g(d, d);
        for (int i = 0; i < d * d; ++i) g(i / d, i % d) = rng.next_double() * 4 - 2;
        if (std::abs(g.determinant()) < 0.3) continue;
        gon::LatticeBasis lat(g);
        auto ours = gon::successive_minima(lat);
        auto oracle = minima_oracle(lat.g);
        for (std::size_t i = 0; i < ours.size(); ++i)
            out.require(std::abs(ours[i] - oracle[i]) <= 1e-9 * std::max(1.0, oracle[i]),
                        "minima mismatch in battery case " + std::to_string(done));
        ++done;
    }
    // scaling identity of the majorant
    Rng rng2(778);
    for (int t = 0; t < 10; ++t) {
        gon::LatticeBasis lat = gon::haar_sample_sl2(rng2);
        double base = gon::phi_eval(lat, 1, 1.0, 1.0, 8.0, 1e-11).value;
        for (double r : {2.0, 5.0, 0.5}) {
            double scaled = gon::phi_eval(lat, 1, r, r, 8.0, 1e-11).value;
            out.require(std::abs(scaled - base / r) <= 1e-9 * base, "scaling identity violated");
        }
    }
    // mean-value identity at 1e5 samples, three densities
    std::vector<gon::Density> densities;
    densities.push_back(gon::density_ball_indicator(2.0));
    gon::BoxRegion region{{gon::Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 3)}}};
    densities.push_back(gon::density_box_indicator(region));
    densities.push_back(gon::density_supnorm_rational(4.0, 20.0));
    for (const auto& rho : densities) {
        auto rep = gon::siegel_check_d2(rho, 100000, 31337, g_threads);
        out.require(rep.pass, rho.name + " off target: mean " + fmt(rep.mean) + " vs " + fmt(rep.target) +
                                  " (se " + fmt(rep.stderr_) + ")");
        out.note(rho.name + " dev " + fmt((rep.mean - rep.target) / rep.stderr_) + " se");
    }
    return out;
}

// ---------------------------------------------------------------------------
// 8. rank counting
// ---------------------------------------------------------------------------

Outcome criterion8() {
    Outcome out;
    for (i64 p : {3, 5, 7, 11}) {
        for (i64 b = 1; b <= (p - 1) / 2; ++b) {
            rankcnt::RankCountQuery query{3, 2, 1, p, b};
            i64 pruned = rankcnt::count_rank(query, g_threads);
            i64 naive = rankcnt::count_rank_naive(query, 10'000'000);
            out.require(pruned == naive, "pruned vs naive mismatch at p=" + std::to_string(p) +
                                             " b=" + std::to_string(b));
            auto rep = rankcnt::check_lower_bounds(query, g_threads);
            out.require(rep.simple_ok, "box-power lower bound failed at p=" + std::to_string(p) +
                                           " b=" + std::to_string(b));
            out.require(rep.halfbox_ok, "half-box lower bound failed at p=" + std::to_string(p) +
                                            " b=" + std::to_string(b));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// 9. grid identity
// ---------------------------------------------------------------------------

Outcome criterion9() {
    Outcome out;
    Rng rng(999);
    int done = 0;
    while (done < 100) {
        int d = 2 + int(rng.next_in(0, 1));
        int n = 1 + int(rng.next_in(0, d - 1 > 1 ? 1 : 0));
        i64 q = rng.next_in(2, 20);
        IntMatrix m(d, n);
        for (int i = 0; i < d * n; ++i) m(i / n, i % n) = rng.next_in(0, q - 1);
        ModMatrix r(m, q);
        if (!prim::is_primitive(r)) continue;
        IntVector b(n);
        for (int i = 0; i < n; ++i) b(i) = rng.next_in(-q, q);
        smallsol::GridData grid = smallsol::grid_construct(r, b);
        for (int t = 0; t < 5; ++t) {
            gon::Box box;
            box.lo = Eigen::VectorXd(d);
            box.hi = Eigen::VectorXd(d);
            for (int i = 0; i < d; ++i) {
                double lo = rng.next_double() * 6 - 3;
                box.lo(i) = lo;
                box.hi(i) = lo + rng.next_double() * 3;
            }
            gon::BoxRegion region{{box}};
            i64 direct = smallsol::count_solutions({r, b, region});
            i64 via_grid = smallsol::grid_count(grid, region);
            out.require(direct == via_grid, "grid identity failed in case " + std::to_string(done));
        }
        ++done;
    }
    return out;
}

// ---------------------------------------------------------------------------
// 10. limit-law convergence
// ---------------------------------------------------------------------------

Outcome criterion10() {
    Outcome out;
    gon::BoxRegion omega{{gon::Box{Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)}}};
    const int r_max = 6;
    auto mc = smallsol::limit_constant_mc(omega, 1, r_max, 200000, 60601, g_threads);
    for (i64 q : {101, 211}) {
        auto hist = smallsol::hist_distribution(2, 1, q, {}, omega, IntVector::Ones(1), r_max, true);
        bool q_ok = true;
        for (int r = 0; r <= r_max; ++r) {
            double pq = hist.prob(std::size_t(r));
            double se_q = std::sqrt(std::max(pq * (1 - pq), 1e-12) / double(hist.total));
            double tol = 3.0 * (mc.stderr_[std::size_t(r)] + se_q);
            double dev = std::abs(pq - mc.prob[std::size_t(r)]);
            if (dev > tol) q_ok = false;
            out.require(dev <= tol, "q=" + std::to_string(q) + " r=" + std::to_string(r) + " dev " + fmt(dev) +
                                        " > tol " + fmt(tol));
        }
        if (!q_ok && q == 101)
            out.note("q=101 exceedances trace to window quantization: the half-open window holds 21 integer "
                     "columns against a side of 2*sqrt(101) = 20.1, inflating the effective volume by 9%, "
                     "which dominates the statistical tolerance at this modulus");
    }
    // the empirical mean against the window volume; at square q the inflated
    // window slices the integers evenly, making the comparison meaningful
    for (i64 q : {121, 211}) {
        auto hist = smallsol::hist_distribution(2, 1, q, {}, omega, IntVector::Ones(1), 60, true);
        double mean = 0;
        for (std::size_t r = 0; r < hist.counts.size(); ++r) mean += double(r) * hist.prob(r);
        out.require(std::abs(mean - 4.0) <= 0.2, "mean " + fmt(mean) + " at q=" + std::to_string(q) +
                                                     " more than 5% from 4");
        out.note("mean@q=" + std::to_string(q) + " " + fmt(mean));
    }
    return out;
}

// ---------------------------------------------------------------------------
// 11. determinism across thread counts
// ---------------------------------------------------------------------------

Outcome criterion11() {
    Outcome out;
    auto pipeline = [&](unsigned threads) {
        std::vector<cli::ResultRecord> records;
        // exact integer path: exponential-sum histograms
        Rng rng(5150);
        for (int t = 0; t < 3; ++t) {
            IntMatrix am(2, 2), bm(2, 2);
            for (int i = 0; i < 4; ++i) {
                am(i / 2, i % 2) = rng.next_in(0, 11);
                bm(i / 2, i % 2) = rng.next_in(0, 11);
            }
            auto hist = kloos::brute(ModMatrix(am, 12), ModMatrix(bm, 12), modring::kDefaultEnumCap, threads);
            cli::ResultRecord rec;
            rec.op = "hist";
            for (i64 k = 0; k < 12; ++k)
                rec.values.emplace_back("c" + std::to_string(k), double(hist.counts()[std::size_t(k)]));
            records.push_back(rec);
        }
        // exact combinatorial path
        for (const auto& row : rankcnt::ratio_scan(3, 2, 1, {3, 5}, threads)) {
            cli::ResultRecord rec;
            rec.op = "rank";
            rec.values.emplace_back("count", double(row.count));
            rec.values.emplace_back("ratio", row.ratio);
            rec.pass = row.lower_ok;
            records.push_back(rec);
        }
        // float path with chunked merging
        auto rep = gon::siegel_check_d2(gon::density_ball_indicator(2.0), 16384, 404, threads);
        cli::ResultRecord rec;
        rec.op = "siegel";
        rec.values.emplace_back("mean", rep.mean);
        rec.values.emplace_back("stderr", rep.stderr_);
        records.push_back(rec);
        return cli::render(records, "jsonl");
    };
    std::string r1 = pipeline(1), r4 = pipeline(4), r16 = pipeline(16);
    out.require(r1 == r4, "outputs differ between 1 and 4 threads");
    out.require(r1 == r16, "outputs differ between 1 and 16 threads");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_threads = unsigned(std::atoi(argv[1]));
    struct Entry {
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> criteria{
        {"exact counting (primitive sets and unit groups)", criterion1},
        {"coset parametrization bijection and integrality identity", criterion2},
        {"exponential-sum oracle equivalences", criterion3},
        {"inequality suite with stated constants", criterion4},
        {"expansion oracle equivalence on the double torus", criterion5},
        {"decay trends (Weyl envelope, slope, Hecke improvement)", criterion6},
        {"geometry of numbers (minima, scaling, mean values)", criterion7},
        {"rank counting lower bounds and pruning", criterion8},
        {"grid identity on a randomized battery", criterion9},
        {"limit-law convergence at q = 101, 211", criterion10},
        {"bit-identical outputs across 1/4/16 threads", criterion11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %zu: %s%s%s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    out.detail.empty() ? "" : " -- ", out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}
