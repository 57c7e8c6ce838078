#include "horolab/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "horolab/parallel.hpp"

namespace horolab::kloos {

using modring::det_mod;
using modring::gcd_i64;
using modring::GlEnumerator;
using modring::inv_mod;
using modring::mat_inv_mod;
using modring::mat_mul_mod;
using modring::mod_pos;
using modring::rank_mod_p;
using modring::trace_mod;

namespace {

void require_square_pair(const ModMatrix& a, const ModMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.q() != b.q())
        throw PreconditionViolated("need square matrices of equal size over the same modulus");
}

// trace of (A*X + B*Y) mod q without forming the products
i64 trace_pair(const IntMatrix& a, const IntMatrix& b, const IntMatrix& x, const IntMatrix& y, i64 q) {
    const Eigen::Index n = a.rows();
    i128 acc = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) acc += i128(a(i, k)) * x(k, i) + i128(b(i, k)) * y(k, i);
    i64 r = i64(acc % q);
    return r < 0 ? r + q : r;
}

// enumerate GL_n(Z/qZ) restricted to the candidate index window [begin, end)
void for_gl_range(int n, i64 q, u64 begin, u64 end, const std::function<void(const IntMatrix&, const IntMatrix&)>& fn) {
    IntMatrix x(n, n);
    for (u64 code = begin; code < end; ++code) {
        u64 c = code;
        for (int i = n * n - 1; i >= 0; --i) {
            x(i / n, i % n) = i64(c % u64(q));
            c /= u64(q);
        }
        ModMatrix m(x, q);
        if (gcd_i64(det_mod(m), q) != 1) continue;
        fn(m.m, mat_inv_mod(m).m);
    }
}

u64 candidate_total(int n, i64 q, u64 cap) {
    i128 total = 1;
    for (int i = 0; i < n * n; ++i) {
        total *= q;
        if (total > i128(cap)) throw EnumerationTooLarge("q^(n^2) exceeds the enumeration cap");
    }
    return u64(total);
}

}  // namespace

ExpSum brute(const ModMatrix& a, const ModMatrix& b, u64 cap, unsigned threads) {
    require_square_pair(a, b);
    const int n = int(a.rows());
    const i64 q = a.q();
    const u64 total = candidate_total(n, q, cap);
    const std::size_t n_chunks = threads <= 1 ? 1 : std::size_t(threads) * 4;
    const u64 step = (total + n_chunks - 1) / n_chunks;
    auto part = parallel_chunks<ExpSum>(n_chunks, threads, [&](std::size_t chunk) {
        ExpSum local(q);
        u64 lo = u64(chunk) * step, hi = std::min(total, lo + step);
        if (lo < hi)
            for_gl_range(n, q, lo, hi, [&](const IntMatrix& x, const IntMatrix& xinv) {
                local.add(trace_pair(a.m, b.m, x, xinv, q));
            });
        return local;
    });
    ExpSum out(q);
    for (const auto& piece : part) out += piece;
    return out;
}

ExpSum brute_over(const GlTable& gl, const ModMatrix& a, const ModMatrix& b) {
    require_square_pair(a, b);
    if (a.q() != gl.q || int(a.rows()) != gl.n) throw PreconditionViolated("table shape mismatch");
    ExpSum out(gl.q);
    for (std::size_t i = 0; i < gl.x.size(); ++i) out.add(trace_pair(a.m, b.m, gl.x[i], gl.xinv[i], gl.q));
    return out;
}

ExpSum crt(const ModMatrix& a, const ModMatrix& b, u64 cap) {
    require_square_pair(a, b);
    const i64 q = a.q();
    const auto& factors = a.mod.factors;
    if (factors.size() <= 1) return brute(a, b, cap);
    ExpSum acc(1);
    acc.add(0, 1);
    for (auto [p, e] : factors) {
        i64 qj = checked_pow(p, e);
        i64 rest = q / qj;
        i64 cj = inv_mod(rest % qj, qj);
        ModMatrix aj = modring::scalar_mul_mod(cj, ModMatrix(a.m, qj));
        ModMatrix bj = modring::scalar_mul_mod(cj, ModMatrix(b.m, qj));
        ExpSum factor = (e >= 2 && rank_mod_p(aj, p) > 0 && rank_mod_p(bj, p) > 0) ? primepower(aj, bj, p, e) : brute(aj, bj, cap);
        acc = ExpSum::convolve(acc, factor);
    }
    return acc;
}

ExpSum reduce(const ModMatrix& a, const ModMatrix& b, i64 l, u64 cap) {
    require_square_pair(a, b);
    const i64 q = a.q();
    if (l == 1) return brute(a, b, cap);
    i64 rad = 1;
    for (auto [p, e] : a.mod.factors) {
        (void)e;
        rad = checked_mul(rad, p);
    }
    if (l <= 0 || (q / rad) % l != 0) throw PreconditionViolated("l must divide q / rad(q)");
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            if (b.m(i, j) % l != 0) throw PreconditionViolated("l must divide B");
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a.m(i, j) % l != 0) return ExpSum(q);  // vanishes
    const int n = int(a.rows());
    ModMatrix al(IntMatrix(a.m / l), q / l);
    ModMatrix bl(IntMatrix(b.m / l), q / l);
    return brute(al, bl, cap).scaled(checked_pow(l, n * n)).embedded(q);
}

ExpSum primepower(const ModMatrix& a, const ModMatrix& b, i64 p, int beta, int lift_style) {
    require_square_pair(a, b);
    if (beta < 2) throw PreconditionViolated("primepower needs beta >= 2");
    const int n = int(a.rows());
    const i64 q = checked_pow(p, beta);
    if (a.q() != q) throw PreconditionViolated("modulus of A, B must be p^beta");
    if (rank_mod_p(a, p) == 0 || rank_mod_p(b, p) == 0) throw PreconditionViolated("A, B must be nonzero mod p");

    const int alpha = beta / 2;
    const i64 qa = checked_pow(p, alpha);
    const i64 mult = checked_pow(p, alpha * n * n);
    const bool odd = (beta % 2) != 0;

    ExpSum out(q);
    GlEnumerator en(n, qa);
    while (auto y0 = en.next()) {
        IntMatrix ylift = y0->m;
        if (lift_style == 1)
            for (Eigen::Index i = 0; i < ylift.rows(); ++i)
                for (Eigen::Index j = 0; j < ylift.cols(); ++j) ylift(i, j) += qa;  // same class mod p^alpha
        ModMatrix y(ylift, q);
        ModMatrix yinv = mat_inv_mod(y);
        ModMatrix ay = mat_mul_mod(a, y);
        ModMatrix yb = mat_mul_mod(yinv, b);
        // stationarity: A Y = Y^{-1} B mod p^alpha
        bool stationary = true;
        IntMatrix w(n, n);
        for (Eigen::Index i = 0; i < n && stationary; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                w(i, j) = mod_pos(ay.m(i, j) - yb.m(i, j), q);
                if (w(i, j) % qa != 0) {
                    stationary = false;
                    break;
                }
            }
        if (!stationary) continue;
        i64 t0 = mod_pos(trace_mod(ay) + trace_mod(mat_mul_mod(b, yinv)), q);
        if (!odd) {
            out.add(t0, mult);
            continue;
        }
        ModMatrix c(yb.m, p);
        ModMatrix d(IntMatrix(w / qa), p);
        // fold the Gauss factor into the histogram: e_q(t0) e_p(s) = e_q(t0 + s q/p)
        const i64 stride = q / p;
        ExpSum g = gauss_brute(c, d);
        for (i64 s = 0; s < p; ++s) {
            i64 cnt = g.counts()[std::size_t(s)];
            if (cnt != 0) out.add((t0 + s * stride) % q, checked_mul(cnt, mult));
        }
    }
    return out;
}

i64 ramanujan_eval(const ModMatrix& a, i64 p, int m) {
    if (a.rows() != a.cols()) throw PreconditionViolated("square matrix required");
    const int n = int(a.rows());
    if (a.q() != checked_pow(p, m)) throw PreconditionViolated("modulus must be p^m");
    const i64 pm1 = checked_pow(p, m - 1);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (a.m(i, j) % pm1 != 0) return 0;
    IntMatrix reduced = a.m / pm1;
    const int r = rank_mod_p(reduced, p);
    i64 value = checked_pow(p, (m - 1) * n * n);
    value = checked_mul(value, checked_pow(p, r * n - r * (r + 1) / 2));
    for (int i = 0; i < n - r; ++i) value = checked_mul(value, checked_pow(p, n - r) - checked_pow(p, i));
    return (r % 2 == 0) ? value : -value;
}

i64 kn0a_exact(const ModMatrix& a) {
    const i64 q = a.q();
    if (q == 1) return 1;
    i64 out = 1;
    for (auto [p, e] : a.mod.factors) {
        i64 qj = checked_pow(p, e);
        i64 cj = a.mod.factors.size() == 1 ? 1 : inv_mod((q / qj) % qj, qj);
        ModMatrix aj = modring::scalar_mul_mod(cj, ModMatrix(a.m, qj));
        out = checked_mul(out, ramanujan_eval(aj, p, e));
        if (out == 0) return 0;
    }
    return out;
}

ExpSum gauss_brute(const ModMatrix& c, const ModMatrix& d, u64 cap) {
    require_square_pair(c, d);
    const i64 p = c.q();
    if (!modring::is_prime(p)) throw PreconditionViolated("Gauss sum needs a prime modulus");
    const int n = int(c.rows());
    const u64 total = candidate_total(n, p, cap);
    ExpSum out(p);
    IntMatrix z(n, n);
    for (u64 code = 0; code < total; ++code) {
        u64 cc = code;
        for (int i = n * n - 1; i >= 0; --i) {
            z(i / n, i % n) = i64(cc % u64(p));
            cc /= u64(p);
        }
        // tr(C Z^2 + D Z)
        i128 acc = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k) {
                i128 z2 = 0;
                for (Eigen::Index l = 0; l < n; ++l) z2 += i128(z(k, l)) * z(l, i);
                acc += i128(c.m(i, k)) * i128(z2 % p) + i128(d.m(i, k)) * z(k, i);
            }
        out.add(i64(acc % p));
    }
    return out;
}

i64 count_c(const ModMatrix& a, const ModMatrix& b, u64 cap) {
    require_square_pair(a, b);
    const int n = int(a.rows());
    const i64 q = a.q();
    const u64 total = candidate_total(n, q, cap);
    i64 count = 0;
    for_gl_range(n, q, 0, total, [&](const IntMatrix& y, const IntMatrix& yinv) {
        ModMatrix ym(y, q), yim(yinv, q);
        if (mat_mul_mod(a, ym).m == mat_mul_mod(yim, b).m) ++count;
    });
    return count;
}

int dim_anticommutant(const ModMatrix& c, bool affine) {
    const i64 p = c.q();
    if (!modring::is_prime(p)) throw PreconditionViolated("prime modulus required");
    if (affine && p != 2) throw PreconditionViolated("affine variant is a mod-2 statement");
    const int n = int(c.rows());
    IntMatrix map(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    i64 v = 0;
                    if (j == b) v += c.m(i, a);
                    if (i == a) v += c.m(b, j);
                    if (affine && i == a && j == b) v += 1;
                    map(i * n + j, a * n + b) = mod_pos(v, p);
                }
    return n * n - rank_mod_p(map, p);
}

// ---------------------------------------------------------------------------
// inequality suite
// ---------------------------------------------------------------------------

namespace {

IntMatrix random_mod_matrix(Rng& rng, int n, i64 q) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.next_in(0, q - 1);
    return m;
}

double abs_value(const ExpSum& s) { return std::abs(s.value()); }

bool leq_with_slack(double measured, double bound) { return measured <= bound * (1 + 1e-9) + 1e-9; }

std::vector<std::pair<IntMatrix, IntMatrix>> scan_pairs(const BoundScan& scan, int n, i64 q, bool skip_both_zero) {
    std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
    if (scan.exhaustive) {
        u64 total = candidate_total(n, q, modring::kDefaultEnumCap);
        IntMatrix a(n, n), b(n, n);
        for (u64 ca = 0; ca < total; ++ca) {
            u64 t = ca;
            for (int i = n * n - 1; i >= 0; --i) {
                a(i / n, i % n) = i64(t % u64(q));
                t /= u64(q);
            }
            for (u64 cb = 0; cb < total; ++cb) {
                t = cb;
                for (int i = n * n - 1; i >= 0; --i) {
                    b(i / n, i % n) = i64(t % u64(q));
                    t /= u64(q);
                }
                if (skip_both_zero && ca == 0 && cb == 0) continue;
                pairs.emplace_back(a, b);
            }
        }
    } else {
        Rng rng(scan.seed, u64(q) * 1000 + u64(n));
        while (int(pairs.size()) < scan.samples) {
            IntMatrix a = random_mod_matrix(rng, n, q), b = random_mod_matrix(rng, n, q);
            if (skip_both_zero && a.isZero() && b.isZero()) continue;
            pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

BoundReport report_etres1(const BoundScan& scan, i64 p) {
    const int n = scan.n;
    auto gl = modring::enumerate_gl_table(n, p);
    double max_abs = 0;
    bool pass = true;
    for (auto& [am, bm] : scan_pairs(scan, n, p, true)) {
        ModMatrix a(am, p), b(bm, p);
        double v = abs_value(brute_over(gl, a, b));
        max_abs = std::max(max_abs, v);
        if (!leq_with_slack(v, 2 * std::pow(double(p), n * n - n + 1))) pass = false;
    }
    double unit = std::pow(double(p), n * n - n + 1);
    return {"etres1", {{"n", double(n)}, {"p", double(p)}}, max_abs, 2 * unit, max_abs / unit, pass};
}

BoundReport report_etres2(const BoundScan& scan, i64 p) {
    const int n = scan.n;
    auto gl = modring::enumerate_gl_table(n, p);
    const int delta = (n % 2 == 0) ? 0 : 1;
    double max_abs = 0;
    std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
    if (scan.exhaustive) {
        for (const auto& x : gl.x)
            for (const auto& y : gl.x) pairs.emplace_back(x, y);
    } else {
        Rng rng(scan.seed, u64(p));
        int done = 0;
        while (done < scan.samples) {
            IntMatrix a = random_mod_matrix(rng, n, p), b = random_mod_matrix(rng, n, p);
            if (gcd_i64(det_mod(ModMatrix(a, p)), p) != 1 || gcd_i64(det_mod(ModMatrix(b, p)), p) != 1) continue;
            pairs.emplace_back(a, b);
            ++done;
        }
    }
    for (auto& [am, bm] : pairs) max_abs = std::max(max_abs, abs_value(brute_over(gl, ModMatrix(am, p), ModMatrix(bm, p))));
    double unit = std::pow(double(p), (3.0 * n * n - delta) / 4.0);
    // implied constant unspecified; the ratio is tracked as a golden regression
    return {"etres2", {{"n", double(n)}, {"p", double(p)}}, max_abs, unit, max_abs / unit, true};
}

BoundReport report_cpab(const BoundScan& scan, i64 p) {
    const int n = scan.n;
    const int delta = (n % 2 == 0) ? 0 : 1;
    double max_ratio = 0;
    bool pass = true;
    for (auto& [am, bm] : scan_pairs(scan, n, p, true)) {
        ModMatrix a(am, p), b(bm, p);
        i64 cnt = count_c(a, b);
        int ra = rank_mod_p(a, p), rb = rank_mod_p(b, p);
        if (ra != rb) {
            if (cnt != 0) pass = false;  // exact statement, no constant
            continue;
        }
        double unit;
        if (ra == n) unit = std::pow(double(p), 0.5 * (n * n - delta));
        else if (ra >= 1) unit = std::pow(double(p), n * n - 2.0 * ra * (n - ra));
        else unit = std::pow(double(p), (n - 1) * (n - 1) + 1);  // both zero is excluded above
        max_ratio = std::max(max_ratio, double(cnt) / unit);
    }
    return {"cpab", {{"n", double(n)}, {"p", double(p)}}, max_ratio, 0, max_ratio, pass};
}

BoundReport report_dc(const BoundScan& scan, i64 p, bool affine) {
    const int n = scan.n;
    u64 total = candidate_total(n, p, modring::kDefaultEnumCap);
    int max_dim = 0;
    bool pass = true;
    IntMatrix c(n, n);
    for (u64 code = 0; code < total; ++code) {
        u64 t = code;
        for (int i = n * n - 1; i >= 0; --i) {
            c(i / n, i % n) = i64(t % u64(p));
            t /= u64(p);
        }
        ModMatrix cm(c, p);
        if (affine) {
            int dim = dim_anticommutant(cm, true);
            max_dim = std::max(max_dim, dim);
            if (2 * dim > n * n) pass = false;
            continue;
        }
        if (code == 0) continue;  // C = 0 excluded
        if (p == 2 && cm.m == IntMatrix::Identity(n, n)) continue;
        int dim = dim_anticommutant(cm, false);
        max_dim = std::max(max_dim, dim);
        if (dim > (n - 1) * (n - 1) + 1) pass = false;
    }
    double bound = affine ? n * n / 2.0 : double((n - 1) * (n - 1) + 1);
    return {affine ? "vardc" : "dc", {{"n", double(n)}, {"p", double(p)}}, double(max_dim), bound,
            bound > 0 ? max_dim / bound : 0, pass};
}

BoundReport report_nlifts(const BoundScan& scan, i64 q) {
    const int n = scan.n;
    auto factors = modring::factorize(q);
    if (factors.size() != 1) throw PreconditionViolated("nlifts scan needs a prime power");
    i64 p = factors[0].first;
    double max_ratio = 0;
    for (auto& [am, bm] : scan_pairs(scan, n, q, true)) {
        ModMatrix a(am, q), b(bm, q);
        if (rank_mod_p(a, p) == 0 && rank_mod_p(b, p) == 0) continue;  // gcd(q, A, B) > 1
        i64 cnt = count_c(a, b);
        max_ratio = std::max(max_ratio, double(cnt) / std::pow(double(q), (n - 1) * (n - 1) + 1));
    }
    return {"nlifts", {{"n", double(n)}, {"q", double(q)}}, max_ratio, 0, max_ratio, true};
}

BoundReport report_gauss(const BoundScan& scan, i64 p) {
    const int n = scan.n;
    double max_ratio = 0;
    bool pass = true;
    for (auto& [cm, dm] : scan_pairs(scan, n, p, false)) {
        ModMatrix c(cm, p), d(dm, p);
        double v = abs_value(gauss_brute(c, d));
        double bound = std::pow(double(p), 0.5 * (n * n + dim_anticommutant(c)));
        if (!leq_with_slack(v, bound)) pass = false;
        max_ratio = std::max(max_ratio, v / bound);
    }
    return {"gauss", {{"n", double(n)}, {"p", double(p)}}, max_ratio, 1.0, max_ratio, pass};
}

BoundReport report_kgenq(const BoundScan& scan, i64 q) {
    const int n = scan.n;
    auto factors = modring::factorize(q);
    if (factors.size() != 1) throw PreconditionViolated("kgenq scan needs a prime power");
    i64 p = factors[0].first;
    auto gl = modring::enumerate_gl_table(n, q);
    double max_abs = 0;
    for (auto& [am, bm] : scan_pairs(scan, n, q, true)) {
        ModMatrix a(am, q), b(bm, q);
        if (rank_mod_p(a, p) == 0 && rank_mod_p(b, p) == 0) continue;
        max_abs = std::max(max_abs, abs_value(brute_over(gl, a, b)));
    }
    double unit = std::pow(double(q), n * n - n + 1);
    return {"kgenq", {{"n", double(n)}, {"q", double(q)}}, max_abs, unit, max_abs / unit, true};
}

BoundReport report_kmain(const BoundScan& scan, i64 q) {
    const int n = scan.n;
    auto gl = modring::enumerate_gl_table(n, q);
    double max_ratio1 = 0, max_ratio2 = 0;
    for (auto& [am, bm] : scan_pairs(scan, n, q, true)) {
        ModMatrix a(am, q), b(bm, q);
        i64 gall = q, ga = q;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                gall = gcd_i64(gall, gcd_i64(a.m(i, j), b.m(i, j)));
                ga = gcd_i64(ga, a.m(i, j));
            }
        double v = abs_value(brute_over(gl, a, b));
        if (gall == 1) max_ratio1 = std::max(max_ratio1, v / std::pow(double(q), n * n - n + 1 + scan.eps));
        max_ratio2 = std::max(max_ratio2, v / (std::pow(double(q), n * n) * std::pow(double(q) / double(ga), -n + 1 + scan.eps)));
    }
    return {"kmain",
            {{"n", double(n)}, {"q", double(q)}, {"eps", scan.eps}},
            std::max(max_ratio1, max_ratio2),
            0,
            std::max(max_ratio1, max_ratio2),
            true};
}

BoundReport report_kn0a(const BoundScan& scan, i64 q) {
    const int n = scan.n;
    bool pass = true;
    double max_ratio = 0;
    u64 total = candidate_total(n, q, modring::kDefaultEnumCap);
    IntMatrix am(n, n);
    i64 drop = 1;  // prod over p | q of p^{ord_p(q) - 1}
    for (auto [p, e] : modring::factorize(q)) drop = checked_mul(drop, checked_pow(p, e - 1));
    for (u64 code = 0; code < total; ++code) {
        u64 t = code;
        for (int i = n * n - 1; i >= 0; --i) {
            am(i / n, i % n) = i64(t % u64(q));
            t /= u64(q);
        }
        ModMatrix a(am, q);
        i64 k = kn0a_exact(a);
        bool divisible = true;
        for (Eigen::Index i = 0; i < n && divisible; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (am(i, j) % drop != 0) {
                    divisible = false;
                    break;
                }
        if (!divisible) {
            if (k != 0) pass = false;
            continue;
        }
        i64 g = q;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) g = gcd_i64(g, am(i, j));
        // |K| * (q/g)^n <= q^{n^2}, exact integer comparison
        i128 lhs = checked_mul128(k < 0 ? -k : k, checked_pow128(q / g, n));
        i128 rhs = checked_pow128(q, n * n);
        if (lhs > rhs) pass = false;
        if (rhs > 0) max_ratio = std::max(max_ratio, to_double(lhs) / to_double(rhs));
    }
    return {"kn0a", {{"n", double(n)}, {"q", double(q)}}, max_ratio, 1.0, max_ratio, pass};
}

}  // namespace

std::vector<BoundReport> verify_kloos_bounds(const std::vector<BoundScan>& scans) {
    std::vector<BoundReport> out;
    for (const auto& scan : scans) {
        for (i64 m : scan.moduli) {
            if (scan.bound == "etres1") out.push_back(report_etres1(scan, m));
            else if (scan.bound == "etres2") out.push_back(report_etres2(scan, m));
            else if (scan.bound == "cpab") out.push_back(report_cpab(scan, m));
            else if (scan.bound == "dc") out.push_back(report_dc(scan, m, false));
            else if (scan.bound == "vardc") out.push_back(report_dc(scan, m, true));
            else if (scan.bound == "nlifts") out.push_back(report_nlifts(scan, m));
            else if (scan.bound == "gauss") out.push_back(report_gauss(scan, m));
            else if (scan.bound == "kgenq") out.push_back(report_kgenq(scan, m));
            else if (scan.bound == "kmain") out.push_back(report_kmain(scan, m));
            else if (scan.bound == "kn0a") out.push_back(report_kn0a(scan, m));
            else throw ConfigInvalid("unknown bound family: " + scan.bound);
        }
    }
    return out;
}

std::vector<BoundScan> acceptance_bound_scans() {
    std::vector<BoundScan> scans;
    scans.push_back({"etres1", 2, {2, 3}, true, 0, 1, 0.1});
    scans.push_back({"etres1", 2, {5, 7}, false, 10000, 1, 0.1});
    scans.push_back({"gauss", 1, {2, 3, 5, 7, 11, 13}, true, 0, 1, 0.1});
    scans.push_back({"gauss", 2, {2, 3}, true, 0, 1, 0.1});
    for (int n = 1; n <= 3; ++n) scans.push_back({"dc", n, {2, 3}, true, 0, 1, 0.1});
    {
        BoundScan kn0a{"kn0a", 1, {}, true, 0, 1, 0.1};
        for (i64 q = 2; q <= 27; ++q) kn0a.moduli.push_back(q);
        scans.push_back(kn0a);
        kn0a.n = 2;
        scans.push_back(kn0a);
    }
    return scans;
}

}  // namespace horolab::kloos
