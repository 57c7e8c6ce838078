#include "horolab/horosphere.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace horolab::horo {

using kloos::ExpSum;
using modring::gcd_i64;
using modring::mod_pos;

void validate(const TrigPoly& f) {
    std::set<std::vector<i64>> seen;
    for (const auto& t : f.terms) {
        std::vector<i64> key;
        for (Eigen::Index i = 0; i < t.freq_n.size(); ++i) key.push_back(t.freq_n.data()[i]);
        key.push_back(i64(1) << 62);
        for (Eigen::Index i = 0; i < t.freq_m.size(); ++i) key.push_back(t.freq_m.data()[i]);
        if (!seen.insert(key).second) throw PreconditionViolated("duplicate frequency in trigonometric polynomial");
    }
}

namespace {

// elementwise residue pairing sum(N .* R) mod q
i64 dot_mod(const IntMatrix& freq, const IntMatrix& r, i64 q) {
    i128 acc = 0;
    for (Eigen::Index i = 0; i < freq.rows(); ++i)
        for (Eigen::Index j = 0; j < freq.cols(); ++j) acc += i128(mod_pos(freq(i, j), q)) * r(i, j);
    return i64(acc % q);
}

}  // namespace

Complex weyl_sum(int d, int n, i64 q, const IntMatrix& freq_n, u64 cap) {
    if (freq_n.rows() != d || freq_n.cols() != n) throw PreconditionViolated("frequency must be d x n");
    ExpSum hist(q);
    prim::for_each_primitive(d, n, q, [&](const ModMatrix& r) { hist.add(dot_mod(freq_n, r.m, q)); }, cap);
    return hist.value() / double(prim::primitive_count(d, n, q));
}

Complex weyl_sum_formula_n1(int d, i64 q, const IntMatrix& freq_n) {
    if (freq_n.cols() != 1 || freq_n.rows() != d) throw PreconditionViolated("frequency must be d x 1");
    i64 g = q;
    for (Eigen::Index i = 0; i < d; ++i) g = gcd_i64(g, freq_n(i, 0));
    i64 sum = 0;
    for (i64 m : modring::divisors(q))
        if (g % m == 0) sum = checked_add(sum, checked_mul(modring::moebius(q / m), checked_pow(m, d)));
    return Complex(double(sum), 0) / double(prim::primitive_count(d, 1, q));
}

Complex aq_direct(const TrigPoly& f, int n, i64 q, u64 cap) {
    validate(f);
    const i64 total_gl = modring::count_gl(n, q);
    std::vector<ExpSum> hists(f.terms.size(), ExpSum(q));
    modring::GlEnumerator en(n, q, cap);
    while (auto x = en.next()) {
        IntMatrix xinv = modring::mat_inv_mod(*x).m;
        for (std::size_t t = 0; t < f.terms.size(); ++t) {
            i64 phase = mod_pos(dot_mod(f.terms[t].freq_n, x->m, q) + dot_mod(f.terms[t].freq_m, xinv, q), q);
            hists[t].add(phase);
        }
    }
    Complex out(0, 0);
    for (std::size_t t = 0; t < f.terms.size(); ++t) out += f.terms[t].coeff * hists[t].value();
    return out / double(total_gl);
}

Complex aq_expand(const TrigPoly& f, int n, i64 q, u64 cap) {
    validate(f);
    const i64 total_gl = modring::count_gl(n, q);
    Complex out(0, 0);
    for (const auto& t : f.terms) {
        if (t.freq_n.isZero() && t.freq_m.isZero()) {
            out += t.coeff;
            continue;
        }
        ModMatrix a(t.freq_n, q), b(t.freq_m, q);
        out += t.coeff * kloos::crt(a, b, cap).value() / double(total_gl);
    }
    return out;
}

Complex weyl_joint(const prim::ParamBijection& pb, const IntMatrix& freq_n, const IntMatrix& freq_m, u64 cap) {
    const int d = pb.d(), n = pb.n();
    const i64 q = pb.q();
    if (freq_n.rows() != d || freq_n.cols() != n || freq_m.rows() != n || freq_m.cols() != d)
        throw PreconditionViolated("frequency shapes must be d x n and n x d");
    // A = (0 I_n) tM: the bottom n rows of tM; B depends on the coset
    IntMatrix a = freq_m.transpose().eval().bottomRows(n);
    Complex sum(0, 0);
    for (const auto& rep : pb.reps()) {
        IntMatrix ginv = prim::unimodular_inverse(rep.gamma);
        IntMatrix proj = IntMatrix::Zero(d, n);
        proj.bottomRows(n) = IntMatrix::Identity(n, n);
        IntMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i128 acc = 0;
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) acc += i128(freq_n(k, i)) * ginv(k, l) * proj(l, j);
                b(i, j) = checked_narrow(acc);
            }
        sum += kloos::crt(ModMatrix(a, q), ModMatrix(b, q), cap).value();
    }
    return sum / double(prim::primitive_count(d, n, q));
}

Complex weyl_joint_direct(const prim::ParamBijection& pb, const IntMatrix& freq_n, const IntMatrix& freq_m) {
    const int d = pb.d(), n = pb.n();
    const i64 q = pb.q();
    ExpSum hist(q);
    modring::GlEnumerator en(n, q);
    std::vector<ModMatrix> units;
    while (auto u = en.next()) units.push_back(*u);
    for (const auto& rep : pb.reps())
        for (const auto& u : units) {
            ModMatrix r = pb.forward(rep, u);
            IntMatrix s = IntMatrix::Zero(n, d);
            s.rightCols(n) = modring::mat_inv_mod(u).m;
            hist.add(mod_pos(dot_mod(freq_n, r.m, q) + dot_mod(freq_m, s, q), q));
        }
    return hist.value() / double(prim::primitive_count(d, n, q));
}

// ---------------------------------------------------------------------------
// Hecke points (d = 2)
// ---------------------------------------------------------------------------

Complex reduce_fundamental(Complex z, int max_iter, double tol) {
    if (z.imag() <= 0) throw PreconditionViolated("point must lie in the upper half-plane");
    for (int it = 0; it < max_iter; ++it) {
        double shift = std::round(z.real());
        z -= shift;
        if (std::norm(z) < 1.0 - tol) {
            z = -1.0 / z;
            continue;
        }
        if (std::abs(z.real()) <= 0.5 + tol && std::norm(z) >= 1.0 - tol) return z;
    }
    throw PreconditionViolated("fundamental-domain reduction did not converge");
}

HeckeOrbit hecke_points(i64 m, Complex z) {
    if (m < 1) throw PreconditionViolated("m must be positive");
    HeckeOrbit orbit{m, z, {}};
    for (i64 a : modring::divisors(m)) {
        i64 c = m / a;
        for (i64 b = 0; b < c; ++b) orbit.points.push_back(reduce_fundamental((double(a) * z + double(b)) / double(c)));
    }
    return orbit;
}

SurfaceFn indicator_y_gt(double c) {
    return {[c](double, double y) { return y > c ? 1.0 : 0.0; }, 1.0, c};
}

SurfaceFn smooth_bump(double x0, double y0, double radius) {
    return {[=](double x, double y) {
                double r2 = ((x - x0) * (x - x0) + (y - y0) * (y - y0)) / (radius * radius);
                return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) * std::exp(1.0) : 0.0;
            },
            0.0, y0 + radius};
}

SurfaceFn y_power_truncated(double s, double ymax) {
    return {[=](double, double y) { return y <= ymax ? std::pow(y, s) : 0.0; }, 0.0, ymax};
}

double hecke_average(const SurfaceFn& phi, i64 m, Complex z) {
    HeckeOrbit orbit = hecke_points(m, z);
    double sum = 0;
    for (Complex w : orbit.points) sum += phi.f(w.real(), w.imag());
    return sum / double(orbit.points.size());
}

double hecke_dq_average(const SurfaceFn& phi, i64 q, Complex z) {
    // T_{D_q} = (q prod_{p|q}(1 + 1/p))^{-1} sum_{a^2 | q} mu(a) sigma_1(q/a^2) T_{q/a^2}
    double norm = double(q);
    for (auto [p, e] : modring::factorize(q)) {
        (void)e;
        norm *= 1.0 + 1.0 / double(p);
    }
    double acc = 0;
    for (i64 a = 1; a * a <= q; ++a) {
        if (q % (a * a) != 0) continue;
        int mu = modring::moebius(a);
        if (mu == 0) continue;
        i64 m = q / (a * a);
        acc += double(mu) * double(modring::sigma1(m)) * hecke_average(phi, m, z);
    }
    return acc / norm;
}

namespace {

// adaptive Gauss-Legendre (7-point) with interval bisection
double gl7(const std::function<double(double)>& f, double a, double b) {
    static const double xs[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
                                 0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
    static const double ws[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
                                 0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 7; ++i) s += ws[i] * f(mid + half * xs[i]);
    return s * half;
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    double whole = gl7(f, a, b);
    double mid = 0.5 * (a + b);
    double split = gl7(f, a, mid) + gl7(f, mid, b);
    if (std::abs(whole - split) < tol || depth > 40) return split;
    return adaptive(f, a, mid, tol / 2, depth + 1) + adaptive(f, mid, b, tol / 2, depth + 1);
}

}  // namespace

double mu0_mean(const SurfaceFn& phi, double tol) {
    const double ymax = std::max(2.0, phi.tail_from);
    auto outer = [&](double x) {
        double y0 = std::sqrt(std::max(0.0, 1.0 - x * x));
        auto inner = [&](double y) { return phi.f(x, y) / (y * y); };
        return adaptive(inner, y0, ymax, tol / 4, 0);
    };
    double bulk = adaptive(outer, -0.5, 0.5, tol / 4, 0);
    double tail = phi.tail_limit / ymax;  // integral of tail_limit * y^{-2} over y > ymax, unit x-width
    return (bulk + tail) * 3.0 / M_PI;
}

std::vector<WeylScanRow> weyl_decay_scan(int d, int n, const std::vector<i64>& qs, i64 mode_bound, u64 cap) {
    std::vector<WeylScanRow> rows;
    for (i64 q : qs) {
        if (q < 2) continue;
        WeylScanRow row;
        row.q = q;
        IntMatrix mode(d, n);
        std::function<void(int)> scan = [&](int idx) {
            if (idx == d * n) {
                if (mode.isZero()) return;
                Complex v = (n == 1 && q > 50) ? weyl_sum_formula_n1(d, q, mode) : weyl_sum(d, n, q, mode, cap);
                row.max_abs = std::max(row.max_abs, std::abs(v));
                return;
            }
            for (i64 c = -mode_bound; c <= mode_bound; ++c) {
                mode(idx / n, idx % n) = c;
                scan(idx + 1);
            }
        };
        scan(0);
        double tau = double(modring::divisors(q).size());
        row.envelope = 2.0 * tau * std::sqrt(double(q)) / double(modring::euler_phi(q));
        row.envelope_ok = (n != 1) || (row.max_abs <= row.envelope * (1 + 1e-9));
        rows.push_back(row);
    }
    return rows;
}

DecayTarget fit_decay(const std::vector<DecayPoint>& pts, double predicted_exponent, double eps, double slack) {
    DecayTarget out;
    out.vartheta = predicted_exponent;
    out.eps = eps;
    out.slack = slack;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& p : pts) {
        if (p.value <= 0 || p.x <= 0) continue;
        double lx = std::log(p.x), ly = std::log(p.value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw PreconditionViolated("need at least two positive points for a slope fit");
    double denom = m * sxx - sx * sx;
    out.slope = (m * sxy - sx * sy) / denom;
    double intercept = (sy - out.slope * sx) / m;
    out.fitted_constant = std::exp(intercept);
    double ss = 0;
    for (const auto& p : pts) {
        if (p.value <= 0 || p.x <= 0) continue;
        double e = std::log(p.value) - (intercept + out.slope * std::log(p.x));
        ss += e * e;
    }
    out.residual = std::sqrt(ss / m);
    out.pass = out.slope <= -(predicted_exponent - eps - slack);
    return out;
}

}  // namespace horolab::horo
