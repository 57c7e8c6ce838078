#include "horolab/primitive.hpp"

#include <algorithm>
#include <cmath>

namespace horolab::prim {

using modring::det_exact;
using modring::gcd_i64;
using modring::hermite_normal_form;
using modring::mod_pos;
using modring::rank_mod_p;
using modring::smith_normal_form;

bool is_primitive(const ModMatrix& r) {
    const int n = int(r.cols());
    for (auto [p, e] : r.mod.factors) {
        (void)e;
        if (rank_mod_p(r, p) != n) return false;
    }
    return true;
}

i64 primitive_count(int d, int n, i64 q) {
    i128 count = checked_pow128(q, d * n);
    for (auto [p, e] : modring::factorize(q)) {
        (void)e;
        for (int j = d + 1 - n; j <= d; ++j) {
            i128 pj = checked_pow128(p, j);
            count = count / pj * (pj - 1);
        }
    }
    return checked_narrow(count);
}

void for_each_primitive(int d, int n, i64 q, const std::function<void(const ModMatrix&)>& fn, u64 cap) {
    i128 total = 1;
    for (int i = 0; i < d * n; ++i) {
        total *= q;
        if (total > i128(cap)) throw EnumerationTooLarge("q^(dn) exceeds the enumeration cap");
    }
    IntMatrix m(d, n);
    for (u64 code = 0; code < u64(total); ++code) {
        u64 c = code;
        for (int i = d * n - 1; i >= 0; --i) {
            m(i / n, i % n) = i64(c % u64(q));
            c /= u64(q);
        }
        ModMatrix r(m, q);
        if (is_primitive(r)) fn(r);
    }
}

i64 primitive_count_enumerated(int d, int n, i64 q, u64 cap) {
    i64 count = 0;
    for_each_primitive(d, n, q, [&](const ModMatrix&) { ++count; }, cap);
    return count;
}

namespace {

IntMatrix exact_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            i128 acc = 0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) acc += checked_mul128(a(i, k), b(k, j));
            r(i, j) = checked_narrow(acc);
        }
    return r;
}

}  // namespace

SolutionLattice solve_congruence_lattice(const ModMatrix& r) {
    if (!is_primitive(r)) throw NotPrimitive("rows of R do not generate");
    const int d = int(r.rows()), n = int(r.cols());
    const i64 q = r.q();
    SolutionLattice out;

    // stack M = [R'; q I_n]; row kernel and e_j-preimages both come from its SNF
    IntMatrix m(d + n, n);
    m.topRows(d) = r.m;
    m.bottomRows(n) = q * IntMatrix::Identity(n, n);
    auto snf = smith_normal_form(m);

    if (n == d) {
        out.kernel = q * IntMatrix::Identity(d, d);
        out.kernel_compl = -r.m;
    } else {
        // z M = 0 iff z = w U with the first n coordinates of w zero
        out.kernel = snf.u.block(n, 0, d, d);
        out.kernel_compl = snf.u.block(n, d, d, n);
        i128 det = det_exact(out.kernel);
        if (det == -checked_pow128(q, n)) {
            out.kernel.row(0) = -out.kernel.row(0);
            out.kernel_compl.row(0) = -out.kernel_compl.row(0);
            det = -det;
        }
        if (det != checked_pow128(q, n)) throw NotPrimitive("internal: kernel index mismatch");
    }

    // z_j M = e_j: solvable with all invariant factors 1 (primitivity)
    for (int i = 0; i < n; ++i)
        if (snf.d(i, i) != 1) throw NotPrimitive("internal: invariant factor > 1 for a primitive R");
    out.shift_rows = IntMatrix(n, d);
    out.shift_compl = IntMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        // w = e_j V, then z = (w, 0) U
        IntMatrix w = IntMatrix::Zero(1, d + n);
        for (int i = 0; i < n; ++i) w(0, i) = snf.v(j, i);
        IntMatrix z = exact_mul(w, snf.u);
        out.shift_rows.row(j) = z.block(0, 0, 1, d);
        out.shift_compl.row(j) = z.block(0, d, 1, n);
    }
    return out;
}

IntMatrix unimodular_inverse(const IntMatrix& g) {
    const Eigen::Index n = g.rows();
    i128 det = det_exact(g);
    if (det != 1 && det != -1) throw PreconditionViolated("matrix is not unimodular");
    IntMatrix inv(n, n);
    if (n == 1) {
        inv(0, 0) = i64(det);
        return inv;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            IntMatrix sub(n - 1, n - 1);
            Eigen::Index rr = 0;
            for (Eigen::Index a = 0; a < n; ++a) {
                if (a == j) continue;
                Eigen::Index cc = 0;
                for (Eigen::Index b = 0; b < n; ++b) {
                    if (b == i) continue;
                    sub(rr, cc++) = g(a, b);
                }
                ++rr;
            }
            i128 cof = det_exact(sub);
            if (((i + j) & 1) != 0) cof = -cof;
            inv(i, j) = checked_narrow(det > 0 ? cof : -cof);
        }
    return inv;
}

IntMatrix complete_to_sl(const ModMatrix& r) {
    const int d = int(r.rows()), n = int(r.cols());
    SolutionLattice sol = solve_congruence_lattice(r);  // throws NotPrimitive

    IntMatrix eta(d + n, d + n);
    eta.block(0, 0, d, d) = sol.kernel;
    eta.block(0, d, d, n) = sol.kernel_compl;
    eta.block(d, 0, n, d) = sol.shift_rows;
    eta.block(d, d, n, n) = sol.shift_compl;
    if (det_exact(eta) != 1) throw NotPrimitive("internal: completion not special linear");
    return eta;
}

// ---------------------------------------------------------------------------
// coset representatives and the parametrization
// ---------------------------------------------------------------------------

namespace {

// gamma in SL_d(Z) with gamma * R' = (0; T) mod q, T invertible mod q
IntMatrix completion_gamma(const ModMatrix& r) {
    const int d = int(r.rows()), n = int(r.cols());
    const i64 q = r.q();
    auto snf = smith_normal_form(r.m);  // u r v = diag(s_1..s_n; 0)
    // reverse the rows to move the zero block on top
    IntMatrix w(d, d);
    for (int i = 0; i < d; ++i) w.row(i) = snf.u.row(d - 1 - i);
    if (det_exact(w) == -1) w.row(0) = -w.row(0);  // d > n: row 0 is in the zero block
    // sanity: top (d-n) x n block of w * R' vanishes mod q, bottom is a unit
    IntMatrix prod = exact_mul(w, r.m);
    for (int i = 0; i < d - n; ++i)
        for (int j = 0; j < n; ++j)
            if (mod_pos(prod(i, j), q) != 0) throw NotPrimitive("internal: completion top block nonzero");
    ModMatrix t(prod.bottomRows(n), q);
    if (gcd_i64(modring::det_mod(t), q) != 1) throw NotPrimitive("internal: completion bottom block singular");
    return w;
}

// canonical label of the orbit of R under right GL_n multiplication:
// the Hermite form of the solution kernel {x : x R = 0 mod q}
std::vector<i64> orbit_key(const ModMatrix& r) {
    SolutionLattice sol = solve_congruence_lattice(r);
    IntMatrix h = hermite_normal_form(sol.kernel);
    std::vector<i64> key;
    key.reserve(std::size_t(h.size()));
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j) key.push_back(h(i, j));
    return key;
}

}  // namespace

ParamBijection::ParamBijection(int d, int n, i64 q, u64 cap) : d_(d), n_(n), q_(q) {
    if (n > d) throw PreconditionViolated("need n <= d");
    if (n == d || q == 1) {
        reps_.push_back({0, IntMatrix::Identity(d, d)});
        // single orbit; its kernel lattice is q Z^d (n = d) or Z^d (q = 1)
        IntMatrix kernel = (n == d ? q : 1) * IntMatrix::Identity(d, d);
        std::vector<i64> key;
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) key.push_back(kernel(i, j));
        orbit_to_id_[key] = 0;
        return;
    }
    for_each_primitive(d, n, q, [&](const ModMatrix& r) {
        auto key = orbit_key(r);
        if (orbit_to_id_.count(key)) return;
        i64 id = i64(reps_.size());
        orbit_to_id_[key] = id;
        reps_.push_back({id, completion_gamma(r)});
    }, cap);
}

ModMatrix ParamBijection::forward(const CosetRep& rep, const ModMatrix& u) const {
    if (u.rows() != n_ || u.cols() != n_ || u.q() != q_) throw PreconditionViolated("U shape/modulus mismatch");
    if (gcd_i64(modring::det_mod(u), q_) != 1) throw PreconditionViolated("U must be invertible mod q");
    IntMatrix ginv = unimodular_inverse(rep.gamma);
    IntMatrix block = IntMatrix::Zero(d_, n_);
    block.bottomRows(n_) = u.m;
    return ModMatrix(exact_mul(ginv, block), q_);
}

std::pair<i64, ModMatrix> ParamBijection::inverse(const ModMatrix& r) const {
    if (!is_primitive(r)) throw NotPrimitive("inverse of a non-primitive matrix");
    auto it = orbit_to_id_.find(orbit_key(r));
    if (it == orbit_to_id_.end()) throw NotPrimitive("internal: orbit not catalogued");
    const CosetRep& rep = reps_[std::size_t(it->second)];
    IntMatrix prod = exact_mul(rep.gamma, r.m);
    for (int i = 0; i < d_ - n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (mod_pos(prod(i, j), q_) != 0) throw NotPrimitive("internal: inverse top block nonzero");
    return {it->second, ModMatrix(prod.bottomRows(n_), q_)};
}

std::vector<CosetRep> coset_reps(int d, int n, i64 q, u64 cap) { return ParamBijection(d, n, q, cap).reps(); }

bool check_mtx_relation(const CosetRep& rep, const ModMatrix& u) {
    const int d = int(rep.gamma.rows());
    const int n = int(u.rows());
    const i64 q = u.q();
    // Delta = q^{n/d} D_q = diag(I_{d-n}, q I_n)
    IntMatrix delta = IntMatrix::Identity(d, d);
    for (int i = d - n; i < d; ++i) delta(i, i) = q;

    IntMatrix ginv = unimodular_inverse(rep.gamma);
    IntMatrix block = IntMatrix::Zero(d, n);
    block.bottomRows(n) = u.m;
    IntMatrix rlift = ModMatrix(exact_mul(ginv, block), q).m;  // canonical lift of R

    ModMatrix uinv = modring::mat_inv_mod(u);
    IntMatrix slift = IntMatrix::Zero(n, d);  // canonical lift of S = (0  U^{-1})
    slift.rightCols(n) = uinv.m;

    IntMatrix dg = exact_mul(delta, rep.gamma);       // d x d
    IntMatrix dgr = exact_mul(dg, rlift);             // d x n
    IntMatrix sdg = exact_mul(slift, dg);             // n x d
    IntMatrix sdgr = exact_mul(sdg, rlift);           // n x n

    IntMatrix full(d + n, d + n);
    full.block(0, 0, d, d) = dg;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) {
            if (dgr(i, j) % q != 0) return false;
            full(i, d + j) = -dgr(i, j) / q;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            if (sdg(i, j) % q != 0) return false;
            full(d + i, j) = sdg(i, j) / q;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            i64 num = checked_sub((i == j) ? q : 0, sdgr(i, j));
            if (num % (q * q) != 0) return false;
            full(d + i, d + j) = num / (q * q);
        }
    return det_exact(full) == 1;
}

HoroPoint horosphere_point(const ModMatrix& r) {
    if (!is_primitive(r)) throw NotPrimitive("horosphere points require a primitive R");
    const int d = int(r.rows()), n = int(r.cols());
    const double q = double(r.q());
    const double scale = std::pow(q, -double(n) / double(d));
    Eigen::MatrixXd point = Eigen::MatrixXd::Zero(d + n, d + n);
    for (int i = 0; i < d; ++i) point(i, i) = scale;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) point(i, d + j) = double(r.m(i, j));
    for (int j = 0; j < n; ++j) point(d + j, d + j) = q;

    HoroPoint out{r, point, Eigen::MatrixXd()};
    if (n < d) {
        Eigen::MatrixXd dq = Eigen::MatrixXd::Identity(d, d);
        for (int i = d - n; i < d; ++i) dq(i, i) = q;
        out.dq_block = scale * dq;
    }
    return out;
}

}  // namespace horolab::prim
