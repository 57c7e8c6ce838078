#include "horolab/modring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace horolab::modring {

std::vector<std::pair<i64, int>> factorize(i64 n) {
    // hot in matrix constructors: memoize small moduli per thread
    thread_local std::map<i64, std::vector<std::pair<i64, int>>> cache;
    if (n <= 100000) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    const i64 orig = n;
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    if (orig <= 100000) cache[orig] = out;
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk = checked_mul(pk, p);
            for (std::size_t i = 0; i < base; ++i) out.push_back(checked_mul(out[i], pk));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod_pos(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    if (b == 0) return {a >= 0 ? a : -a, a >= 0 ? 1 : -1, 0};
    i64 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 qt = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - qt * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {r0, s0, t0};
}

i64 inv_mod(i64 a, i64 q) {
    a = mod_pos(a, q);
    auto [g, x, y] = ext_gcd(a, q);
    (void)y;
    if (g != 1) throw NotInvertible("element has no inverse mod q");
    return mod_pos(x, q);
}

int moebius(i64 n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

i64 sigma1(i64 n) {
    i64 s = 0;
    for (i64 d : divisors(n)) s = checked_add(s, d);
    return s;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r = r / p * (p - 1);
    }
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<bool> sieve(std::size_t(std::max<i64>(n + 1, 2)), true);
    sieve[0] = sieve[1] = false;
    for (i64 p = 2; p * p <= n; ++p)
        if (sieve[std::size_t(p)])
            for (i64 k = p * p; k <= n; k += p) sieve[std::size_t(k)] = false;
    std::vector<i64> out;
    for (i64 p = 2; p <= n; ++p)
        if (sieve[std::size_t(p)]) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------

ModMatrix mat_mul_mod(const ModMatrix& a, const ModMatrix& b) {
    if (a.q() != b.q() || a.cols() != b.rows()) throw PreconditionViolated("matmul shape/modulus mismatch");
    IntMatrix r = IntMatrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            i128 acc = 0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) acc += i128(a.m(i, k)) * i128(b.m(k, j));
            r(i, j) = i64(acc % a.q());
        }
    return ModMatrix(r, a.q());
}

ModMatrix mat_add_mod(const ModMatrix& a, const ModMatrix& b) {
    if (a.q() != b.q()) throw PreconditionViolated("modulus mismatch");
    return ModMatrix(a.m + b.m, a.q());
}

ModMatrix scalar_mul_mod(i64 c, const ModMatrix& a) {
    c = mod_pos(c, a.q());
    IntMatrix r = a.m;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = i64((i128(r(i, j)) * c) % a.q());
    return ModMatrix(r, a.q());
}

ModMatrix reduce_mod(const IntMatrix& a, i64 q) { return ModMatrix(a, q); }

ModMatrix transpose(const ModMatrix& a) { return ModMatrix(a.m.transpose().eval(), a.q()); }

i64 trace_mod(const ModMatrix& a) {
    i64 t = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) t = mod_pos(t + a.m(i, i), a.q());
    return t;
}

// Bareiss fraction-free elimination; exact for the matrix sizes in play
// (dimension <= 12, entries bounded by the moduli and SL lifts we produce).
i128 det_exact(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw PreconditionViolated("determinant of non-square matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    if (n == 2) return checked_mul128(a(0, 0), a(1, 1)) - checked_mul128(a(0, 1), a(1, 0));
    if (n == 3)
        return checked_mul128(a(0, 0), checked_mul128(a(1, 1), a(2, 2)) - checked_mul128(a(1, 2), a(2, 1))) -
               checked_mul128(a(0, 1), checked_mul128(a(1, 0), a(2, 2)) - checked_mul128(a(1, 2), a(2, 0))) +
               checked_mul128(a(0, 2), checked_mul128(a(1, 0), a(2, 1)) - checked_mul128(a(1, 1), a(2, 0)));
    if (n > 12) throw DimensionTooLarge("determinant supported up to dimension 12");
    i128 w[144];
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) w[std::size_t(i * n + j)] = a(i, j);
    i128 prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (w[std::size_t(k * n + k)] == 0) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (w[std::size_t(i * n + k)] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (Eigen::Index j = 0; j < n; ++j) std::swap(w[std::size_t(k * n + j)], w[std::size_t(piv * n + j)]);
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) {
                i128 num = checked_mul128(w[std::size_t(i * n + j)], w[std::size_t(k * n + k)]) -
                           checked_mul128(w[std::size_t(i * n + k)], w[std::size_t(k * n + j)]);
                w[std::size_t(i * n + j)] = num / prev;
            }
        prev = w[std::size_t(k * n + k)];
    }
    return sign > 0 ? w[std::size_t((n - 1) * n + (n - 1))] : -w[std::size_t((n - 1) * n + (n - 1))];
}

i64 det_mod(const ModMatrix& a) {
    i128 d = det_exact(a.m);
    i128 q = a.q();
    i128 r = d % q;
    if (r < 0) r += q;
    return i64(r);
}

namespace {

i128 minor_det(const IntMatrix& a, Eigen::Index skip_row, Eigen::Index skip_col) {
    const Eigen::Index n = a.rows();
    IntMatrix sub(n - 1, n - 1);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == skip_row) continue;
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == skip_col) continue;
            sub(r, c++) = a(i, j);
        }
        ++r;
    }
    return det_exact(sub);
}

}  // namespace

ModMatrix mat_inv_mod(const ModMatrix& a) {
    if (a.rows() != a.cols()) throw PreconditionViolated("inverse of non-square matrix");
    const Eigen::Index n = a.rows();
    const i64 q = a.q();
    i64 det = det_mod(a);
    i64 dinv;
    try {
        dinv = inv_mod(det, q);
    } catch (const NotInvertible&) {
        throw NotInvertible("determinant is not a unit mod q");
    }
    IntMatrix inv(n, n);
    if (n == 1) {
        inv(0, 0) = dinv;
        return ModMatrix(inv, q);
    }
    if (n == 2) {
        const auto& m = a.m;
        inv(0, 0) = i64((i128(m(1, 1)) * dinv) % q);
        inv(0, 1) = mod_pos(i64((i128(-m(0, 1)) * dinv) % q), q);
        inv(1, 0) = mod_pos(i64((i128(-m(1, 0)) * dinv) % q), q);
        inv(1, 1) = i64((i128(m(0, 0)) * dinv) % q);
        return ModMatrix(inv, q);
    }
    if (n == 3) {
        const auto& m = a.m;
        auto cof2 = [&](Eigen::Index r0, Eigen::Index r1, Eigen::Index c0, Eigen::Index c1) {
            return i128(m(r0, c0)) * m(r1, c1) - i128(m(r0, c1)) * m(r1, c0);
        };
        static const Eigen::Index other[3][2] = {{1, 2}, {0, 2}, {0, 1}};
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j) {
                i128 cof = cof2(other[j][0], other[j][1], other[i][0], other[i][1]);
                if (((i + j) & 1) != 0) cof = -cof;
                i128 r = cof % q;
                if (r < 0) r += q;
                inv(i, j) = i64((r * dinv) % q);
            }
        return ModMatrix(inv, q);
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            i128 cof = minor_det(a.m, j, i);
            if (((i + j) & 1) != 0) cof = -cof;
            i128 r = cof % q;
            if (r < 0) r += q;
            inv(i, j) = i64((r * dinv) % q);
        }
    return ModMatrix(inv, q);
}

int rank_mod_p(const IntMatrix& a, i64 p) {
    if (!is_prime(p)) throw PreconditionViolated("rank_mod_p needs a prime modulus");
    const Eigen::Index rows = a.rows(), cols = a.cols();
    IntMatrix w(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = mod_pos(a(i, j), p);
    int rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < rows; ++i)
            if (w(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        w.row(row).swap(w.row(piv));
        i64 pinv = inv_mod(w(row, col), p);
        for (Eigen::Index j = col; j < cols; ++j) w(row, j) = i64((i128(w(row, j)) * pinv) % p);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == row || w(i, col) == 0) continue;
            i64 f = w(i, col);
            for (Eigen::Index j = col; j < cols; ++j) w(i, j) = mod_pos(w(i, j) - i64((i128(f) * w(row, j)) % p), p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

int rank_exact(const IntMatrix& a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<i128> w(std::size_t(rows * cols));
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) w[std::size_t(i * cols + j)] = a(i, j);
    auto at = [&](Eigen::Index i, Eigen::Index j) -> i128& { return w[std::size_t(i * cols + j)]; };
    int rank = 0;
    Eigen::Index row = 0;
    i128 prev = 1;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < rows; ++i)
            if (at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (Eigen::Index j = 0; j < cols; ++j) std::swap(at(row, j), at(piv, j));
        for (Eigen::Index i = row + 1; i < rows; ++i) {
            for (Eigen::Index j = col + 1; j < cols; ++j)
                at(i, j) = (checked_mul128(at(i, j), at(row, col)) - checked_mul128(at(i, col), at(row, j))) / prev;
            at(i, col) = 0;
        }
        prev = at(row, col);
        ++row;
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Smith normal form with transform tracking
// ---------------------------------------------------------------------------

namespace {

void row_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, i64 c) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(dst, j) = checked_add(m(dst, j), checked_mul(c, m(src, j)));
}
void col_axpy(IntMatrix& m, Eigen::Index dst, Eigen::Index src, i64 c) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, dst) = checked_add(m(i, dst), checked_mul(c, m(i, src)));
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::Identity(rows, rows);
    IntMatrix v = IntMatrix::Identity(cols, cols);
    const Eigen::Index t = std::min(rows, cols);

    for (Eigen::Index k = 0; k < t; ++k) {
        for (;;) {
            // move a nonzero pivot of minimal magnitude into position (k, k)
            Eigen::Index pi = -1, pj = -1;
            i64 best = 0;
            for (Eigen::Index i = k; i < rows; ++i)
                for (Eigen::Index j = k; j < cols; ++j) {
                    i64 x = d(i, j) < 0 ? -d(i, j) : d(i, j);
                    if (x != 0 && (pi < 0 || x < best)) {
                        best = x;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;  // block is zero
            if (pi != k) {
                d.row(k).swap(d.row(pi));
                u.row(k).swap(u.row(pi));
            }
            if (pj != k) {
                d.col(k).swap(d.col(pj));
                v.col(k).swap(v.col(pj));
            }
            bool clean = true;
            for (Eigen::Index i = k + 1; i < rows; ++i)
                if (d(i, k) != 0) {
                    i64 qt = d(i, k) / d(k, k);
                    if (qt != 0) {
                        row_axpy(d, i, k, -qt);
                        row_axpy(u, i, k, -qt);
                    }
                    if (d(i, k) != 0) clean = false;
                }
            for (Eigen::Index j = k + 1; j < cols; ++j)
                if (d(k, j) != 0) {
                    i64 qt = d(k, j) / d(k, k);
                    if (qt != 0) {
                        col_axpy(d, j, k, -qt);
                        col_axpy(v, j, k, -qt);
                    }
                    if (d(k, j) != 0) clean = false;
                }
            if (!clean) continue;
            // pivot must divide every entry of the remaining block
            bool divides = true;
            for (Eigen::Index i = k + 1; i < rows && divides; ++i)
                for (Eigen::Index j = k + 1; j < cols && divides; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        row_axpy(d, k, i, 1);
                        row_axpy(u, k, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
    }
    // positive diagonal
    for (Eigen::Index k = 0; k < t; ++k)
        if (d(k, k) < 0) {
            d.row(k) = -d.row(k);
            u.row(k) = -u.row(k);
        }
    return {u, v, d};
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    const Eigen::Index rows = h.rows(), cols = h.cols();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        // gcd the column entries below `row` into the pivot slot
        for (;;) {
            Eigen::Index piv = -1;
            i64 best = 0;
            for (Eigen::Index i = row; i < rows; ++i) {
                i64 x = h(i, col) < 0 ? -h(i, col) : h(i, col);
                if (x != 0 && (piv < 0 || x < best)) {
                    best = x;
                    piv = i;
                }
            }
            if (piv < 0) break;
            if (piv != row) h.row(row).swap(h.row(piv));
            bool done = true;
            for (Eigen::Index i = row + 1; i < rows; ++i)
                if (h(i, col) != 0) {
                    i64 qt = h(i, col) / h(row, col);
                    if (qt != 0) row_axpy(h, i, row, -qt);
                    if (h(i, col) != 0) done = false;
                }
            if (done) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) h.row(row) = -h.row(row);
        for (Eigen::Index i = 0; i < row; ++i) {
            i64 qt = h(i, col) / h(row, col);
            if (h(i, col) % h(row, col) < 0) qt -= 1;  // floor division
            if (qt != 0) row_axpy(h, i, row, -qt);
        }
        ++row;
    }
    return h;
}

// ---------------------------------------------------------------------------
// GL_n(Z/qZ)
// ---------------------------------------------------------------------------

i64 count_gl(int n, i64 q) {
    i128 count = checked_pow128(q, n * n);
    for (auto [p, e] : factorize(q)) {
        (void)e;
        for (int j = 1; j <= n; ++j) {
            i128 pj = checked_pow128(p, j);
            count = count / pj * (pj - 1);
        }
    }
    return checked_narrow(count);
}

GlEnumerator::GlEnumerator(int n, i64 q, u64 cap) : n_(n), q_(q) {
    i128 total = 1;
    for (int i = 0; i < n * n; ++i) {
        total *= q;
        if (total > i128(cap)) throw EnumerationTooLarge("q^(n^2) exceeds the enumeration cap");
    }
    total_ = u64(total);
}

std::optional<ModMatrix> GlEnumerator::next() {
    while (index_ < total_) {
        u64 code = index_++;
        IntMatrix m(n_, n_);
        // row-major lexicographic: the last entry varies fastest
        for (int i = n_ * n_ - 1; i >= 0; --i) {
            m(i / n_, i % n_) = i64(code % u64(q_));
            code /= u64(q_);
        }
        ModMatrix cand(m, q_);
        if (gcd_i64(det_mod(cand), q_) == 1) return cand;
    }
    return std::nullopt;
}

GlTable enumerate_gl_table(int n, i64 q, u64 cap) {
    GlTable table;
    table.q = q;
    table.n = n;
    GlEnumerator en(n, q, cap);
    while (auto x = en.next()) {
        table.x.push_back(x->m);
        table.xinv.push_back(mat_inv_mod(*x).m);
    }
    return table;
}

// ---------------------------------------------------------------------------
// SL lift
// ---------------------------------------------------------------------------

namespace {

struct Elementary {
    Eigen::Index i, j;
    i64 c;  // row_i += c * row_j (left action)
};

}  // namespace

IntMatrix lift_sl(const ModMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionViolated("lift_sl needs a square matrix");
    const Eigen::Index n = m.rows();
    const i64 q = m.q();
    if (det_mod(m) != 1 % q) throw NotSpecialLinear("determinant is not 1 mod q");
    if (q == 1) return IntMatrix::Identity(n, n);

    // Row-reduce a working copy to diag(u_1, ..., u_n) by elementary ops
    // E_{ij}(c), c taken mod q.  Then m = E_1^{-1} ... E_k^{-1} diag(u) mod q.
    IntMatrix w = m.m;
    std::vector<Elementary> ops;  // in application order
    auto waxpy = [&](Eigen::Index i, Eigen::Index j, i64 c) {
        c = mod_pos(c, q);
        if (c == 0) return;
        for (Eigen::Index col = 0; col < n; ++col) w(i, col) = mod_pos(w(i, col) + i64((i128(c) * w(j, col)) % q), q);
        ops.push_back({i, j, c});
    };

    for (Eigen::Index col = 0; col < n; ++col) {
        for (;;) {
            // Euclid on the canonical lifts of column `col`, rows >= col
            Eigen::Index piv = -1;
            for (Eigen::Index i = col; i < n; ++i)
                if (w(i, col) != 0 && (piv < 0 || w(i, col) < w(piv, col))) piv = i;
            if (piv < 0) throw NotSpecialLinear("singular column during reduction");
            bool lone = true;
            for (Eigen::Index i = col; i < n; ++i) {
                if (i == piv || w(i, col) == 0) continue;
                waxpy(i, piv, -(w(i, col) / w(piv, col)));
                if (w(i, col) != 0) lone = false;
            }
            if (!lone) continue;
            if (piv != col) {
                // swap rows piv <-> col as three elementary ops; the stray
                // sign ends up in the diagonal unit
                waxpy(col, piv, 1);
                waxpy(piv, col, -1);
                waxpy(col, piv, 1);
            }
            // the surviving pivot divides a unit (det expansion), so it is one
            i64 pinv = inv_mod(w(col, col), q);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i == col || w(i, col) == 0) continue;
                waxpy(i, col, -i64((i128(w(i, col)) * pinv) % q));
            }
            break;
        }
    }

    // gamma = E_1^{-1} * ... * E_k^{-1} * lifted-diagonal, built by right
    // multiplications; E_{ij}(c)^{-1} = E_{ij}(-c) lifts verbatim to Z.
    IntMatrix lift = IntMatrix::Identity(n, n);
    auto rmul_elem = [&](Eigen::Index i, Eigen::Index j, i64 c) {
        // lift <- lift * E_{ij}(c): col_j += c * col_i
        if (c == 0) return;
        for (Eigen::Index r = 0; r < n; ++r) lift(r, j) = checked_add(lift(r, j), checked_mul(c, lift(r, i)));
    };
    for (const auto& op : ops) rmul_elem(op.i, op.j, -op.c);

    // diag(u_1,...,u_n) with prod u_i = 1 mod q telescopes into adjacent
    // diag(v, v^{-1}) blocks, each lifted by the four-elementary identity
    //   diag(v, v^{-1}) = E12(v) E21(-v^{-1}) E12(v) E21(1) E12(-1) E21(1).
    i64 prod = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        prod = i64((i128(prod) * w(k, k)) % q);
        i64 v = prod, vinv = inv_mod(prod, q);
        rmul_elem(k, k + 1, v);
        rmul_elem(k + 1, k, -vinv);
        rmul_elem(k, k + 1, v);
        rmul_elem(k + 1, k, 1);
        rmul_elem(k, k + 1, -1);
        rmul_elem(k + 1, k, 1);
    }

    if (det_exact(lift) != 1) throw NotSpecialLinear("internal: lift lost unimodularity");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (mod_pos(lift(i, j), q) != m.m(i, j)) throw NotSpecialLinear("internal: lift does not reduce to the input");
    return lift;
}

}  // namespace horolab::modring
