#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "horolab/checked.hpp"
#include "horolab/errors.hpp"

namespace horolab::modring {

// Dense exact-integer matrix; every product that can grow is routed through
// 128-bit checked helpers rather than Eigen's operator*.
using IntMatrix = Eigen::Matrix<i64, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<i64, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// elementary number theory
// ---------------------------------------------------------------------------

std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
i64 gcd_i64(i64 a, i64 b);
i64 mod_pos(i64 a, i64 q);
// returns (g, x, y) with a*x + b*y = g = gcd(a, b)
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);
i64 inv_mod(i64 a, i64 q);  // throws NotInvertible
int moebius(i64 n);
i64 sigma1(i64 n);
i64 euler_phi(i64 n);
bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 n);

struct Modulus {
    i64 q;
    std::vector<std::pair<i64, int>> factors;  // sorted by prime, product reconstructs q

    explicit Modulus(i64 modulus) : q(modulus), factors(factorize(modulus)) {
        if (modulus < 1) throw PreconditionViolated("modulus must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// matrices over Z/qZ
// ---------------------------------------------------------------------------

// Entries are kept as canonical residues in [0, q).
struct ModMatrix {
    Modulus mod;
    IntMatrix m;

    ModMatrix(const IntMatrix& entries, i64 q) : mod(q), m(entries) {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = mod_pos(m(i, j), q);
    }
    ModMatrix(Eigen::Index rows, Eigen::Index cols, i64 q) : mod(q), m(IntMatrix::Zero(rows, cols)) {}

    i64 q() const { return mod.q; }
    Eigen::Index rows() const { return m.rows(); }
    Eigen::Index cols() const { return m.cols(); }

    static ModMatrix identity(Eigen::Index n, i64 q) { return ModMatrix(IntMatrix::Identity(n, n), q); }

    bool operator==(const ModMatrix& o) const { return q() == o.q() && m == o.m; }
};

ModMatrix mat_mul_mod(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_add_mod(const ModMatrix& a, const ModMatrix& b);
ModMatrix scalar_mul_mod(i64 c, const ModMatrix& a);
ModMatrix reduce_mod(const IntMatrix& a, i64 q);
ModMatrix transpose(const ModMatrix& a);
i64 trace_mod(const ModMatrix& a);

// determinant of an integer matrix, exact (fraction-free elimination)
i128 det_exact(const IntMatrix& a);
i64 det_mod(const ModMatrix& a);

// adjugate-based inverse; throws NotInvertible when det is not a unit mod q
ModMatrix mat_inv_mod(const ModMatrix& a);

int rank_mod_p(const IntMatrix& a, i64 p);
inline int rank_mod_p(const ModMatrix& a, i64 p) { return rank_mod_p(a.m, p); }

// rank over Q, fraction-free elimination
int rank_exact(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Smith / Hermite normal forms over Z
// ---------------------------------------------------------------------------

struct SnfResult {
    IntMatrix u, v, d;  // u*a*v = d, |det u| = |det v| = 1, d diagonal with d1 | d2 | ...
};

SnfResult smith_normal_form(const IntMatrix& a);

// row-style Hermite normal form (canonical basis of the row lattice):
// echelon rows, positive pivots, entries above each pivot reduced into [0, pivot)
IntMatrix hermite_normal_form(const IntMatrix& a);

// ---------------------------------------------------------------------------
// GL_n(Z/qZ)
// ---------------------------------------------------------------------------

inline constexpr u64 kDefaultEnumCap = 100'000'000ull;

// #GL_n(Z/qZ) = q^{n^2} prod_{p|q} prod_{j=1..n} (1 - p^{-j}), exact
i64 count_gl(int n, i64 q);

// Streams the invertible matrices in row-major lexicographic order over all
// q^{n^2} candidates. Cloneable; advancing one copy does not affect another.
class GlEnumerator {
  public:
    GlEnumerator(int n, i64 q, u64 cap = kDefaultEnumCap);

    std::optional<ModMatrix> next();
    u64 candidate_count() const { return total_; }

  private:
    int n_;
    i64 q_;
    u64 total_;
    u64 index_ = 0;
};

// materialized enumeration: every X together with X^{-1} mod q
struct GlTable {
    std::vector<IntMatrix> x, xinv;
    i64 q;
    int n;
};
GlTable enumerate_gl_table(int n, i64 q, u64 cap = kDefaultEnumCap);

// constructive lift to SL_n(Z): elementary-matrix factorization over Z/qZ,
// each factor lifted verbatim; throws NotSpecialLinear when det != 1 mod q
IntMatrix lift_sl(const ModMatrix& m);

}  // namespace horolab::modring
