#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horolab/modring.hpp"
#include "horolab/rng.hpp"

using namespace horolab;
using namespace horolab::modring;

namespace {

IntMatrix make(std::initializer_list<std::initializer_list<i64>> rows) {
    IntMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (i64 v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix random_int_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, i64 lo, i64 hi) {
    IntMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.next_in(lo, hi);
    return m;
}

// Laplace expansion, independent of the production elimination path
i128 det_oracle(const IntMatrix& a) {
    const Eigen::Index n = a.rows();
    if (n == 1) return a(0, 0);
    i128 s = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        IntMatrix sub(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i) {
            Eigen::Index c = 0;
            for (Eigen::Index k = 0; k < n; ++k)
                if (k != j) sub(i - 1, c++) = a(i, k);
        }
        i128 t = i128(a(0, j)) * det_oracle(sub);
        s += (j % 2 == 0) ? t : -t;
    }
    return s;
}

}  // namespace

TEST_CASE("number theory helpers") {
    CHECK(factorize(12) == std::vector<std::pair<i64, int>>{{2, 2}, {3, 1}});
    CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
    CHECK(euler_phi(12) == 4);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(sigma1(6) == 12);
    CHECK(inv_mod(3, 7) == 5);
    CHECK_THROWS_AS(inv_mod(2, 4), NotInvertible);
    CHECK(primes_up_to(20) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19});
}

TEST_CASE("mat_inv_mod examples") {
    ModMatrix a(make({{1, 1}, {0, 1}}), 7);
    CHECK(mat_inv_mod(a).m == make({{1, 6}, {0, 1}}));

    for (i64 q : {2, 5, 12}) {
        ModMatrix id = ModMatrix::identity(3, q);
        CHECK(mat_inv_mod(id) == id);
    }

    ModMatrix bad(make({{2, 0}, {0, 2}}), 4);
    CHECK_THROWS_AS(mat_inv_mod(bad), NotInvertible);
}

TEST_CASE("mat_inv_mod involution property") {
    Rng rng(11);
    int found = 0;
    while (found < 40) {
        i64 q = rng.next_in(2, 30);
        int n = int(rng.next_in(1, 3));
        ModMatrix m(random_int_matrix(rng, n, n, 0, q - 1), q);
        try {
            ModMatrix inv = mat_inv_mod(m);
            CHECK(mat_mul_mod(m, inv) == ModMatrix::identity(n, q));
            CHECK(mat_mul_mod(inv, m) == ModMatrix::identity(n, q));
            CHECK(mat_inv_mod(inv) == m);
            ++found;
        } catch (const NotInvertible&) {
        }
    }
}

TEST_CASE("rank_mod_p examples") {
    CHECK(rank_mod_p(IntMatrix::Zero(3, 2), 5) == 0);
    CHECK(rank_mod_p(IntMatrix::Identity(4, 4), 3) == 4);
    CHECK(rank_mod_p(make({{1, 2}, {2, 4}}), 5) == 1);  // second row is twice the first
}

TEST_CASE("determinant matches Laplace expansion") {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        int n = int(rng.next_in(1, 5));
        IntMatrix a = random_int_matrix(rng, n, n, -9, 9);
        CHECK(det_exact(a) == det_oracle(a));
    }
}

TEST_CASE("smith_normal_form examples and reconstruction") {
    SUBCASE("diag(2,3) has invariant factors 1, 6") {
        auto s = smith_normal_form(make({{2, 0}, {0, 3}}));
        CHECK(s.d(0, 0) == 1);
        CHECK(s.d(1, 1) == 6);
    }
    SUBCASE("identity") {
        auto s = smith_normal_form(IntMatrix::Identity(3, 3));
        CHECK(s.d == IntMatrix::Identity(3, 3));
    }
    SUBCASE("zero 1x1") {
        auto s = smith_normal_form(IntMatrix::Zero(1, 1));
        CHECK(s.d(0, 0) == 0);
    }
    SUBCASE("random reconstruction, divisibility, rank") {
        Rng rng(7);
        for (int t = 0; t < 60; ++t) {
            Eigen::Index r = rng.next_in(1, 4), c = rng.next_in(1, 4);
            IntMatrix a = random_int_matrix(rng, r, c, -12, 12);
            auto s = smith_normal_form(a);
            i128 du = det_exact(s.u), dv = det_exact(s.v);
            CHECK((du == 1 || du == -1));
            CHECK((dv == 1 || dv == -1));
            IntMatrix prod(r, c);
            // u*a*v via exact products
            IntMatrix ua(r, c);
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = 0; j < c; ++j) {
                    i128 acc = 0;
                    for (Eigen::Index k = 0; k < r; ++k) acc += i128(s.u(i, k)) * a(k, j);
                    ua(i, j) = checked_narrow(acc);
                }
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = 0; j < c; ++j) {
                    i128 acc = 0;
                    for (Eigen::Index k = 0; k < c; ++k) acc += i128(ua(i, k)) * s.v(k, j);
                    prod(i, j) = checked_narrow(acc);
                }
            CHECK(prod == s.d);
            for (Eigen::Index k = 0; k + 1 < std::min(r, c); ++k) {
                if (s.d(k, k) != 0) CHECK(s.d(k + 1, k + 1) % s.d(k, k) == 0);
                else CHECK(s.d(k + 1, k + 1) == 0);
            }
            for (i64 p : {2, 3, 5}) {
                int nz = 0;
                for (Eigen::Index k = 0; k < std::min(r, c); ++k)
                    if (s.d(k, k) % p != 0) ++nz;
                CHECK(rank_mod_p(a, p) == nz);
            }
        }
    }
}

TEST_CASE("hermite_normal_form is a lattice invariant") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        int n = int(rng.next_in(2, 3));
        IntMatrix a = random_int_matrix(rng, n, n, -8, 8);
        if (det_exact(a) == 0) continue;
        // multiply by a random unimodular matrix: same row lattice
        IntMatrix u = IntMatrix::Identity(n, n);
        for (int k = 0; k < 4; ++k) {
            Eigen::Index i = rng.next_in(0, n - 1), j = rng.next_in(0, n - 1);
            if (i == j) continue;
            u.row(i) += rng.next_in(-3, 3) * u.row(j);
        }
        IntMatrix ua(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                i128 acc = 0;
                for (Eigen::Index k = 0; k < n; ++k) acc += i128(u(i, k)) * a(k, j);
                ua(i, j) = checked_narrow(acc);
            }
        CHECK(hermite_normal_form(a) == hermite_normal_form(ua));
    }
}

TEST_CASE("enumerate_gl examples") {
    SUBCASE("(1,5): the four units") {
        GlEnumerator en(1, 5);
        std::vector<i64> units;
        while (auto m = en.next()) units.push_back(m->m(0, 0));
        CHECK(units == std::vector<i64>{1, 2, 3, 4});
    }
    SUBCASE("(2,2): six matrices") {
        GlEnumerator en(2, 2);
        int count = 0;
        while (en.next()) ++count;
        CHECK(count == 6);
    }
    SUBCASE("(2,4): 96 matrices") {
        GlEnumerator en(2, 4);
        int count = 0;
        while (en.next()) ++count;
        CHECK(count == 96);
    }
    SUBCASE("cap enforced") { CHECK_THROWS_AS(GlEnumerator(3, 100), EnumerationTooLarge); }
    SUBCASE("clones advance independently") {
        GlEnumerator a(2, 3);
        a.next();
        GlEnumerator b = a;
        auto x = a.next(), y = b.next();
        REQUIRE(x.has_value());
        REQUIRE(y.has_value());
        CHECK(x->m == y->m);
    }
}

TEST_CASE("count_gl examples, enumeration cross-check, multiplicativity") {
    CHECK(count_gl(1, 12) == 4);
    CHECK(count_gl(2, 2) == 6);
    CHECK(count_gl(2, 3) == 48);

    for (int n = 1; n <= 2; ++n)
        for (i64 q = 1; q <= 16; ++q) {
            GlEnumerator en(n, q);
            i64 count = 0;
            while (en.next()) ++count;
            CHECK(count_gl(n, q) == count);
        }
    for (i64 q : {2, 3}) {
        GlEnumerator en(3, q);
        i64 count = 0;
        while (en.next()) ++count;
        CHECK(count_gl(3, q) == count);
    }

    // multiplicative in coprime factors
    CHECK(count_gl(2, 6) == count_gl(2, 2) * count_gl(2, 3));
    CHECK(count_gl(2, 35) == count_gl(2, 5) * count_gl(2, 7));
    CHECK(count_gl(3, 10) == count_gl(3, 2) * count_gl(3, 5));
}

TEST_CASE("lift_sl examples") {
    SUBCASE("already integral input") {
        ModMatrix m(make({{0, 4}, {1, 0}}), 5);
        IntMatrix g = lift_sl(m);
        CHECK(det_exact(g) == 1);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 2; ++j) CHECK(mod_pos(g(i, j), 5) == m.m(i, j));
    }
    SUBCASE("identity lifts to identity") {
        for (i64 q : {2, 7, 12}) CHECK(lift_sl(ModMatrix::identity(3, q)) == IntMatrix::Identity(3, 3));
    }
    SUBCASE("diag(2,3) mod 5") {
        ModMatrix m(make({{2, 0}, {0, 3}}), 5);
        IntMatrix g = lift_sl(m);
        CHECK(det_exact(g) == 1);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 2; ++j) CHECK(mod_pos(g(i, j), 5) == m.m(i, j));
    }
    SUBCASE("non-unimodular input rejected") {
        CHECK_THROWS_AS(lift_sl(ModMatrix(make({{2, 0}, {0, 1}}), 5)), NotSpecialLinear);
    }
}

TEST_CASE("lift_sl on random inputs") {
    Rng rng(31);
    int found = 0;
    while (found < 60) {
        i64 q = rng.next_in(2, 36);
        int n = int(rng.next_in(2, 3));
        ModMatrix m(random_int_matrix(rng, n, n, 0, q - 1), q);
        if (det_mod(m) != 1 % q) continue;
        IntMatrix g = lift_sl(m);
        CHECK(det_exact(g) == 1);
        bool congruent = true;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (mod_pos(g(i, j), q) != m.m(i, j)) congruent = false;
        CHECK(congruent);
        ++found;
    }
}
