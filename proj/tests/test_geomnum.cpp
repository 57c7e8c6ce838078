#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "horolab/geomnum.hpp"
#include "horolab/modring.hpp"

using namespace horolab;
using namespace horolab::gon;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

// oracle independent of the reduction path: enumerate coefficient boxes
// derived only from the inverse basis, then pick greedily
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
    std::vector<double> out;
    modring::IntMatrix picked = modring::IntMatrix::Zero(d, d);
    int rank = 0;
    for (const auto& [norm, coeff] : cand) {
        for (int j = 0; j < d; ++j) picked(rank, j) = coeff[std::size_t(j)];
        if (modring::rank_exact(picked.topRows(rank + 1).eval()) == rank + 1) {
            out.push_back(norm);
            if (++rank == d) break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("successive minima examples") {
    SUBCASE("standard lattice") {
        auto l = successive_minima(LatticeBasis(Eigen::MatrixXd::Identity(3, 3)));
        for (double v : l) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("rectangular lattice") {
        auto l = successive_minima(LatticeBasis(mat2(0.5, 0, 0, 2)));
        CHECK(l[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(l[1] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("sheared basis") {
        auto l = successive_minima(LatticeBasis(mat2(1, 0, 0.5, 1)));
        CHECK(l[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(l[1] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
    }
    SUBCASE("dimension guard") {
        CHECK_THROWS_AS(successive_minima(LatticeBasis(Eigen::MatrixXd::Identity(7, 7))), DimensionTooLarge);
    }
}

TEST_CASE("successive minima match the oracle on a battery") {
    Rng rng(101);
    int done = 0;
    while (done < 20) {
        int d = 2 + int(rng.next_in(0, 1));
        Eigen::MatrixXd g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = rng.next_double() * 4 - 2;
        if (std::abs(g.determinant()) < 0.3) continue;
        LatticeBasis lat(g);
        auto ours = successive_minima(lat);
        auto oracle = minima_oracle(lat.g);
        REQUIRE(ours.size() == oracle.size());
        for (std::size_t i = 0; i < ours.size(); ++i) CHECK(ours[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
        ++done;
    }
}

TEST_CASE("minima are rotation invariant and sorted") {
    Rng rng(55);
    for (int t = 0; t < 15; ++t) {
        Eigen::MatrixXd g(2, 2);
        for (int i = 0; i < 4; ++i) g(i / 2, i % 2) = rng.next_double() * 4 - 2;
        if (std::abs(g.determinant()) < 0.3) continue;
        double theta = rng.next_double() * 2 * M_PI;
        Eigen::MatrixXd rot = mat2(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta));
        auto a = successive_minima(LatticeBasis(g));
        auto b = successive_minima(LatticeBasis(g * rot));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
            if (i > 0) CHECK(a[i] >= a[i - 1] - 1e-12);
        }
        // lambda_1^d <= prod lambda_i, and the product stays in a narrow band
        double prod = 1;
        for (double l : a) prod *= l;
        CHECK(prod >= std::pow(a[0], 2) - 1e-12);
        CHECK(prod <= 2.0);
    }
}

TEST_CASE("point counting examples") {
    LatticeBasis z2(Eigen::MatrixXd::Identity(2, 2));
    CHECK(count_points_ball(z2, 1.0) == 5);
    CHECK(count_points_ball(z2, std::sqrt(2.0)) == 9);

    Grid shifted{z2, Eigen::Vector2d(0.5, 0.5)};
    BoxRegion unit{{Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)}}};
    CHECK(count_points_region(shifted, unit) == 1);

    LatticeBasis skew(mat2(1.0, 0.3, -0.2, 1.0));
    i64 prev = 0;
    for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        i64 c = count_points_ball(skew, r);
        CHECK(c >= prev);  // monotone in the radius
        prev = c;
    }
}

TEST_CASE("minkowski ratio") {
    LatticeBasis z2(Eigen::MatrixXd::Identity(2, 2));
    CHECK(minkowski_ratio(z2, 1.0) == doctest::Approx(5.0 / 4.0).epsilon(1e-12));
    CHECK(minkowski_ratio(z2, 1e-6) == doctest::Approx(1.0).epsilon(1e-3));

    Rng rng(77);
    for (int t = 0; t < 60; ++t) {
        LatticeBasis lat = haar_sample_sl2(rng);
        for (double r : {0.1, 1.0, 10.0}) {
            double ratio = minkowski_ratio(lat, r);
            CHECK(ratio > 0.1);
            CHECK(ratio < 10.0);
        }
    }
}

TEST_CASE("phi majorant") {
    SUBCASE("scaling identity at a fast-decaying exponent") {
        LatticeBasis lat(mat2(1.0, 0.2, -0.3, 1.0));
        for (double r : {2.0, 10.0, 0.25}) {
            PhiResult base = phi_eval(lat, 1, 1.0, 1.0, 8.0, 1e-11);
            PhiResult scaled = phi_eval(lat, 1, r, r, 8.0, 1e-11);
            CHECK(scaled.value == doctest::Approx(base.value / r).epsilon(1e-9));
        }
    }
    SUBCASE("brute-force oracle on the standard lattice, slow decay") {
        // sum over nonzero x with ||x||_inf <= 1000 of 1/(1 + ||x||_inf^3);
        // truncations of a positive series bracket each other by their tails
        double oracle = 0;
        for (i64 t = 1; t <= 1000; ++t) oracle += 8.0 * double(t) / (1.0 + std::pow(double(t), 3.0));
        double oracle_tail = 8.0 / 1000.0;
        LatticeBasis z2(Eigen::MatrixXd::Identity(2, 2));
        PhiResult r = phi_eval(z2, 1, 1.0, 1.0, 3.0, 0.05);
        CHECK(r.tail_bound < 0.05);
        CHECK(std::abs(r.value - oracle) <= r.tail_bound + oracle_tail);
    }
    SUBCASE("dominant-shell asymptotics with a tiny additive constant") {
        LatticeBasis z2(Eigen::MatrixXd::Identity(2, 2));
        PhiResult r = phi_eval(z2, 1, 1e-9, 1.0, 12.0, 1e-12);
        CHECK(std::abs(r.value - 8.0) < 0.01);  // eight sup-norm-one vectors dominate
    }
    SUBCASE("preconditions") {
        LatticeBasis z2(Eigen::MatrixXd::Identity(2, 2));
        CHECK_THROWS_AS(phi_eval(z2, 1, 1.0, 1.0, 2.0, 1e-9), PreconditionViolated);
        CHECK_THROWS_AS(phi_eval(z2, 1, -1.0, 1.0, 3.0, 1e-9), PreconditionViolated);
        CHECK_THROWS_AS(phi_eval(z2, 1, 1.0, 1.0, 2.3, 1e-9), EnumerationTooLarge);  // unaffordable tolerance
    }
}

TEST_CASE("haar sampler") {
    SUBCASE("samples lie in the fundamental domain") {
        Rng rng(5);
        for (int t = 0; t < 2000; ++t) {
            auto z = haar_sample_z(rng);
            CHECK(std::abs(z.real()) <= 0.5);
            CHECK(std::norm(z) >= 1.0 - 1e-15);
        }
    }
    SUBCASE("deterministic restart") {
        Rng a(42), b(42);
        for (int t = 0; t < 50; ++t) CHECK(haar_sample_z(a) == haar_sample_z(b));
    }
    SUBCASE("mass above height two") {
        Rng rng(7);
        const int n = 200000;
        int hits = 0;
        for (int t = 0; t < n; ++t)
            if (haar_sample_z(rng).imag() > 2.0) ++hits;
        double p = 3.0 / (2.0 * M_PI);
        double sigma = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(double(hits) / n - p) < 4 * sigma);
    }
}

TEST_CASE("mean-value check at modest sample counts") {
    SUBCASE("ball of radius 2") {
        auto rep = siegel_check_d2(density_ball_indicator(2.0), 20000, 11, 2);
        CHECK(rep.target == doctest::Approx(4 * M_PI));
        CHECK(rep.pass);
    }
    SUBCASE("box [0,1] x [0,3]") {
        BoxRegion region{{Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 3)}}};
        auto rep = siegel_check_d2(density_box_indicator(region), 20000, 12, 2);
        CHECK(rep.target == doctest::Approx(3.0));
        CHECK(rep.pass);
    }
    SUBCASE("rational sup-norm density") {
        auto rep = siegel_check_d2(density_supnorm_rational(4.0, 25.0), 5000, 13, 2);
        CHECK(rep.target == doctest::Approx(2 * M_PI).epsilon(0.01));  // full integral is 2 pi
        CHECK(rep.pass);
    }
    SUBCASE("thread-count independence, bitwise") {
        auto a = siegel_check_d2(density_ball_indicator(2.0), 4096, 3, 1);
        auto b = siegel_check_d2(density_ball_indicator(2.0), 4096, 3, 4);
        CHECK(a.mean == b.mean);
        CHECK(a.stderr_ == b.stderr_);
    }
}
