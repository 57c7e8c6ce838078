// reproduces the recorded scan constants (golden ratios, slopes, bands);
// built on demand only: cmake --build build --target probe
#include <cstdio>

#include "horolab/horosphere.hpp"
#include "horolab/kloosterman.hpp"
#include "horolab/rankcount.hpp"
#include "horolab/smallsol.hpp"

using namespace horolab;
using modring::IntMatrix;
using modring::IntVector;
using modring::ModMatrix;

int main(int argc, char** argv) {
    std::string what = argc > 1 ? argv[1] : "limit";
    if (what == "limit") {
        gon::BoxRegion omega{{gon::Box{Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)}}};
        auto mc = smallsol::limit_constant_mc(omega, 1, 6, 1000000, 60601, 2);
        std::printf("mc:    ");
        for (int r = 0; r <= 6; ++r) std::printf(" %.5f", mc.prob[std::size_t(r)]);
        std::printf("\n");
        for (i64 q : {101, 211, 625}) {
            auto hist = smallsol::hist_distribution(2, 1, q, {}, omega, IntVector::Ones(1), 6, true);
            std::printf("q=%-4lld", (long long)q);
            double maxdev = 0;
            for (int r = 0; r <= 6; ++r) {
                double p = hist.prob(std::size_t(r));
                std::printf(" %.5f", p);
                maxdev = std::max(maxdev, std::abs(p - mc.prob[std::size_t(r)]));
            }
            std::printf("   maxdev %.5f\n", maxdev);
        }
    } else if (what == "etres2") {
        for (i64 p : {2, 3, 5, 7}) {
            kloos::BoundScan scan{"etres2", 2, {p}, p <= 3, 2000, 1, 0.1};
            auto reps = kloos::verify_kloos_bounds({scan});
            std::printf("etres2 n=2 p=%lld ratio %.6f measured %.3f\n", (long long)p, reps[0].ratio,
                        reps[0].measured);
        }
    } else if (what == "rankratio") {
        double maxr = 0;
        for (const auto& row : rankcnt::ratio_scan(3, 2, 1, {3, 5, 7, 11}, 2))
            maxr = std::max(maxr, row.ratio);
        std::printf("rank max ratio %.6f\n", maxr);
    } else if (what == "weylslope") {
        std::vector<horo::DecayPoint> pts;
        for (const auto& row : horo::weyl_decay_scan(2, 1, modring::primes_up_to(500), 2))
            pts.push_back({double(row.q), row.max_abs});
        auto fit = horo::fit_decay(pts, 0.5);
        std::printf("weyl slope %.6f constant %.6f residual %.6f\n", fit.slope, fit.fitted_constant, fit.residual);
    } else if (what == "minkband") {
        Rng rng(123);
        double lo = 1e9, hi = 0;
        for (int t = 0; t < 300; ++t) {
            auto lat = gon::haar_sample_sl2(rng);
            for (double r : {0.1, 1.0, 10.0}) {
                double ratio = gon::minkowski_ratio(lat, r);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        std::printf("minkowski ratio band [%.4f, %.4f]\n", lo, hi);
    }
    return 0;
}
