#include <CLI11.hpp>
#include <iostream>

#include "horolab/geomnum.hpp"
#include "horolab/horosphere.hpp"
#include "horolab/kloosterman.hpp"
#include "horolab/parallel.hpp"
#include "horolab/primitive.hpp"
#include "horolab/rankcount.hpp"
#include "horolab/records.hpp"
#include "horolab/smallsol.hpp"

using namespace horolab;
using cli::ResultRecord;

namespace {

struct GlobalOpts {
    u64 seed = 1;
    unsigned threads = default_threads();
    u64 cap = modring::kDefaultEnumCap;
    std::string out;
    std::string format = "jsonl";
    std::string golden;
    bool bless = false;
    bool stamp = false;
};

std::vector<i64> parse_range(const std::string& text) {
    std::vector<i64> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t dots = tok.find("..");
        if (dots != std::string::npos) {
            i64 lo = std::stoll(tok.substr(0, dots)), hi = std::stoll(tok.substr(dots + 2));
            for (i64 v = lo; v <= hi; ++v) out.push_back(v);
        } else if (!tok.empty()) {
            out.push_back(std::stoll(tok));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

gon::BoxRegion parse_boxes(const std::vector<std::string>& specs) {
    gon::BoxRegion region;
    for (const auto& spec : specs) {
        std::vector<double> lo, hi;
        std::size_t pos = 0;
        while (pos < spec.size()) {
            std::size_t semi = spec.find(';', pos);
            std::string tok = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
            std::size_t comma = tok.find(',');
            if (comma == std::string::npos) throw ConfigInvalid("box interval needs 'lo,hi': " + tok);
            lo.push_back(std::stod(tok.substr(0, comma)));
            hi.push_back(std::stod(tok.substr(comma + 1)));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        gon::Box box;
        box.lo = Eigen::Map<Eigen::VectorXd>(lo.data(), Eigen::Index(lo.size()));
        box.hi = Eigen::Map<Eigen::VectorXd>(hi.data(), Eigen::Index(hi.size()));
        region.boxes.push_back(box);
    }
    return region;
}

std::string stamp_now(bool enabled) {
    if (!enabled) return "";
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

ResultRecord make_record(const GlobalOpts& g, std::string op,
                         std::vector<std::pair<std::string, std::string>> params,
                         std::vector<std::pair<std::string, double>> values, std::optional<bool> pass) {
    ResultRecord rec;
    rec.op = std::move(op);
    rec.params = std::move(params);
    rec.values = std::move(values);
    rec.pass = pass;
    rec.seed = g.seed;
    rec.timestamp = stamp_now(g.stamp);
    return rec;
}

// ---------------------------------------------------------------------------
// subcommand runners, each returning records
// ---------------------------------------------------------------------------

std::vector<ResultRecord> run_kloos(const GlobalOpts& g, int n, const std::vector<i64>& qs,
                                    const std::string& check, int samples) {
    std::vector<ResultRecord> records;
    if (check == "weil") {
        for (i64 q : qs) {
            if (q < 2) continue;
            double tau = double(modring::divisors(q).size());
            double max_ratio = 0;
            bool pass = true;
            Rng rng(g.seed, u64(q));
            auto gl = modring::enumerate_gl_table(1, q, g.cap);
            for (int t = 0; t < samples; ++t) {
                i64 a = rng.next_in(0, q - 1), b = rng.next_in(0, q - 1);
                modring::IntMatrix am(1, 1), bm(1, 1);
                am(0, 0) = a;
                bm(0, 0) = b;
                double v = std::abs(kloos::brute_over(gl, modring::ModMatrix(am, q), modring::ModMatrix(bm, q)).value());
                i64 gg = modring::gcd_i64(modring::gcd_i64(a, b), q);
                double bound = tau * std::sqrt(double(gg)) * std::sqrt(double(q));
                max_ratio = std::max(max_ratio, v / bound);
                if (v > bound * (1 + 1e-9)) pass = false;
            }
            records.push_back(make_record(g, "kloos_weil", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                          {{"max_ratio", max_ratio}}, pass));
        }
    } else if (check == "crt") {
        for (i64 q : qs) {
            Rng rng(g.seed, u64(q));
            bool pass = true;
            double max_dev = 0;
            for (int t = 0; t < samples; ++t) {
                modring::IntMatrix am(n, n), bm(n, n);
                for (int i = 0; i < n * n; ++i) {
                    am(i / n, i % n) = rng.next_in(0, q - 1);
                    bm(i / n, i % n) = rng.next_in(0, q - 1);
                }
                modring::ModMatrix a(am, q), b(bm, q);
                auto via_crt = kloos::crt(a, b, g.cap);
                auto direct = kloos::brute(a, b, g.cap, g.threads);
                if (!kloos::ExpSum::equal_exact(via_crt, direct)) pass = false;
                max_dev = std::max(max_dev, std::abs(via_crt.value() - direct.value()));
            }
            records.push_back(make_record(g, "kloos_crt", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                          {{"max_abs_dev", max_dev}}, pass));
        }
    } else if (check == "primepower") {
        for (i64 q : qs) {
            auto factors = modring::factorize(q);
            if (factors.size() != 1 || factors[0].second < 2) continue;
            auto [p, beta] = factors[0];
            Rng rng(g.seed, u64(q));
            bool pass = true;
            int done = 0;
            while (done < samples) {
                modring::IntMatrix am(n, n), bm(n, n);
                for (int i = 0; i < n * n; ++i) {
                    am(i / n, i % n) = rng.next_in(0, q - 1);
                    bm(i / n, i % n) = rng.next_in(0, q - 1);
                }
                modring::ModMatrix a(am, q), b(bm, q);
                if (modring::rank_mod_p(a, p) == 0 || modring::rank_mod_p(b, p) == 0) continue;
                if (!kloos::ExpSum::equal_exact(kloos::primepower(a, b, p, beta), kloos::brute(a, b, g.cap, g.threads)))
                    pass = false;
                ++done;
            }
            records.push_back(make_record(g, "kloos_primepower",
                                          {{"n", std::to_string(n)}, {"q", std::to_string(q)}}, {}, pass));
        }
    } else if (check == "ramanujan") {
        for (i64 q : qs) {
            auto factors = modring::factorize(q);
            if (factors.size() != 1) continue;
            auto [p, m] = factors[0];
            Rng rng(g.seed, u64(q));
            bool pass = true;
            modring::ModMatrix zero(n, n, q);
            for (int t = 0; t < samples; ++t) {
                modring::IntMatrix am(n, n);
                for (int i = 0; i < n * n; ++i) am(i / n, i % n) = rng.next_in(0, q - 1);
                modring::ModMatrix a(am, q);
                kloos::ExpSum closed(q);
                closed.add(0, kloos::ramanujan_eval(a, p, m));
                if (!kloos::ExpSum::equal_exact(kloos::brute(zero, a, g.cap, g.threads), closed)) pass = false;
            }
            records.push_back(make_record(g, "kloos_ramanujan",
                                          {{"n", std::to_string(n)}, {"q", std::to_string(q)}}, {}, pass));
        }
    } else if (check == "bounds") {
        for (const auto& rep : kloos::verify_kloos_bounds(kloos::acceptance_bound_scans())) {
            std::vector<std::pair<std::string, std::string>> params{{"bound", rep.bound}};
            for (const auto& [k, v] : rep.params) params.emplace_back(k, std::to_string(i64(v)));
            records.push_back(make_record(g, "kloos_bound", params,
                                          {{"measured", rep.measured}, {"bound_value", rep.bound_value}, {"ratio", rep.ratio}},
                                          rep.pass));
        }
    } else {
        throw ConfigInvalid("unknown kloos check: " + check);
    }
    return records;
}

std::vector<ResultRecord> run_prim(const GlobalOpts& g, int d, int n, const std::vector<i64>& qs) {
    std::vector<ResultRecord> records;
    for (i64 q : qs) {
        i64 formula = prim::primitive_count(d, n, q);
        double enumerated = -1;
        std::optional<bool> pass;
        try {
            i64 count = prim::primitive_count_enumerated(d, n, q, g.cap);
            enumerated = double(count);
            pass = (count == formula);
        } catch (const EnumerationTooLarge&) {
            pass = std::nullopt;  // formula-only row
        }
        records.push_back(make_record(g, "prim_count",
                                      {{"d", std::to_string(d)}, {"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                      {{"count_formula", double(formula)}, {"count_enum", enumerated}}, pass));
    }
    return records;
}

std::vector<ResultRecord> run_equi(const GlobalOpts& g, const std::string& mode, int d, int n,
                                   const std::vector<i64>& qs, i64 m_max, int nmax, int terms) {
    std::vector<ResultRecord> records;
    if (mode == "weyl") {
        std::vector<horo::DecayPoint> pts;
        for (const auto& row : horo::weyl_decay_scan(d, n, qs, nmax, g.cap)) {
            pts.push_back({double(row.q), row.max_abs});
            records.push_back(make_record(g, "equi_weyl",
                                          {{"d", std::to_string(d)}, {"n", std::to_string(n)}, {"q", std::to_string(row.q)}},
                                          {{"value_re", row.max_abs}, {"value_im", 0.0}, {"abs", row.max_abs}, {"bound", row.envelope}},
                                          row.envelope_ok));
        }
        horo::DecayTarget fit = horo::fit_decay(pts, 0.5);
        records.push_back(make_record(g, "equi_weyl_fit", {{"d", std::to_string(d)}, {"n", std::to_string(n)}},
                                      {{"slope", fit.slope}, {"residual", fit.residual}, {"constant", fit.fitted_constant}},
                                      fit.pass));
    } else if (mode == "aq") {
        Rng rng(g.seed, 99);
        for (i64 q : qs) {
            double worst = 0;
            bool pass = true;
            for (int t = 0; t < std::max(1, terms); ++t) {
                horo::TrigPoly f;
                while (int(f.terms.size()) < 5) {
                    modring::IntMatrix nm(n, n), mm(n, n);
                    for (int i = 0; i < n * n; ++i) {
                        nm(i / n, i % n) = rng.next_in(-nmax, nmax);
                        mm(i / n, i % n) = rng.next_in(-nmax, nmax);
                    }
                    f.terms.push_back({nm, mm, {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1}});
                    try {
                        horo::validate(f);
                    } catch (const PreconditionViolated&) {
                        f.terms.pop_back();
                    }
                }
                horo::Complex a = horo::aq_direct(f, n, q, g.cap), b = horo::aq_expand(f, n, q, g.cap);
                double dev = std::abs(a - b) / std::max(1.0, std::abs(a));
                worst = std::max(worst, dev);
                if (dev > 1e-9) pass = false;
            }
            records.push_back(make_record(g, "equi_aq", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                          {{"max_rel_dev", worst}}, pass));
        }
    } else if (mode == "joint") {
        Rng rng(g.seed, 7);
        for (i64 q : qs) {
            prim::ParamBijection pb(d, n, q, g.cap);
            bool pass = true;
            double worst = 0;
            for (int t = 0; t < std::max(1, terms); ++t) {
                modring::IntMatrix nn(d, n), mm(n, d);
                for (int i = 0; i < d * n; ++i) {
                    nn(i / n, i % n) = rng.next_in(-nmax, nmax);
                    mm(i / d, i % d) = rng.next_in(-nmax, nmax);
                }
                horo::Complex a = horo::weyl_joint(pb, nn, mm, g.cap);
                horo::Complex b = horo::weyl_joint_direct(pb, nn, mm);
                double dev = std::abs(a - b);
                worst = std::max(worst, dev);
                if (dev > 1e-9) pass = false;
            }
            records.push_back(make_record(g, "equi_joint",
                                          {{"d", std::to_string(d)}, {"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                          {{"max_abs_dev", worst}}, pass));
        }
    } else if (mode == "hecke") {
        horo::SurfaceFn phi = horo::indicator_y_gt(2.0);
        double target = horo::mu0_mean(phi);
        std::vector<horo::DecayPoint> pts;
        double early = 0, late = 0;
        int early_n = 0, late_n = 0;
        for (i64 m : modring::primes_up_to(m_max)) {
            double err = std::abs(horo::hecke_average(phi, m, {0.0, 2.0}) - target);
            pts.push_back({double(m), err});
            records.push_back(make_record(g, "equi_hecke", {{"m", std::to_string(m)}},
                                          {{"value_re", err}, {"value_im", 0.0}, {"abs", err}, {"bound", target}},
                                          std::nullopt));
            if (m <= 20) {
                early += err;
                ++early_n;
            }
            if (m >= 200 && m <= 500) {
                late += err;
                ++late_n;
            }
        }
        bool ratio_ok = early_n > 0 && late_n > 0 && (late / late_n) * 3.0 <= (early / early_n);
        horo::DecayTarget fit = horo::fit_decay(pts, 0.5 - 7.0 / 64.0);
        records.push_back(make_record(g, "equi_hecke_fit", {},
                                      {{"slope", fit.slope}, {"residual", fit.residual},
                                       {"early_mean", early_n ? early / early_n : 0},
                                       {"late_mean", late_n ? late / late_n : 0}},
                                      ratio_ok));
    } else {
        throw ConfigInvalid("unknown equi mode: " + mode);
    }
    return records;
}

std::vector<ResultRecord> run_gon(const GlobalOpts& g, const std::string& check, u64 samples) {
    std::vector<ResultRecord> records;
    if (check == "siegel") {
        std::vector<gon::Density> densities;
        densities.push_back(gon::density_ball_indicator(2.0));
        gon::BoxRegion region{{gon::Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 3)}}};
        densities.push_back(gon::density_box_indicator(region));
        densities.push_back(gon::density_supnorm_rational(4.0, 25.0));
        for (const auto& rho : densities) {
            auto rep = gon::siegel_check_d2(rho, samples, g.seed, g.threads);
            records.push_back(make_record(g, "gon_siegel", {{"check", rep.density}},
                                          {{"samples", double(rep.samples)}, {"mean", rep.mean},
                                           {"target", rep.target}, {"stderr", rep.stderr_}},
                                          rep.pass));
        }
    } else if (check == "minkowski") {
        Rng rng(g.seed);
        for (double radius : {0.1, 1.0, 10.0}) {
            double lo = 1e300, hi = 0;
            for (u64 t = 0; t < std::max<u64>(samples, 10); ++t) {
                double r = gon::minkowski_ratio(gon::haar_sample_sl2(rng), radius);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            records.push_back(make_record(g, "gon_minkowski", {{"radius", std::to_string(radius)}},
                                          {{"min_ratio", lo}, {"max_ratio", hi}}, lo > 0.1 && hi < 10.0));
        }
    } else if (check == "phi") {
        Rng rng(g.seed);
        bool pass = true;
        double worst = 0;
        for (u64 t = 0; t < std::max<u64>(samples, 5); ++t) {
            gon::LatticeBasis lat = gon::haar_sample_sl2(rng);
            gon::PhiResult base = gon::phi_eval(lat, 1, 1.0, 1.0, 8.0, 1e-11);
            gon::PhiResult scaled = gon::phi_eval(lat, 1, 2.0, 2.0, 8.0, 1e-11);
            double dev = std::abs(scaled.value - base.value / 2.0) / base.value;
            worst = std::max(worst, dev);
            if (dev > 1e-9) pass = false;
        }
        records.push_back(make_record(g, "gon_phi_scaling", {}, {{"max_rel_dev", worst}}, pass));
    } else if (check == "minima") {
        Rng rng(g.seed);
        bool pass = true;
        for (u64 t = 0; t < std::max<u64>(samples, 10); ++t) {
            gon::LatticeBasis lat = gon::haar_sample_sl2(rng);
            auto l = successive_minima(lat);
            double prod = l[0] * l[1];
            if (!(l[0] <= l[1] && prod >= l[0] * l[0] - 1e-12 && prod < 1.2)) pass = false;
        }
        records.push_back(make_record(g, "gon_minima_band", {}, {}, pass));
    } else {
        throw ConfigInvalid("unknown gon check: " + check);
    }
    return records;
}

std::vector<ResultRecord> run_rank(const GlobalOpts& g, int d, int n, int r, const std::vector<i64>& ps) {
    std::vector<ResultRecord> records;
    for (const auto& row : rankcnt::ratio_scan(d, n, r, ps, g.threads)) {
        records.push_back(make_record(g, "rank_count",
                                      {{"d", std::to_string(d)}, {"n", std::to_string(n)}, {"r", std::to_string(r)},
                                       {"p", std::to_string(row.p)}, {"b", std::to_string(row.b)}},
                                      {{"count", double(row.count)}, {"envelope", row.envelope_value}, {"ratio", row.ratio}},
                                      row.lower_ok));
    }
    return records;
}

std::vector<ResultRecord> run_small(const GlobalOpts& g, const std::string& mode, int d, int n, i64 q,
                                    const std::vector<std::string>& box_specs, i64 b_scalar, int r_max,
                                    u64 samples) {
    std::vector<ResultRecord> records;
    gon::BoxRegion omega = box_specs.empty()
                               ? gon::BoxRegion{{gon::Box{Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)}}}
                               : parse_boxes(box_specs);
    if (mode == "hist") {
        modring::IntVector b = modring::IntVector::Constant(n, b_scalar);
        auto hist = smallsol::hist_distribution(d, n, q, {}, omega, b, r_max, true, 0, g.seed, g.cap);
        for (int r = 0; r <= r_max; ++r)
            records.push_back(make_record(g, "small_hist",
                                          {{"q", std::to_string(q)}, {"r", std::to_string(r)}},
                                          {{"count", double(hist.counts[std::size_t(r)])}, {"prob", hist.prob(std::size_t(r))}},
                                          std::nullopt));
        records.push_back(make_record(g, "small_hist_overflow", {{"q", std::to_string(q)}},
                                      {{"count", double(hist.overflow)}}, std::nullopt));
    } else if (mode == "grid") {
        Rng rng(g.seed);
        bool pass = true;
        int done = 0;
        while (done < int(std::max<u64>(samples, 20))) {
            int dd = 2 + int(rng.next_in(0, 1));
            int nn = 1 + int(rng.next_in(0, dd - 1 > 1 ? 1 : 0));
            i64 qq = rng.next_in(2, 20);
            modring::IntMatrix m(dd, nn);
            for (int i = 0; i < dd * nn; ++i) m(i / nn, i % nn) = rng.next_in(0, qq - 1);
            modring::ModMatrix rr(m, qq);
            if (!prim::is_primitive(rr)) continue;
            modring::IntVector bb(nn);
            for (int i = 0; i < nn; ++i) bb(i) = rng.next_in(-qq, qq);
            auto grid = smallsol::grid_construct(rr, bb);
            for (int boxes = 0; boxes < 5; ++boxes) {
                gon::Box box;
                box.lo = Eigen::VectorXd(dd);
                box.hi = Eigen::VectorXd(dd);
                for (int i = 0; i < dd; ++i) {
                    double lo = rng.next_double() * 6 - 3;
                    box.lo(i) = lo;
                    box.hi(i) = lo + rng.next_double() * 3;
                }
                gon::BoxRegion region{{box}};
                if (smallsol::count_solutions({rr, bb, region}, g.cap) != smallsol::grid_count(grid, region)) pass = false;
            }
            ++done;
        }
        records.push_back(make_record(g, "small_grid_identity", {{"cases", std::to_string(samples)}}, {}, pass));
    } else if (mode == "limit") {
        auto est = smallsol::limit_constant_mc(omega, b_scalar, r_max, samples, g.seed, g.threads);
        for (int r = 0; r <= r_max; ++r)
            records.push_back(make_record(g, "small_limit",
                                          {{"b", std::to_string(b_scalar)}, {"r", std::to_string(r)}},
                                          {{"prob", est.prob[std::size_t(r)]}, {"stderr", est.stderr_[std::size_t(r)]}},
                                          std::nullopt));
    } else if (mode == "inverse") {
        modring::IntVector b = modring::IntVector::Constant(n, b_scalar);
        gon::BoxRegion torus_omega = box_specs.empty()
                                         ? gon::BoxRegion{{gon::Box{Eigen::VectorXd::Zero(n),
                                                                    Eigen::VectorXd::Constant(n, 0.5)}}}
                                         : parse_boxes(box_specs);
        double fraction = smallsol::inverse_experiment(n, q, {}, torus_omega, b, g.cap);
        records.push_back(make_record(g, "small_inverse", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                      {{"fraction", fraction}, {"volume", torus_omega.volume()}}, std::nullopt));
    } else {
        throw ConfigInvalid("unknown small mode: " + mode);
    }
    return records;
}

std::vector<ResultRecord> run_selftest(const GlobalOpts& g) {
    std::vector<ResultRecord> records;
    auto add = [&](const std::string& name, bool ok) {
        records.push_back(make_record(g, "selftest", {{"check", name}}, {}, ok));
    };
    add("count_gl", modring::count_gl(2, 3) == 48);
    add("primitive_count", prim::primitive_count(3, 2, 2) == 42);
    {
        modring::IntMatrix one(1, 1);
        one(0, 0) = 1;
        modring::ModMatrix a(one, 5);
        add("kloos_value", std::abs(kloos::brute(a, a).value().real() - 0.38196601125) < 1e-9);
    }
    {
        prim::ParamBijection pb(2, 1, 3);
        add("coset_count", pb.reps().size() == 4);
    }
    auto rep = gon::siegel_check_d2(gon::density_ball_indicator(2.0), 4096, g.seed, g.threads);
    add("siegel_ball", rep.pass);
    add("rank_lower",
        rankcnt::check_lower_bounds({3, 2, 1, 3, 1}, g.threads).simple_ok);
    return records;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for primitive-point equidistribution experiments"};
    app.set_config("--config");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "64-bit seed for every stochastic mode");
    app.add_option("--threads", g.threads, "worker threads");
    app.add_option("--cap", g.cap, "enumeration cap");
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_option("--format", g.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--golden", g.golden, "golden file to compare against (jsonl)");
    app.add_flag("--bless", g.bless, "rewrite the golden file instead of comparing");
    app.add_flag("--stamp", g.stamp, "include a wall-clock timestamp in records");

    int n = 1, d = 2, r = 1, nmax = 2, terms = 5, r_max = 6;
    i64 q_single = 5, m_max = 100, b_scalar = 1;
    u64 samples = 1000;
    std::string range = "2..10", check = "crt", mode = "weyl";
    std::string gon_check = "siegel", small_mode = "hist";
    std::vector<std::string> boxes;

    auto* kloos_cmd = app.add_subcommand("kloos", "exponential-sum checks and bound suite");
    kloos_cmd->add_option("--n", n);
    kloos_cmd->add_option("--q", range);
    kloos_cmd->add_option("--check", check)->check(CLI::IsMember({"crt", "primepower", "ramanujan", "weil", "bounds"}));
    kloos_cmd->add_option("--samples", samples);

    auto* prim_cmd = app.add_subcommand("prim", "primitive-matrix counting");
    prim_cmd->add_option("--d", d);
    prim_cmd->add_option("--n", n);
    prim_cmd->add_option("--q", range);

    auto* equi_cmd = app.add_subcommand("equi", "equidistribution scans");
    equi_cmd->add_option("--mode", mode)->check(CLI::IsMember({"weyl", "aq", "joint", "hecke"}));
    equi_cmd->add_option("--d", d);
    equi_cmd->add_option("--n", n);
    equi_cmd->add_option("--q", range);
    equi_cmd->add_option("--m-max", m_max);
    equi_cmd->add_option("--nmax", nmax);
    equi_cmd->add_option("--terms", terms);

    auto* gon_cmd = app.add_subcommand("gon", "geometry-of-numbers checks");
    gon_cmd->add_option("--check", gon_check)->check(CLI::IsMember({"siegel", "minkowski", "phi", "minima"}));
    gon_cmd->add_option("--samples", samples);

    auto* rank_cmd = app.add_subcommand("rank", "bounded-entry rank counting");
    rank_cmd->add_option("--d", d);
    rank_cmd->add_option("--n", n);
    rank_cmd->add_option("--r", r);
    rank_cmd->add_option("--p", range);

    auto* small_cmd = app.add_subcommand("small", "small solutions of random congruences");
    small_cmd->add_option("--mode", small_mode)->check(CLI::IsMember({"hist", "grid", "limit", "inverse"}));
    small_cmd->add_option("--d", d);
    small_cmd->add_option("--n", n);
    small_cmd->add_option("--q", q_single);
    small_cmd->add_option("--b", b_scalar);
    small_cmd->add_option("--r-max", r_max);
    small_cmd->add_option("--box", boxes);
    small_cmd->add_option("--samples", samples);

    auto* selftest_cmd = app.add_subcommand("selftest", "quick cross-module sanity battery");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<ResultRecord> records;
        if (kloos_cmd->parsed()) records = run_kloos(g, n, parse_range(range), check, int(samples));
        else if (prim_cmd->parsed()) records = run_prim(g, d, n, parse_range(range));
        else if (equi_cmd->parsed()) records = run_equi(g, mode, d, n, parse_range(range), m_max, nmax, terms);
        else if (gon_cmd->parsed()) records = run_gon(g, gon_check, samples);
        else if (rank_cmd->parsed()) records = run_rank(g, d, n, r, parse_range(range));
        else if (small_cmd->parsed()) records = run_small(g, small_mode, d, n, q_single, boxes, b_scalar, r_max, samples);
        else if (selftest_cmd->parsed()) records = run_selftest(g);

        if (!g.golden.empty()) {
            if (g.bless) {
                cli::write_file(g.golden, cli::render(records, "jsonl"));
            } else {
                auto diff = cli::compare_golden(records, cli::read_jsonl_file(g.golden));
                if (!diff.match) {
                    for (const auto& m : diff.mismatches) std::cerr << "golden mismatch: " << m << "\n";
                    return 1;
                }
            }
        }
        std::string rendered = cli::render(records, g.format);
        if (g.out.empty()) std::cout << rendered;
        else cli::write_file(g.out, rendered);

        for (const auto& rec : records)
            if (rec.pass.has_value() && !*rec.pass) return 1;
        return 0;
    } catch (const EnumerationTooLarge& e) {
        ResultRecord diag;
        diag.op = "diagnostic";
        diag.params = {{"error", "EnumerationTooLarge"}, {"what", e.what()}};
        diag.seed = g.seed;
        std::cout << cli::to_json_line(diag) << "\n";
        return 2;
    } catch (const DimensionTooLarge& e) {
        ResultRecord diag;
        diag.op = "diagnostic";
        diag.params = {{"error", "DimensionTooLarge"}, {"what", e.what()}};
        diag.seed = g.seed;
        std::cout << cli::to_json_line(diag) << "\n";
        return 2;
    } catch (const ConfigInvalid& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
