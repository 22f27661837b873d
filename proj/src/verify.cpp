#include "blochlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <utility>
#include <vector>

#include "blochlab/composition.hpp"
#include "blochlab/constants.hpp"
#include "blochlab/format.hpp"
#include "blochlab/monomials.hpp"
#include "blochlab/parallel.hpp"
#include "blochlab/report.hpp"
#include "blochlab/seminorm.hpp"
#include "blochlab/symbols.hpp"
#include "blochlab/weights.hpp"

namespace blochlab {

namespace {

std::string g3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

struct Check {
    bool ok = true;
    std::string fail_why;
    std::string detail;

    void require(bool cond, std::string why) {
        if (ok && !cond) {
            ok = false;
            fail_why = std::move(why);
        }
    }
};

struct Ctx {
    bool fast;
    ThreadPool pool;
    NormTable norms;
};

// Deterministic interior sample points, identical on every platform/run:
// splitmix64 drives both the radius (area-uniform) and the angle.
struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::vector<Complex> interior_points(int n, double r_cap, std::uint64_t seed) {
    SplitMix rng{seed};
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double r = r_cap * std::sqrt(rng.uniform());
        const double a = 2.0 * std::acos(-1.0) * rng.uniform();
        pts.push_back(std::polar(r, a));
    }
    return pts;
}

// ---- criterion bodies -----------------------------------------------------

void c1_engine_vs_exact(Ctx& ctx, Check& ck) {
    const std::int64_t j_max = ctx.fast ? 16 : 50;
    const Weight w = Weight::vlog();
    const GridConfig cfg;
    const HoloMap id = HoloMap::identity();
    std::vector<double> rel(static_cast<std::size_t>(j_max));
    ctx.pool.parallel_for(rel.size(), [&](std::size_t idx) {
        const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
        const double exact = ctx.norms.get(j).norm;
        const SupEstimate se = sup_weighted_deriv(
            [&id, j](const Complex& z) { return power_deriv(id, j, z); }, w, cfg, nullptr);
        rel[idx] = std::abs(se.value - exact) / exact;
    });
    const auto worst = std::max_element(rel.begin(), rel.end());
    const std::int64_t worst_j = (worst - rel.begin()) + 1;
    ck.require(*worst <= 1e-6, "2-D engine off by rel " + g3(*worst) + " at j = " + int_str(worst_j));
    ck.detail = "max rel err " + g3(*worst) + " over j <= " + int_str(j_max);
}

void c2_norm_asymptotics(Ctx& ctx, Check& ck) {
    const double e1 = std::exp(1.0);
    std::vector<double> v; // e * norm / log(j+1) at j = 2^k, k = 4..30
    for (int k = 4; k <= 30; ++k) {
        const std::int64_t j = std::int64_t{1} << k;
        v.push_back(e1 * ctx.norms.get(j).norm / std::log(static_cast<double>(j) + 1.0));
    }
    for (int k = 6; k < 30; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 4);
        ck.require(v[i + 1] < v[i],
                   "scaled norm not decreasing between k = " + int_str(k) + " and " + int_str(k + 1));
    }
    const double last = v.back();
    ck.require(last >= 1.0 && last <= 1.08,
               "scaled norm at k = 30 is " + fp17(last) + ", outside [1.0, 1.08]");
    ck.detail = "scaled norm at k=30: " + g3(last) + ", decreasing from k=6";
}

void c3_root_identity(Ctx& ctx, Check& ck) {
    const double log3 = constants().log3;
    double worst_res = 0.0, worst_id = 0.0;
    for (const std::int64_t j : {std::int64_t{11}, std::int64_t{100}, std::int64_t{10000},
                                 std::int64_t{100000000}}) {
        const MonomialNormRecord rec = ctx.norms.get(j);
        worst_res = std::max(worst_res, std::abs(rec.residual));
        ck.require(std::abs(rec.residual) <= 1e-10,
                   "root residual " + g3(rec.residual) + " at j = " + int_str(j));
        const double lhs = static_cast<double>(j) * rec.gap;
        const double rhs = 1.0 - (1.0 - rec.gap) / (log3 - std::log(rec.gap));
        const double rel = std::abs(lhs - rhs) / std::abs(rhs);
        worst_id = std::max(worst_id, rel);
        ck.require(rel <= 1e-9, "root identity off by rel " + g3(rel) + " at j = " + int_str(j));
    }
    ck.detail = "max residual " + g3(worst_res) + ", max identity rel err " + g3(worst_id);
}

void c4_gap_asymptotics(Ctx&, Check& ck) {
    double prev = -1.0;
    double tpow_at_1e6 = 0.0;
    for (int e = 2; e <= 8; ++e) {
        std::int64_t j = 1;
        for (int i = 0; i < e; ++i) j *= 10;
        const GapRoot root = solve_maximizer_gap(j);
        const double x = static_cast<double>(j) * root.gap;
        ck.require(x > prev, "j*s_j not increasing at j = 10^" + int_str(e));
        ck.require(x < 1.0, "j*s_j = " + fp17(x) + " >= 1 at j = 10^" + int_str(e));
        prev = x;
        if (e == 6)
            tpow_at_1e6 = std::exp(static_cast<double>(j - 1) * std::log1p(-root.gap));
    }
    const double gap_to_inv_e = std::abs(tpow_at_1e6 - std::exp(-1.0));
    ck.require(gap_to_inv_e <= 0.05,
               "(1-s)^(j-1) at j = 10^6 is " + fp17(tpow_at_1e6) + ", more than 0.05 from 1/e");
    ck.detail = "j*s_j up to " + g3(prev) + "; (1-s)^(j-1)@1e6 within " + g3(gap_to_inv_e) +
                " of 1/e";
}

void c5_envelope_monotone(Ctx&, Check& ck) {
    const int n = 1000;
    const double span = std::log(1e8);
    double prev = power_envelope(1.0);
    ck.require(prev == 1.0, "envelope at 1 must be exactly 1");
    for (int i = 1; i < n; ++i) {
        const double x = std::exp(span * i / (n - 1));
        const double a = power_envelope(x);
        ck.require(a < prev, "envelope not strictly decreasing at sample " + int_str(i));
        prev = a;
    }
    const double limit_gap = std::abs(power_envelope(1e8) - std::exp(-constants().L));
    ck.require(limit_gap <= 1e-7, "envelope limit gap " + g3(limit_gap) + " above 1e-7");
    ck.detail = "strictly decreasing on 1000 log-spaced points; limit gap " + g3(limit_gap);
}

void c6_profile_floor(Ctx& ctx, Check& ck) {
    const std::int64_t j_max = ctx.fast ? 200 : 1000;
    const double floor = constants().h_lower;
    std::vector<double> min_val(static_cast<std::size_t>(j_max));
    std::vector<double> max_step(static_cast<std::size_t>(j_max));
    ctx.pool.parallel_for(min_val.size(), [&](std::size_t idx) {
        const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
        const double a = annulus_radius(j - 1);
        const double b = annulus_radius(j);
        double lo = 1e300;
        const int n_min = 1000;
        for (int i = 0; i <= n_min; ++i) {
            const double t = a + (b - a) * i / n_min;
            lo = std::min(lo, normalized_monomial_profile(j, t));
        }
        min_val[idx] = lo;

        const double c = 1.0 - 1e-6;
        const int n_diff = 1000;
        double worst = -1e300;
        double prev = normalized_monomial_profile(j, a);
        for (int i = 1; i < n_diff; ++i) {
            const double t = a + (c - a) * i / n_diff; // half-open: t < c
            const double v = normalized_monomial_profile(j, t);
            worst = std::max(worst, v - prev);
            prev = v;
        }
        max_step[idx] = worst;
    });
    const double lo = *std::min_element(min_val.begin(), min_val.end());
    const double step = *std::max_element(max_step.begin(), max_step.end());
    ck.require(lo >= floor, "profile min " + fp17(lo) + " below the floor " + fp17(floor));
    ck.require(step <= 0.0, "profile increased by " + g3(step) + " past its band");
    ck.detail = "min " + g3(lo) + " >= floor " + g3(floor) + "; max forward step " + g3(step);
}

void c7_threshold_stable(Ctx& ctx, Check& ck) {
    const std::int64_t window = ctx.fast ? 1000 : 10000;
    const std::int64_t n1 = find_threshold_index(window);
    const std::int64_t n2 = find_threshold_index(2 * window);
    ck.require(n1 == n2, "threshold moved from " + int_str(n1) + " to " + int_str(n2) +
                             " when the window doubled");
    const double cap = constants().ratio_cap;
    auto ratio = [&](std::int64_t m) {
        return ctx.norms.get(m).norm / std::log(static_cast<double>(m) + 1.0);
    };
    for (std::int64_t m = n1; m <= n1 + window; ++m)
        ck.require(ratio(m) < cap, "ratio re-check failed at m = " + int_str(m));
    if (n1 > 1)
        ck.require(ratio(n1 - 1) >= cap, "threshold " + int_str(n1) + " is not minimal");
    ck.detail = "threshold index " + int_str(n1) + ", stable under window doubling";
}

void c8_identity_calibration(Ctx& ctx, Check& ck) {
    const std::int64_t j_max = 200;
    const QuotientSeries series =
        quotient_sequence(HoloMap::identity(), Weight::vlog(), j_max, GridConfig{},
                          Denominator::exact_norm, ctx.norms, ctx.pool);
    double worst = 0.0;
    for (const auto& t : series.terms) worst = std::max(worst, std::abs(t.q - 1.0));
    ck.require(worst <= 1e-6, "identity quotients off by " + g3(worst));

    const Classification cls = classify(series);
    ck.require(cls.bounded_evidence == Evidence::strong_yes,
               std::string("bounded evidence ") + evidence_name(cls.bounded_evidence));
    ck.require(cls.compact_evidence == Evidence::strong_no,
               std::string("compact evidence ") + evidence_name(cls.compact_evidence));

    const EssentialNormBand band = essential_norm_band(series, 0.25);
    const double ratio_const = constants().band_ratio;
    ck.require(std::abs(band.lower - 1.0) <= 1e-6, "band lower " + fp17(band.lower));
    ck.require(std::abs(band.upper - ratio_const) <= 1e-3,
               "band upper " + fp17(band.upper) + " vs constant " + fp17(ratio_const));
    ck.detail = "max |q-1| = " + g3(worst) + "; band [" + g3(band.lower) + ", " +
                fp17(band.upper) + "], constant " + fp17(ratio_const);
}

void c9_dilation_compactness(Ctx& ctx, Check& ck) {
    const std::int64_t j_max = 200;
    const QuotientSeries series =
        quotient_sequence(HoloMap::dilate(Complex(0.9, 0.0)), Weight::vlog(), j_max,
                          GridConfig{}, Denominator::exact_norm, ctx.norms, ctx.pool);
    double worst = 0.0;
    for (const auto& t : series.terms) {
        const double expected = std::pow(0.9, static_cast<double>(t.j));
        worst = std::max(worst, std::abs(t.q - expected) / expected);
    }
    ck.require(worst <= 1e-5, "dilation quotients off by rel " + g3(worst));
    const Classification cls = classify(series);
    ck.require(cls.compact_evidence == Evidence::strong_yes,
               std::string("compact evidence ") + evidence_name(cls.compact_evidence));
    ck.detail = "max rel err vs 0.9^j: " + g3(worst) + "; q_200 = " +
                g3(series.terms.back().q);
}

void c10_weight_equivalence(Ctx&, Check& ck) {
    const int grid = 10000;
    const double e1 = std::exp(1.0);
    double band_lo = 1.0, band_hi = 1.0;
    for (const double theta : {e1, 3.0, 10.0}) {
        const EquivalenceReport rep =
            equivalence_constants(Weight::logk(1, theta), Weight::logk(2, theta), grid);
        band_lo = std::min(band_lo, rep.ratio_min);
        band_hi = std::max(band_hi, rep.ratio_max);
        ck.require(rep.ratio_min >= 0.5,
                   "ratio_min " + fp17(rep.ratio_min) + " < 0.5 at theta = " + g3(theta));
        ck.require(rep.ratio_max <= 1.0,
                   "ratio_max " + fp17(rep.ratio_max) + " > 1 at theta = " + g3(theta));
    }
    const std::pair<Weight, Weight> crosses[] = {
        {Weight::logk(2, e1), Weight::logk(2, 3.0)},
        {Weight::logk(2, 3.0), Weight::logk(2, 10.0)},
        {Weight::logk(1, 3.0), Weight::logk(2, 10.0)},
    };
    for (const auto& [w1, w2] : crosses) {
        const EquivalenceReport rep = equivalence_constants(w1, w2, grid);
        ck.require(rep.ratio_min > 0.0 && std::isfinite(rep.ratio_max),
                   "cross band not finite for " + w1.spec() + " vs " + w2.spec());
    }
    ck.detail = "same-theta ratios within [" + g3(band_lo) + ", " + g3(band_hi) +
                "]; cross bands finite";
}

void c11_symbol_oracle(Ctx&, Check& ck) {
    const auto pts = interior_points(100, 0.85, 0x5eedful);
    const std::vector<HoloMap> battery = {
        HoloMap::identity(),
        HoloMap::constant(Complex(0.3, 0.2)),
        HoloMap::dilate(Complex(0.7, 0.0)),
        HoloMap::dilate(Complex(0.35, -0.2)),
        HoloMap::rotate(0.7),
        HoloMap::mobius(Complex(0.3, 0.0)),
        HoloMap::mobius(Complex(-0.2, 0.4)),
        HoloMap::power(5),
        HoloMap::poly({Complex(0.1, 0.0), Complex(0.2, 0.0), Complex(0.15, 0.0),
                       Complex(-0.1, 0.0)}),
        HoloMap::blaschke({Complex(0.5, 0.0), Complex(-0.5, 0.0)}),
        HoloMap::blaschke({Complex(0.0, 0.3), Complex(0.2, -0.1)}),
        HoloMap::compose(HoloMap::power(2), HoloMap::mobius(Complex(0.3, 0.0))),
        HoloMap::compose(HoloMap::mobius(Complex(0.3, 0.0)),
                         HoloMap::dilate(Complex(0.9, 0.0))),
    };
    const double h = 1e-6;
    double worst = 0.0;
    std::string worst_spec;
    for (const HoloMap& m : battery) {
        for (const Complex& z : pts) {
            const Complex fd = (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
            const Complex d = m.deriv(z);
            const double err = std::abs(fd - d) / std::max(1.0, std::abs(d));
            if (err > worst) {
                worst = err;
                worst_spec = m.spec();
            }
        }
    }
    ck.require(worst <= 1e-6,
               "finite-difference mismatch " + g3(worst) + " for symbol " + worst_spec);

    double worst_inv = 0.0;
    for (const Complex a : {Complex(0.3, 0.0), Complex(0.0, 0.5), Complex(-0.2, 0.4)}) {
        const HoloMap m = HoloMap::mobius(a);
        for (const Complex& z : pts)
            worst_inv = std::max(worst_inv, std::abs(m.eval(m.eval(z)) - z));
    }
    ck.require(worst_inv <= 1e-12, "involution defect " + g3(worst_inv));
    ck.detail = "max FD err " + g3(worst) + " across " + int_str(battery.size()) +
                " symbols; involution defect " + g3(worst_inv);
}

void c12_determinism(Ctx& ctx, Check& ck) {
    const std::int64_t j_max = ctx.fast ? 16 : 50;
    const HoloMap phi = HoloMap::mobius(Complex(0.3, 0.0));
    const Weight w = Weight::vlog();
    const GridConfig cfg;

    ThreadPool serial(1), wide(4);
    NormTable t1, t2;
    const std::string csv1 =
        quotients_csv(quotient_sequence(phi, w, j_max, cfg, Denominator::exact_norm, t1, serial));
    const std::string csv2 =
        quotients_csv(quotient_sequence(phi, w, j_max, cfg, Denominator::exact_norm, t2, wide));
    ck.require(csv1 == csv2, "CSV bytes differ between 1-thread and 4-thread runs");
    ck.detail = int_str(static_cast<std::int64_t>(csv1.size())) +
                " CSV bytes identical across thread counts";
}

struct Entry {
    int id;
    const char* name;
    double time_cap; // seconds; 0 = uncapped
    void (*fn)(Ctx&, Check&);
};

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log) {
    const int threads = opts.threads > 0 ? opts.threads : ThreadPool::default_thread_count();
    Ctx ctx{opts.fast, ThreadPool(threads), {}};

    const Entry entries[] = {
        {1, "engine-matches-exact-monomial-norms", 30.0, c1_engine_vs_exact},
        {2, "norm-asymptotics-band", 5.0, c2_norm_asymptotics},
        {3, "maximizer-root-identity", 0.0, c3_root_identity},
        {4, "gap-asymptotics", 0.0, c4_gap_asymptotics},
        {5, "power-envelope-monotone", 0.0, c5_envelope_monotone},
        {6, "profile-floor-and-decrease", 0.0, c6_profile_floor},
        {7, "ratio-threshold-stable", 0.0, c7_threshold_stable},
        {8, "identity-calibration-and-band", 0.0, c8_identity_calibration},
        {9, "dilation-compactness", 60.0, c9_dilation_compactness},
        {10, "weight-equivalence-bands", 0.0, c10_weight_equivalence},
        {11, "symbol-derivative-oracle", 0.0, c11_symbol_oracle},
        {12, "thread-count-determinism", 0.0, c12_determinism},
    };

    log << "acceptance suite (" << (opts.fast ? "fast" : "full") << ", " << threads
        << (threads == 1 ? " thread" : " threads") << ")\n";

    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        CriterionResult res;
        res.id = e.id;
        res.name = e.name;
        Check ck;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn(ctx, ck);
        } catch (const std::exception& ex) {
            ck.ok = false;
            ck.fail_why = std::string("exception: ") + ex.what();
        }
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ck.ok && e.time_cap > 0.0 && res.seconds > e.time_cap) {
            ck.ok = false;
            ck.fail_why = "runtime " + g3(res.seconds) + " s exceeded the " + g3(e.time_cap) +
                          " s cap";
        }
        res.pass = ck.ok;
        res.detail = ck.ok ? ck.detail : ck.fail_why;

        char head[32];
        std::snprintf(head, sizeof(head), "[%2d/12] ", e.id);
        log << head << (res.pass ? "PASS " : "FAIL ") << res.name << ": " << res.detail << " ("
            << g3(res.seconds) << " s)\n";
        log.flush();
        results.push_back(std::move(res));
    }

    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    log << (passed == 12 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << passed
        << "/12)\n";
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    if (results.empty()) return false;
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace blochlab
