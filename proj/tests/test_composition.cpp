#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blochlab/composition.hpp"
#include "blochlab/constants.hpp"

using namespace blochlab;

namespace {

GridConfig quick_cfg() {
    GridConfig cfg;
    cfg.n_radii = 192;
    cfg.n_angles = 96;
    cfg.refine_rounds = 5;
    return cfg;
}

// Hand-built series for the classifier, bypassing the engine.
QuotientSeries synthetic(const std::vector<double>& qs) {
    QuotientSeries s;
    s.symbol_spec = "synthetic";
    s.weight_spec = "vlog";
    s.denominator = Denominator::exact_norm;
    s.j_max = static_cast<std::int64_t>(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        QuotientTerm t;
        t.j = static_cast<std::int64_t>(i) + 1;
        t.q = qs[i];
        t.numerator = qs[i];
        t.denominator = 1.0;
        s.terms.push_back(t);
    }
    return s;
}

} // namespace

TEST_CASE("identity symbol calibrates the quotients to one") {
    NormTable norms;
    ThreadPool pool(2);
    const QuotientSeries series = quotient_sequence(HoloMap::identity(), Weight::vlog(), 16,
                                                    quick_cfg(), Denominator::exact_norm,
                                                    norms, pool);
    REQUIRE(series.terms.size() == 16);
    for (const QuotientTerm& t : series.terms) {
        CHECK(t.j >= 1);
        CHECK(t.q == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t.denominator == norms.get(t.j).norm);
        CHECK_FALSE(t.sup.diverged);
    }
}

TEST_CASE("constant symbol yields the zero sequence") {
    NormTable norms;
    ThreadPool pool(2);
    const QuotientSeries series = quotient_sequence(HoloMap::constant({0.4, 0.1}), Weight::vlog(),
                                                    12, quick_cfg(), Denominator::exact_norm,
                                                    norms, pool);
    for (const QuotientTerm& t : series.terms) {
        CHECK(t.q == 0.0);
        CHECK(t.numerator == 0.0);
    }
    const Classification cls = classify(series);
    CHECK(cls.bounded_evidence == Evidence::strong_yes);
    CHECK(cls.compact_evidence == Evidence::strong_yes);
}

TEST_CASE("dilation quotients decay geometrically") {
    NormTable norms;
    ThreadPool pool(2);
    const QuotientSeries series = quotient_sequence(HoloMap::dilate(0.5), Weight::vlog(), 24,
                                                    quick_cfg(), Denominator::exact_norm,
                                                    norms, pool);
    for (const QuotientTerm& t : series.terms)
        CHECK(t.q == doctest::Approx(std::pow(0.5, static_cast<double>(t.j))).epsilon(1e-9));
    const Classification cls = classify(series);
    CHECK(cls.bounded_evidence == Evidence::strong_yes);
    CHECK(cls.compact_evidence == Evidence::strong_yes);
    CHECK(cls.tail_trend < 0.0);
}

TEST_CASE("mobius symbol produces a finite, classified sequence") {
    NormTable norms;
    ThreadPool pool(2);
    const QuotientSeries series = quotient_sequence(parse_symbol_spec("mobius:0.3,0.0"),
                                                    Weight::vlog(), 12, quick_cfg(),
                                                    Denominator::exact_norm, norms, pool);
    for (const QuotientTerm& t : series.terms) {
        CHECK(std::isfinite(t.q));
        CHECK(t.q > 0.0);
    }
    const Classification cls = classify(series);
    CHECK_FALSE(cls.notes.empty());
    CHECK(cls.sup_q >= cls.tail_max_q);
}

TEST_CASE("non-self-maps are refused unless forced") {
    NormTable norms;
    ThreadPool pool(2);
    const HoloMap bad = parse_symbol_spec("poly:0.6,0.6");
    CHECK_THROWS_AS(quotient_sequence(bad, Weight::vlog(), 8, quick_cfg(),
                                      Denominator::exact_norm, norms, pool),
                    SelfMapError);
    const QuotientSeries forced = quotient_sequence(bad, Weight::vlog(), 8, quick_cfg(),
                                                    Denominator::exact_norm, norms, pool,
                                                    /*force=*/true);
    CHECK(forced.terms.size() == 8);
}

TEST_CASE("classifier semantics on synthetic series") {
    SUBCASE("needs at least eight terms") {
        CHECK_THROWS_AS(classify(synthetic({1, 1, 1, 1, 1, 1, 1})), std::invalid_argument);
    }
    SUBCASE("geometric decay reads as compact") {
        std::vector<double> qs;
        for (int j = 1; j <= 32; ++j) qs.push_back(std::pow(2.0, -j));
        const Classification cls = classify(synthetic(qs));
        CHECK(cls.bounded_evidence == Evidence::strong_yes);
        CHECK(cls.compact_evidence == Evidence::strong_yes);
    }
    SUBCASE("flat unit sequence reads bounded, not compact") {
        const Classification cls = classify(synthetic(std::vector<double>(32, 1.0)));
        CHECK(cls.bounded_evidence == Evidence::strong_yes);
        CHECK(cls.compact_evidence == Evidence::strong_no);
        CHECK(cls.tail_max_q == 1.0);
    }
    SUBCASE("sustained growth reads unbounded") {
        std::vector<double> qs;
        for (int j = 1; j <= 32; ++j) qs.push_back(std::pow(1.5, j));
        const Classification cls = classify(synthetic(qs));
        CHECK(cls.bounded_evidence == Evidence::strong_no);
        CHECK(cls.compact_evidence == Evidence::strong_no);
        CHECK(cls.tail_trend > 0.0);
    }
    SUBCASE("a diverged term forces strong_no") {
        QuotientSeries s = synthetic(std::vector<double>(16, 0.5));
        s.terms[10].sup.diverged = true;
        const Classification cls = classify(s);
        CHECK(cls.bounded_evidence == Evidence::strong_no);
    }
}

TEST_CASE("essential norm band") {
    SUBCASE("band edges on a flat series") {
        const QuotientSeries s = synthetic(std::vector<double>(16, 1.0));
        const EssentialNormBand band = essential_norm_band(s);
        CHECK(band.E_est == 1.0);
        CHECK(band.lower == 1.0);
        CHECK(band.upper == doctest::Approx(constants().band_ratio).epsilon(1e-15));
    }
    SUBCASE("tail window picks the last quarter") {
        std::vector<double> qs;
        for (int j = 1; j <= 16; ++j) qs.push_back(1.0 / j);
        const EssentialNormBand band = essential_norm_band(synthetic(qs), 0.25);
        CHECK(band.E_est == doctest::Approx(1.0 / 13.0).epsilon(1e-15));
    }
    SUBCASE("input validation") {
        const QuotientSeries s = synthetic(std::vector<double>(16, 1.0));
        CHECK_THROWS_AS(essential_norm_band(s, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(essential_norm_band(s, 1.5), std::invalid_argument);

        QuotientSeries logden = s;
        logden.denominator = Denominator::log_j_plus_1;
        CHECK_THROWS_AS(essential_norm_band(logden), std::invalid_argument);

        QuotientSeries diverged = s;
        diverged.terms.back().sup.diverged = true;
        CHECK_THROWS_AS(essential_norm_band(diverged), std::runtime_error);

        std::vector<double> rising;
        for (int j = 1; j <= 32; ++j) rising.push_back(std::pow(1.5, j));
        CHECK_THROWS_AS(essential_norm_band(synthetic(rising)), std::runtime_error);
    }
}

TEST_CASE("log denominator stays within the comparison corridor") {
    // exact norm / log(j+1) lies in (1/e, log3/log2] for all j, so swapping
    // denominators rescales each quotient by a factor in the inverse corridor.
    NormTable norms;
    ThreadPool pool(2);
    const GridConfig cfg = quick_cfg();
    const QuotientSeries exact = quotient_sequence(HoloMap::identity(), Weight::vlog(), 64, cfg,
                                                   Denominator::exact_norm, norms, pool);
    const QuotientSeries logd = quotient_sequence(HoloMap::identity(), Weight::vlog(), 64, cfg,
                                                  Denominator::log_j_plus_1, norms, pool);
    for (std::size_t i = 0; i < exact.terms.size(); ++i) {
        const double scale = logd.terms[i].q / exact.terms[i].q;
        CHECK(scale > 1.0 / std::exp(1.0) - 0.05);
        CHECK(scale < std::log(3.0) / std::log(2.0) + 0.05);
        CHECK(logd.terms[i].denominator ==
              std::log(static_cast<double>(exact.terms[i].j) + 1.0));
    }
}

TEST_CASE("annuli diagnostic") {
    SUBCASE("constant zero lands every sample in the first band") {
        const AnnuliHistogram h = annuli_diagnostic(HoloMap::constant({0.0, 0.0}), 8, 4096);
        REQUIRE(h.counts.size() == 8);
        CHECK(h.counts[0] == h.samples);
        CHECK(h.overflow == 0);
    }
    SUBCASE("counts partition the sample") {
        const AnnuliHistogram h = annuli_diagnostic(parse_symbol_spec("mobius:0.5,0.0"), 16, 8192);
        long total = h.overflow;
        for (const long c : h.counts) total += c;
        CHECK(total == h.samples);
        CHECK(h.overflow > 0); // Mobius pushes mass to the boundary past band 16
    }
    SUBCASE("sample floor") {
        CHECK_THROWS_AS(annuli_diagnostic(HoloMap::identity(), 8, 32), std::invalid_argument);
    }
}

TEST_CASE("direct transfer ratios") {
    NormTable norms;
    ThreadPool pool(2);
    const GridConfig cfg = quick_cfg();
    const std::vector<TestFunction> family = default_transfer_family(norms);
    REQUIRE(family.size() >= 6);

    SUBCASE("identity symbol transfers at ratio one") {
        const TransferReport rep =
            direct_transfer_check(HoloMap::identity(), Weight::vlog(), family, cfg, pool);
        CHECK(rep.finite);
        for (const TransferRatio& r : rep.ratios) {
            CHECK(std::isfinite(r.ratio));
            // all family members vanish at the origin, so the composed
            // semi-norm equals the source semi-norm exactly
            CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("dilation scales the pure powers") {
        const TransferReport rep =
            direct_transfer_check(HoloMap::dilate(0.5), Weight::vlog(), family, cfg, pool);
        for (const TransferRatio& r : rep.ratios) {
            if (r.name == "monomial_10")
                CHECK(r.ratio == doctest::Approx(std::pow(0.5, 10)).epsilon(1e-5));
        }
        CHECK(rep.max_ratio <= 1.0 + 1e-9);
    }
}
