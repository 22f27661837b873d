#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blochlab/grid.hpp"
#include "blochlab/weights.hpp"

using namespace blochlab;

TEST_CASE("weight spec parsing") {
    CHECK(parse_weight_spec("vlog").kind() == Weight::Kind::LogK);
    CHECK(parse_weight_spec("vlog").logk_order() == 1);
    CHECK(parse_weight_spec("vlog").logk_theta() == doctest::Approx(3.0));

    const Weight classic = parse_weight_spec("classic");
    const Weight alpha1 = parse_weight_spec("alpha:1");
    for (double r = 0.0; r < 1.0; r += 0.05) CHECK(classic(r) == alpha1(r));

    const Weight le = parse_weight_spec("logk:2,2.718281828459045");
    CHECK(le.logk_order() == 2);
    CHECK(le.logk_theta() == doctest::Approx(std::exp(1.0)));

    CHECK_THROWS_AS(parse_weight_spec("nope"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_spec("alpha:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_spec("logk:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_spec("logk:3,5"), std::domain_error);
    CHECK_THROWS_AS(parse_weight_spec("logk:1,0.5"), std::domain_error);
    CHECK_THROWS_AS(parse_weight_spec("alpha:-1"), std::domain_error);
}

TEST_CASE("weight evaluation") {
    const Weight v = Weight::vlog();
    CHECK(v(0.0) == doctest::Approx(1.0986122886681098).epsilon(1e-15));
    CHECK(v(0.9) == doctest::Approx(0.34011973816621555).epsilon(1e-14));
    CHECK(Weight::alpha(1.0)(0.5) == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_THROWS_AS(v(1.0), std::domain_error);
    CHECK_THROWS_AS(v(-0.1), std::domain_error);
    CHECK_THROWS_AS(v(1.5), std::domain_error);

    SUBCASE("positive, finite, bounded on a dense clustered grid") {
        const Weight battery[] = {Weight::vlog(), Weight::classic(), Weight::alpha(0.0),
                                  Weight::alpha(2.5), Weight::logk(2, std::exp(1.0)),
                                  Weight::logk(1, 10.0)};
        for (const Weight& w : battery) {
            double sup = 0.0;
            for (const double r : equivalence_radii(2000)) {
                const double val = w(r);
                CHECK(val > 0.0);
                CHECK(std::isfinite(val));
                sup = std::max(sup, val);
            }
            CHECK(std::isfinite(sup));
        }
    }

    SUBCASE("planar evaluation matches radial for radial weights") {
        const Complex z = std::polar(0.7, 1.1);
        CHECK(v.at(z) == doctest::Approx(v(std::abs(z))).epsilon(1e-15));
        CHECK_THROWS_AS(v.at(Complex(1.0, 0.5)), std::domain_error);
    }
}

TEST_CASE("log profile shape") {
    SUBCASE("nondecreasing on (0,1] when theta >= e") {
        for (const double theta : {std::exp(1.0), 3.0, 10.0}) {
            double prev = 0.0; // value at d -> 0+
            for (int i = 1; i <= 10000; ++i) {
                const double d = static_cast<double>(i) / 10000;
                const double val = log_profile(theta, d);
                CHECK(val >= prev);
                prev = val;
            }
        }
    }

    SUBCASE("half-scaling for any theta > 1") {
        for (const double theta : {1.5, 2.0, 3.0, 10.0}) {
            for (int i = 1; i <= 5000; ++i) {
                const double t = static_cast<double>(i) / 5000;
                CHECK(log_profile(theta, t / 2) >= 0.5 * log_profile(theta, t) - 1e-15);
            }
        }
    }

    CHECK(log_profile(3.0, 0.0) == 0.0);
    CHECK_THROWS_AS(log_profile(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(log_profile(3.0, 1.5), std::domain_error);
}

TEST_CASE("equivalence constants") {
    SUBCASE("identity ratio") {
        const EquivalenceReport rep = equivalence_constants(Weight::vlog(), Weight::vlog(), 100);
        CHECK(rep.ratio_min == 1.0);
        CHECK(rep.ratio_max == 1.0);
        CHECK(rep.grid_size == 100);
    }

    SUBCASE("narrow-vs-wide gap sandwich") {
        const EquivalenceReport rep =
            equivalence_constants(Weight::logk(1, 3.0), Weight::logk(2, 3.0), 10000);
        CHECK(rep.ratio_min >= 0.5);
        CHECK(rep.ratio_max <= 1.0);
    }

    SUBCASE("symmetry under swapping") {
        const Weight w1 = Weight::logk(2, std::exp(1.0));
        const Weight w2 = Weight::logk(2, 10.0);
        const EquivalenceReport fwd = equivalence_constants(w1, w2, 5000);
        const EquivalenceReport bwd = equivalence_constants(w2, w1, 5000);
        CHECK(fwd.ratio_min == doctest::Approx(1.0 / bwd.ratio_max).epsilon(1e-14));
        CHECK(fwd.ratio_max == doctest::Approx(1.0 / bwd.ratio_min).epsilon(1e-14));
    }

    SUBCASE("non-radial weights are rejected") {
        const Weight planar =
            Weight::custom_planar("tilt", [](const Complex& z) { return 1.0 + z.real() * 0.1; });
        CHECK_THROWS_AS(equivalence_constants(planar, Weight::vlog(), 100), std::invalid_argument);
        CHECK_THROWS_AS(equivalence_constants(Weight::vlog(), Weight::vlog(), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("square-gap sandwich") {
    for (const double theta : {std::exp(1.0), 3.0, 10.0}) {
        const SquareEquivalence check = check_square_equivalence(theta, 10000);
        CHECK(check.pass);
        CHECK(check.margin >= 0.0);
    }
    CHECK_THROWS_AS(check_square_equivalence(2.0, 100), std::domain_error);
}
