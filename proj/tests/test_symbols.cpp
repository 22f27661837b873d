#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "blochlab/symbols.hpp"

using namespace blochlab;

namespace {

Complex fd_deriv(const HoloMap& f, Complex z, double h = 1e-6) {
    return (f.eval(z + Complex{h, 0.0}) - f.eval(z - Complex{h, 0.0})) / (2.0 * h);
}

} // namespace

TEST_CASE("pow_int") {
    CHECK(pow_int(Complex{2.0, 0.0}, 0) == Complex{1.0, 0.0});
    CHECK(pow_int(Complex{2.0, 0.0}, 10) == Complex{1024.0, 0.0});
    const Complex z{0.3, -0.4};
    Complex naive{1.0, 0.0};
    for (int i = 0; i < 13; ++i) naive *= z;
    CHECK(std::abs(pow_int(z, 13) - naive) <= 1e-15);
}

TEST_CASE("parsing and evaluation oracles") {
    SUBCASE("identity") {
        const HoloMap f = parse_symbol_spec("identity");
        CHECK(f.eval({0.5, 0.25}) == Complex{0.5, 0.25});
        CHECK(f.deriv({0.5, 0.25}) == Complex{1.0, 0.0});
        CHECK(f.spec() == "identity");
    }
    SUBCASE("dilate") {
        const HoloMap f = parse_symbol_spec("dilate:0.9");
        CHECK(std::abs(f.eval({0.5, 0.0}) - Complex{0.45, 0.0}) <= 1e-16);
        CHECK(f.deriv({0.1, 0.2}) == Complex{0.9, 0.0});
    }
    SUBCASE("rotate") {
        // angle in radians: a quarter turn sends 0.5 to 0.5i
        const HoloMap f = parse_symbol_spec("rotate:1.5707963267948966");
        const Complex w = f.eval({0.5, 0.0});
        CHECK(std::abs(w - Complex{0.0, 0.5}) <= 1e-15);
        CHECK(std::abs(std::abs(f.deriv({0.0, 0.0})) - 1.0) <= 1e-15);
    }
    SUBCASE("mobius") {
        const HoloMap f = parse_symbol_spec("mobius:0.3,0.0");
        CHECK(std::abs(f.eval({0.0, 0.0}) - Complex{0.3, 0.0}) <= 1e-16);
        CHECK(std::abs(f.eval({0.3, 0.0})) <= 1e-16);
    }
    SUBCASE("power") {
        const HoloMap f = parse_symbol_spec("power:3");
        CHECK(std::abs(f.eval({0.5, 0.0}) - Complex{0.125, 0.0}) <= 1e-16);
        CHECK(std::abs(f.deriv({0.5, 0.0}) - Complex{0.75, 0.0}) <= 1e-15);
    }
    SUBCASE("constant") {
        const HoloMap f = parse_symbol_spec("constant:0.1,-0.2");
        CHECK(f.eval({0.7, 0.0}) == Complex{0.1, -0.2});
        CHECK(f.deriv({0.7, 0.0}) == Complex{0.0, 0.0});
        CHECK(f.is_constant());
    }
    SUBCASE("poly") {
        const HoloMap f = parse_symbol_spec("poly:0.0,0.5,0.25");
        // 0.5 z + 0.25 z^2 at z = 0.4
        CHECK(std::abs(f.eval({0.4, 0.0}) - Complex{0.24, 0.0}) <= 1e-15);
        CHECK(std::abs(f.deriv({0.4, 0.0}) - Complex{0.7, 0.0}) <= 1e-15);
    }
    SUBCASE("blaschke") {
        const HoloMap f = parse_symbol_spec("blaschke:0.5,0.0;-0.5,0.0");
        // product of two factors at z = 0: (0.5)(-0.5) = -0.25
        CHECK(std::abs(f.eval({0.0, 0.0}) - Complex{-0.25, 0.0}) <= 1e-15);
    }
    SUBCASE("compose") {
        const HoloMap f = parse_symbol_spec("compose(power:2,mobius:0.3,0.0)");
        CHECK(std::abs(f.eval({0.0, 0.0}) - Complex{0.09, 0.0}) <= 1e-16);
        // chain rule sanity via finite differences
        const Complex z{0.2, 0.1};
        CHECK(std::abs(f.deriv(z) - fd_deriv(f, z)) <= 1e-8);
    }
}

TEST_CASE("parse failures") {
    CHECK_THROWS_AS(parse_symbol_spec("foo"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol_spec("mobius:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol_spec("compose(identity"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol_spec("poly:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol_spec("power:0"), std::domain_error);
    CHECK_THROWS_AS(parse_symbol_spec("mobius:1.0,0.0"), std::domain_error);
    CHECK_THROWS_AS(parse_symbol_spec("dilate:1.5"), std::domain_error);
    CHECK_THROWS_AS(parse_symbol_spec("constant:2.0"), std::domain_error);
    CHECK_THROWS_AS(parse_symbol_spec("blaschke:1.0,0.0"), std::domain_error);
}

TEST_CASE("spec round trip") {
    for (const char* s : {"identity", "dilate:0.9", "rotate:0.25", "mobius:0.3,0",
                          "power:3", "constant:0.1,-0.2", "poly:0,0.5,0.25",
                          "blaschke:0.5,0;-0.5,0", "compose(power:2,mobius:0.3,0)"}) {
        const HoloMap f = parse_symbol_spec(s);
        const HoloMap g = parse_symbol_spec(f.spec());
        const Complex z{0.31, -0.17};
        CHECK(std::abs(f.eval(z) - g.eval(z)) <= 1e-15);
        CHECK(std::abs(f.deriv(z) - g.deriv(z)) <= 1e-15);
    }
}

TEST_CASE("disk automorphism involution") {
    for (const Complex a : {Complex{0.3, 0.0}, Complex{0.0, 0.5}, Complex{-0.2, 0.4}}) {
        const HoloMap f = HoloMap::mobius(a);
        for (const Complex z : {Complex{0.0, 0.0}, Complex{0.4, -0.3}, Complex{-0.55, 0.1}}) {
            CHECK(std::abs(f.eval(f.eval(z)) - z) <= 1e-12);
        }
        CHECK(std::abs(f.eval({0.0, 0.0}) - a) <= 1e-16);
        CHECK(std::abs(f.eval(a)) <= 1e-15);
    }
}

TEST_CASE("power_deriv closed forms") {
    SUBCASE("identity symbol") {
        const HoloMap id = HoloMap::identity();
        const Complex z{0.6, 0.2};
        for (const std::int64_t j : {std::int64_t{1}, std::int64_t{4}, std::int64_t{9}}) {
            const Complex expect = static_cast<double>(j) * pow_int(z, j - 1);
            CHECK(std::abs(power_deriv(id, j, z) - expect) <= 1e-13);
        }
    }
    SUBCASE("dilation symbol") {
        const HoloMap f = HoloMap::dilate(0.7);
        const Complex z{0.5, -0.25};
        const std::int64_t j = 6;
        const Complex expect =
            static_cast<double>(j) * std::pow(Complex{0.7, 0.0}, static_cast<double>(j)) * pow_int(z, j - 1);
        CHECK(std::abs(power_deriv(f, j, z) - expect) <= 1e-12);
    }
    SUBCASE("finite differences for a Mobius symbol") {
        const HoloMap f = HoloMap::mobius({0.3, 0.0});
        const std::int64_t j = 7;
        const Complex z{0.25, 0.15};
        auto phi_pow = [&](Complex w) { return pow_int(f.eval(w), j); };
        const double h = 1e-6;
        const Complex fd = (phi_pow(z + Complex{h, 0.0}) - phi_pow(z - Complex{h, 0.0})) / (2.0 * h);
        CHECK(std::abs(power_deriv(f, j, z) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("self-map validation") {
    SUBCASE("holomorphic self-maps pass structurally") {
        for (const char* s : {"identity", "dilate:0.5", "mobius:0.3,0.0", "blaschke:0.5,0.0;-0.5,0.0"}) {
            const SelfMapReport rep = validate_self_map(parse_symbol_spec(s), 4096);
            CHECK(rep.pass);
            CHECK(rep.max_modulus < 1.0 + 1e-12);
        }
    }
    SUBCASE("dilation maximum is near the dilation factor") {
        const SelfMapReport rep = validate_self_map(parse_symbol_spec("dilate:0.5"), 4096);
        CHECK(rep.max_modulus == doctest::Approx(0.5).epsilon(1e-6));
    }
    SUBCASE("an escaping polynomial is rejected with its witness") {
        const SelfMapReport rep = validate_self_map(parse_symbol_spec("poly:0.6,0.6"), 4096);
        CHECK_FALSE(rep.pass);
        CHECK(rep.max_modulus == doctest::Approx(1.2).epsilon(1e-6));
        CHECK(std::abs(rep.arg_max) > 0.99);
    }
    SUBCASE("composition through an escaping inner map fails loudly") {
        const HoloMap bad = HoloMap::compose(HoloMap::mobius({0.3, 0.0}),
                                             parse_symbol_spec("poly:0.6,0.6"));
        const SelfMapReport rep = validate_self_map(bad, 4096);
        CHECK_FALSE(rep.pass);
        CHECK(std::isinf(rep.max_modulus));
    }
    CHECK_THROWS_AS(validate_self_map(HoloMap::identity(), 100), std::invalid_argument);
}

TEST_CASE("compose depth cap") {
    HoloMap f = HoloMap::identity();
    for (int i = 0; i < 31; ++i) f = HoloMap::compose(HoloMap::dilate(0.99), f);
    CHECK_THROWS_AS(HoloMap::compose(HoloMap::dilate(0.99), HoloMap::compose(HoloMap::dilate(0.99), f)),
                    std::domain_error);
}

TEST_CASE("rotation invariance of the modulus") {
    const HoloMap rot = HoloMap::rotate(0.37);
    for (const Complex z : {Complex{0.2, 0.3}, Complex{-0.5, 0.1}}) {
        CHECK(std::abs(std::abs(rot.eval(z)) - std::abs(z)) <= 1e-15);
        CHECK(std::abs(std::abs(rot.deriv(z)) - 1.0) <= 1e-15);
    }
}
