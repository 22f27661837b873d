#include "blochlab/weights.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "blochlab/format.hpp"
#include "blochlab/grid.hpp"

namespace blochlab {

double log_profile(double theta, double d) {
    if (!(theta > 1.0)) throw std::domain_error("log_profile: theta must be > 1");
    if (!(d >= 0.0 && d <= 1.0)) throw std::domain_error("log_profile: d must lie in [0,1]");
    if (d == 0.0) return 0.0;
    return d * (std::log(theta) - std::log(d));
}

namespace {

// Boundary gap 1 - r^k without cancellation. For k = 1, 1 - r is already
// exact when r >= 0.5 (Sterbenz) and harmless below; for k = 2 the factored
// form (1-r)(1+r) avoids the catastrophic 1 - r*r.
double gap_pow(double r, int k) {
    return k == 1 ? 1.0 - r : (1.0 - r) * (1.0 + r);
}

void check_radius(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::domain_error("weight evaluation: radius must lie in [0,1), got " + fp17(r));
}

} // namespace

Weight Weight::alpha(double a) {
    if (!(a >= 0.0)) throw std::domain_error("alpha weight: exponent must be >= 0");
    Weight w;
    w.kind_ = Kind::Alpha;
    w.alpha_ = a;
    w.spec_ = "alpha:" + fp17(a);
    return w;
}

Weight Weight::logk(int k, double theta) {
    if (k != 1 && k != 2) throw std::domain_error("logk weight: k must be 1 or 2");
    if (!(theta > 1.0)) throw std::domain_error("logk weight: theta must be > 1");
    Weight w;
    w.kind_ = Kind::LogK;
    w.k_ = k;
    w.theta_ = theta;
    w.spec_ = (k == 1 && theta == 3.0) ? "vlog" : "logk:" + int_str(k) + "," + fp17(theta);
    return w;
}

Weight Weight::vlog() { return logk(1, 3.0); }

Weight Weight::classic() {
    Weight w = alpha(1.0);
    w.spec_ = "classic";
    return w;
}

Weight Weight::custom_radial(std::string name, std::function<double(double)> profile) {
    Weight w;
    w.kind_ = Kind::Custom;
    w.radial_ = true;
    w.spec_ = std::move(name);
    w.profile_ = std::move(profile);
    return w;
}

Weight Weight::custom_planar(std::string name, std::function<double(const Complex&)> profile) {
    Weight w;
    w.kind_ = Kind::Custom;
    w.radial_ = false;
    w.spec_ = std::move(name);
    w.planar_ = std::move(profile);
    return w;
}

double Weight::operator()(double r) const {
    if (!radial_) throw std::logic_error("weight '" + spec_ + "' is not radial");
    check_radius(r);
    switch (kind_) {
        case Kind::Alpha: {
            const double d2 = gap_pow(r, 2);
            return alpha_ == 1.0 ? d2 : std::pow(d2, alpha_);
        }
        case Kind::LogK:
            return log_profile(theta_, gap_pow(r, k_));
        case Kind::Custom:
            return profile_(r);
    }
    throw std::logic_error("weight: unreachable kind");
}

double Weight::at(const Complex& z) const {
    if (radial_) return (*this)(std::abs(z));
    if (std::abs(z) >= 1.0)
        throw std::domain_error("weight evaluation: |z| must be < 1");
    return planar_(z);
}

namespace {

double parse_real(const std::string& tok, const char* what) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw std::invalid_argument(std::string("weight spec: bad ") + what + " '" + tok + "'");
    return v;
}

} // namespace

Weight parse_weight_spec(const std::string& text) {
    if (text == "vlog") return Weight::vlog();
    if (text == "classic") return Weight::classic();
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (head == "alpha") {
        if (colon == std::string::npos)
            throw std::invalid_argument("weight spec: 'alpha' needs an exponent, e.g. alpha:1");
        return Weight::alpha(parse_real(text.substr(colon + 1), "exponent"));
    }
    if (head == "logk") {
        if (colon == std::string::npos)
            throw std::invalid_argument("weight spec: 'logk' needs parameters, e.g. logk:1,3");
        const std::string args = text.substr(colon + 1);
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("weight spec: 'logk' needs <k>,<theta>, got '" + args + "'");
        const double kd = parse_real(args.substr(0, comma), "order k");
        if (kd != 1.0 && kd != 2.0)
            throw std::domain_error("weight spec: k must be 1 or 2, got '" + args.substr(0, comma) + "'");
        return Weight::logk(static_cast<int>(kd), parse_real(args.substr(comma + 1), "theta"));
    }
    throw std::invalid_argument("weight spec: unknown kind '" + head + "'");
}

EquivalenceReport equivalence_constants(const Weight& w1, const Weight& w2, int grid_size) {
    if (!w1.radial() || !w2.radial())
        throw std::invalid_argument("equivalence_constants: both weights must be radial");
    if (grid_size < 2) throw std::invalid_argument("equivalence_constants: grid_size must be >= 2");

    const auto radii = equivalence_radii(grid_size);
    EquivalenceReport rep;
    rep.grid_size = grid_size;
    rep.ratio_min = std::numeric_limits<double>::infinity();
    rep.ratio_max = -std::numeric_limits<double>::infinity();
    for (const double r : radii) {
        const double ratio = w1(r) / w2(r);
        if (ratio < rep.ratio_min) {
            rep.ratio_min = ratio;
            rep.argmin_r = r;
        }
        if (ratio > rep.ratio_max) {
            rep.ratio_max = ratio;
            rep.argmax_r = r;
        }
    }
    return rep;
}

SquareEquivalence check_square_equivalence(double theta, int grid_size) {
    if (!(theta >= std::exp(1.0)))
        throw std::domain_error("check_square_equivalence: requires theta >= e");
    if (grid_size < 2)
        throw std::invalid_argument("check_square_equivalence: grid_size must be >= 2");

    const auto radii = equivalence_radii(grid_size);
    SquareEquivalence out;
    out.margin = std::numeric_limits<double>::infinity();
    for (const double r : radii) {
        const double narrow = log_profile(theta, gap_pow(r, 1)); // P(1 - r)
        const double wide = log_profile(theta, gap_pow(r, 2));   // P(1 - r^2)
        const double slack = std::min(narrow - 0.5 * wide, wide - narrow);
        if (slack < out.margin) {
            out.margin = slack;
            out.arg_r = r;
        }
    }
    out.pass = out.margin >= 0.0;
    return out;
}

} // namespace blochlab
