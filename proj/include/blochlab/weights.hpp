#pragma once

#include <complex>
#include <functional>
#include <string>

namespace blochlab {

using Complex = std::complex<double>;

// The log profile d -> d*log(theta/d), the common shape of all logarithmic
// weights here (d plays the role of the boundary gap 1-r^k). Evaluated as
// d*(log(theta) - log(d)) so it stays accurate when d underflows toward 0.
// Extended by continuity with value 0 at d = 0.
double log_profile(double theta, double d);

// A weight: an evaluable, strictly positive, bounded function on the open
// unit disk. Built-ins are radial; custom planar weights exist only to feed
// the 2-D sup engine.
class Weight {
public:
    enum class Kind { Alpha, LogK, Custom };

    // (1 - r^2)^alpha, alpha >= 0. alpha = 1 is the classic Bloch weight.
    static Weight alpha(double a);
    // (1 - r^k) * log(theta / (1 - r^k)), k in {1,2}, theta > 1.
    static Weight logk(int k, double theta);
    // The distinguished logarithmic weight (1 - r) * log(3 / (1 - r)).
    static Weight vlog();
    static Weight classic(); // alias for alpha(1)
    static Weight custom_radial(std::string name, std::function<double(double)> profile);
    static Weight custom_planar(std::string name, std::function<double(const Complex&)> profile);

    Kind kind() const { return kind_; }
    bool radial() const { return radial_; }
    // Canonical spec string ("vlog", "alpha:1", "logk:2,3", custom name).
    const std::string& spec() const { return spec_; }

    // Radial evaluation at r in [0,1). Throws std::domain_error outside,
    // std::logic_error for non-radial weights.
    double operator()(double r) const;

    // Planar evaluation; for radial weights this is operator()(|z|).
    double at(const Complex& z) const;

    double alpha_exponent() const { return alpha_; }
    int logk_order() const { return k_; }
    double logk_theta() const { return theta_; }

private:
    Weight() = default;

    Kind kind_ = Kind::Alpha;
    bool radial_ = true;
    double alpha_ = 1.0;
    int k_ = 1;
    double theta_ = 3.0;
    std::string spec_;
    std::function<double(double)> profile_;
    std::function<double(const Complex&)> planar_;
};

// Grammar: `alpha:<a>` | `logk:<k>,<theta>` | `vlog` | `classic`.
// Malformed text -> std::invalid_argument naming the offending token;
// out-of-domain parameters (theta <= 1, alpha < 0, k not in {1,2}) ->
// std::domain_error.
Weight parse_weight_spec(const std::string& text);

struct EquivalenceReport {
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double argmin_r = 0.0;
    double argmax_r = 0.0;
    int grid_size = 0;
};

// Min/max of w1(r)/w2(r) over the boundary-clustered grid
// r_i = 1 - 2^(-14 i / grid_size), i = 0..grid_size. Both weights must be
// radial (std::invalid_argument otherwise); grid_size >= 2.
EquivalenceReport equivalence_constants(const Weight& w1, const Weight& w2, int grid_size);

struct SquareEquivalence {
    bool pass = false;
    double margin = 0.0; // minimal slack of the two-sided sandwich over the grid
    double arg_r = 0.0;  // radius where the slack is tightest
};

// Checks 0.5 * P(1 - r^2) <= P(1 - r) <= P(1 - r^2) on the clustered radius
// grid, where P is the log profile for this theta. Requires theta >= e
// (std::domain_error below), since the profile must be nondecreasing.
SquareEquivalence check_square_equivalence(double theta, int grid_size);

} // namespace blochlab
