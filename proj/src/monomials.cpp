#include "blochlab/monomials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blochlab/constants.hpp"
#include "blochlab/format.hpp"
#include "blochlab/search.hpp"

namespace blochlab {

namespace {

void check_gap(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("gap argument must lie in (0,1), got " + fp17(s));
}

void check_index(std::int64_t j) {
    if (j < 1) throw std::domain_error("monomial index must be >= 1, got " + int_str(j));
}

} // namespace

double annulus_radius(std::int64_t j) {
    if (j < 0) throw std::domain_error("annulus_radius: index must be >= 0");
    if (j == 0) return 0.0;
    const double L = constants().L;
    return 1.0 - L / (static_cast<double>(j) + L);
}

double maximizer_equation(std::int64_t j, double s) {
    check_index(j);
    check_gap(s);
    // log(3/s) as log3 - log(s): no cancellation, exact at tiny s.
    const double log3s = constants().log3 - std::log(s);
    return (static_cast<double>(j) * s - 1.0) * log3s + 1.0 - s;
}

double monomial_profile_gap(std::int64_t j, double s) {
    check_index(j);
    if (!(s > 0.0 && s <= 1.0))
        throw std::domain_error("monomial_profile_gap: s must lie in (0,1]");
    const double log3s = constants().log3 - std::log(s);
    // (1-s)^(j-1) = exp((j-1)*log(1-s)); log1p keeps it honest when s ~ 1/j.
    const double tpow = std::exp(static_cast<double>(j - 1) * std::log1p(-s));
    return static_cast<double>(j) * tpow * s * log3s;
}

double monomial_profile(std::int64_t j, double t) {
    check_index(j);
    if (!(t >= 0.0 && t < 1.0))
        throw std::domain_error("monomial_profile: t must lie in [0,1), got " + fp17(t));
    if (t == 0.0) return j == 1 ? constants().log3 : 0.0;
    return monomial_profile_gap(j, 1.0 - t);
}

double normalized_monomial_profile(std::int64_t j, double t) {
    return monomial_profile(j, t) / std::log(static_cast<double>(j) + 1.0);
}

double power_envelope(double x) {
    if (!(x >= 1.0)) throw std::domain_error("power_envelope: x must be >= 1");
    const double L = constants().L;
    // (x/(x+L))^(x-1) = exp(-(x-1)*log(1 + L/x)).
    return std::exp(-(x - 1.0) * std::log1p(L / x));
}

namespace {

// d/ds of the maximizer equation: j*(log(3/s) - 1) + 1/s - 1, positive on
// (0,1) for every j >= 1, which is what makes the bisection safeguard valid.
double maximizer_slope(std::int64_t j, double s) {
    const double log3s = constants().log3 - std::log(s);
    return static_cast<double>(j) * (log3s - 1.0) + 1.0 / s - 1.0;
}

} // namespace

GapRoot solve_maximizer_gap(std::int64_t j) {
    if (j < 11)
        throw std::invalid_argument(
            "solve_maximizer_gap: defined for j >= 11 only; use monomial_log_norm for small j");

    const double jd = static_cast<double>(j);
    double lo = 1e-18, hi = 1.0 - 1e-12; // maximizer_equation is < 0 at lo, > 0 at hi
    // Asymptotic seed s0 = (1 - 1/log(3j)) / j.
    double s = (1.0 - 1.0 / std::log(3.0 * jd)) / jd;
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);

    double g = maximizer_equation(j, s);
    for (int it = 0; it < 100 && std::abs(g) > 1e-12; ++it) {
        if (g > 0.0) hi = s; else lo = s;
        const double slope = maximizer_slope(j, s);
        double next = s - g / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // safeguard: bisect
        s = next;
        g = maximizer_equation(j, s);
    }
    if (std::abs(g) > 1e-10)
        throw std::runtime_error("solve_maximizer_gap: residual " + fp17(g) +
                                 " above tolerance at j = " + int_str(j));
    return GapRoot{s, g};
}

const char* method_name(NormMethod m) {
    return m == NormMethod::root_find ? "root_find" : "global_scan";
}

MonomialNormRecord monomial_log_norm(std::int64_t j) {
    check_index(j);
    MonomialNormRecord rec;
    rec.j = j;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (j == 1) {
        // Profile (1-t)*log(3/(1-t)) is strictly decreasing on [0,1); the
        // sup equals the t = 0 endpoint value log 3 (gap recorded as 1).
        rec.gap = 1.0;
        rec.norm = constants().log3;
        rec.residual = nan;
        rec.method = NormMethod::global_scan;
        return rec;
    }
    if (j <= 10) {
        // Uniqueness of the interior maximizer is only established for
        // j >= 11; below that, scan exhaustively and refine the best cell.
        const int n = 10000;
        int best = 1;
        double best_v = -1.0;
        for (int i = 1; i < n; ++i) {
            const double v = monomial_profile(j, static_cast<double>(i) / n);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        const double lo = static_cast<double>(best - 1) / n;
        const double hi = static_cast<double>(best + 1) / n;
        const auto res = golden_max([j](double t) { return monomial_profile(j, t); },
                                    lo, hi, 1e-13);
        rec.gap = 1.0 - res.x;
        rec.norm = res.value;
        rec.residual = nan;
        rec.method = NormMethod::global_scan;
        return rec;
    }

    const GapRoot root = solve_maximizer_gap(j);
    rec.gap = root.gap;
    rec.norm = monomial_profile_gap(j, root.gap);
    rec.residual = root.residual;
    rec.method = NormMethod::root_find;
    return rec;
}

std::int64_t find_threshold_index(std::int64_t window) {
    if (window < 1) throw std::invalid_argument("find_threshold_index: window must be >= 1");
    const double cap = constants().ratio_cap;
    auto ratio = [](std::int64_t m) {
        return monomial_log_norm(m).norm / std::log(static_cast<double>(m) + 1.0);
    };
    // First index N with ratio < cap on all of [N, N+window]. The ratio tends
    // to 1/e < cap, so the scan terminates.
    std::int64_t candidate = 1;
    for (std::int64_t m = 1;; ++m) {
        if (ratio(m) >= cap) {
            candidate = m + 1;
        } else if (m >= candidate + window) {
            return candidate;
        }
    }
}

MonomialNormRecord NormTable::get(std::int64_t j) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = table_.find(j);
        if (it != table_.end()) return it->second;
    }
    const MonomialNormRecord rec = monomial_log_norm(j); // outside the lock
    std::lock_guard<std::mutex> lock(mu_);
    return table_.try_emplace(j, rec).first->second; // idempotent fill
}

void NormTable::write_csv(std::ostream& os, const std::vector<std::int64_t>& js) {
    os << "j,s_j,norm,residual,method\n";
    for (const std::int64_t j : js) {
        const MonomialNormRecord r = get(j);
        os << int_str(r.j) << ',' << fp17(r.gap) << ',' << fp17(r.norm) << ','
           << fp17(r.residual) << ',' << method_name(r.method) << '\n';
    }
}

} // namespace blochlab
