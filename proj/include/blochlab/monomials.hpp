#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <vector>

namespace blochlab {

// Exact norms of the monomial test functions z -> z^j under the logarithmic
// weight, plus the auxiliary sequences that control them. Everything is
// phrased in the boundary gap s = 1 - t: near the maximizer t is within
// O(1/j) of 1, so s is the only well-conditioned variable at large j.

// Annulus radii r_j = 1 - L/(j+L), r_0 = 0; strictly increasing to 1.
double annulus_radius(std::int64_t j);

// The root function of the maximizer equation, written in the gap variable:
//   (j*s - 1)*log(3/s) + 1 - s.
// Strictly increasing in s on (0,1); its unique zero s_j gives the maximizer
// t_j = 1 - s_j of the monomial profile. Requires j >= 1, 0 < s < 1.
double maximizer_equation(std::int64_t j, double s);

// Monomial profile  j * t^(j-1) * (1-t) * log(3/(1-t))  whose sup over t is
// the monomial norm. Accepts t in [0,1); t^(j-1) goes through
// exp((j-1)*log1p(-s)) so it survives t near 1 at any j.
double monomial_profile(std::int64_t j, double t);

// Same profile evaluated at t = 1-s without forming t (accurate tiny gaps).
double monomial_profile_gap(std::int64_t j, double s);

// monomial_profile divided by log(j+1); admits the uniform positive floor
// L/(2e^L) on [r_(j-1), r_j] and is decreasing on [r_(j-1), 1).
double normalized_monomial_profile(std::int64_t j, double t);

// The decreasing envelope (x/(x+L))^(x-1) on [1, inf): equals 1 at x = 1 and
// tends to its infimum e^(-L). Computed as exp(-(x-1)*log1p(L/x)).
double power_envelope(double x);

struct GapRoot {
    double gap = 0.0;      // s_j
    double residual = 0.0; // maximizer_equation(j, gap)
};

// Safeguarded Newton (bisection fallback) for the maximizer gap, j >= 11
// only: below that the uniqueness of the root is not established, so callers
// must go through monomial_log_norm's global scan. |residual| <= 1e-10
// guaranteed (std::runtime_error otherwise).
GapRoot solve_maximizer_gap(std::int64_t j);

enum class NormMethod { root_find, global_scan };

const char* method_name(NormMethod m);

struct MonomialNormRecord {
    std::int64_t j = 0;
    double gap = 0.0;      // s_j = 1 - t_j; 1 for j = 1 (sup attained at t -> 0)
    double norm = 0.0;     // the monomial's log-Bloch semi-norm
    double residual = 0.0; // root residual for j >= 11; NaN for the scan path
    NormMethod method = NormMethod::global_scan;
};

// j = 1: closed form log 3 (profile decreasing, sup at the t = 0 boundary).
// 2 <= j <= 10: 10^4-point scan + golden-section refinement (global max; no
// uniqueness assumption). j >= 11: root solve. j <= 0 -> std::domain_error.
MonomialNormRecord monomial_log_norm(std::int64_t j);

// Smallest N such that norm(m)/log(m+1) < 3/(2e) for every m in
// [N, N+window]. Windowed certificate: the true tail claim follows from the
// limit 1/e, which the window merely witnesses.
std::int64_t find_threshold_index(std::int64_t window = 10000);

// Memoized records keyed by j; fills are idempotent so concurrent get() calls
// are safe and deterministic.
class NormTable {
public:
    MonomialNormRecord get(std::int64_t j);
    void write_csv(std::ostream& os, const std::vector<std::int64_t>& js);

private:
    std::mutex mu_;
    std::map<std::int64_t, MonomialNormRecord> table_;
};

} // namespace blochlab
