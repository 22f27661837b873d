#include "blochlab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blochlab/format.hpp"
#include "blochlab/grid.hpp"
#include "blochlab/search.hpp"

namespace blochlab {

void GridConfig::validate() const {
    if (n_radii < 2 || n_angles < 1)
        throw std::invalid_argument("grid config: n_radii >= 2 and n_angles >= 1 required");
    if (!(r_max > 0.0 && r_max < 1.0))
        throw std::invalid_argument("grid config: r_max must lie in (0,1)");
    if (refine_rounds < 0)
        throw std::invalid_argument("grid config: refine_rounds must be >= 0");
    if (!(refine_shrink > 0.0 && refine_shrink < 1.0))
        throw std::invalid_argument("grid config: refine_shrink must lie in (0,1)");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("grid config: rel_tol must be > 0");
    if (!(divergence_cap > 0.0))
        throw std::invalid_argument("grid config: divergence_cap must be > 0");
}

EvaluatorError::EvaluatorError(Complex at, const std::string& what)
    : std::runtime_error("evaluator fault at z = (" + fp17(at.real()) + ", " + fp17(at.imag()) +
                         "): " + what),
      at_(at) {}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// One weighted-modulus evaluation. The radius is passed separately so radial
// weights see the exact grid radius rather than |polar(r, a)| re-rounded.
double eval_point(const DerivFn& df, const Weight& w, double r, double angle, Complex* z_out) {
    const Complex z = std::polar(r, angle);
    *z_out = z;
    const double wz = w.radial() ? w(r) : w.at(z);
    Complex d;
    try {
        d = df(z);
    } catch (const EvaluatorError&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluatorError(z, e.what());
    }
    return wz * std::abs(d);
}

struct Incumbent {
    double value = -1.0; // any real evaluation (>= 0) replaces this
    double u = 0.0;      // log(1 - r) of the argmax
    double angle = 0.0;
    Complex z{0.0, 0.0};
};

bool near_boundary(double r, double r_max) { return r_max - r <= 10.0 * (1.0 - r_max); }

} // namespace

SupEstimate sup_weighted_deriv(const DerivFn& df, const Weight& w, const GridConfig& cfg,
                               const ThreadPool* pool) {
    cfg.validate();
    const double u_min = std::log1p(-cfg.r_max);
    const auto radii = clustered_radii(cfg.n_radii, cfg.r_max);

    // Coarse sweep. Rows (fixed radius) are independent work slots; the merge
    // below walks them in index order, so the outcome cannot depend on the
    // thread count. Strict '>' everywhere keeps the first (smallest radius,
    // then smallest angle) point of any tie.
    struct RowBest {
        double value = -1.0;
        int m = 0;
    };
    std::vector<RowBest> rows(radii.size());
    auto sweep_row = [&](std::size_t i) {
        const double r = radii[i];
        RowBest best;
        Complex z;
        for (int m = 0; m < cfg.n_angles; ++m) {
            const double v = eval_point(df, w, r, kTwoPi * m / cfg.n_angles, &z);
            if (v > best.value) {
                best.value = v;
                best.m = m;
            }
        }
        rows[i] = best;
    };
    if (pool) {
        pool->parallel_for(radii.size(), sweep_row);
    } else {
        for (std::size_t i = 0; i < radii.size(); ++i) sweep_row(i);
    }

    Incumbent best;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].value > best.value) {
            best.value = rows[i].value;
            best_i = i;
            best.angle = kTwoPi * rows[i].m / cfg.n_angles;
        }
    }
    best.u = u_min * static_cast<double>(best_i) / (cfg.n_radii - 1);
    best.z = std::polar(radii[best_i], best.angle);

    SupEstimate out;
    out.evaluations = static_cast<long>(radii.size()) * cfg.n_angles;

    // Refinement: re-grid a shrinking rectangle around the incumbent in
    // (u, angle) space, u = log(1-r). Serial by design (each round depends on
    // the previous incumbent).
    bool diverged = best.value > cfg.divergence_cap;
    if (!diverged) {
        double hu = -u_min / (cfg.n_radii - 1); // one coarse radial cell
        double ha = kTwoPi / cfg.n_angles;      // one coarse angular cell
        double cu = best.u, ca = best.angle;
        for (int round = 0; round < cfg.refine_rounds; ++round) {
            const double prev = best.value;
            constexpr int kPts = 17;
            for (int iu = 0; iu < kPts; ++iu) {
                // Scan u from the small-radius edge downward so ties resolve
                // toward the smaller radius.
                const double u =
                    std::clamp(cu + hu - 2.0 * hu * iu / (kPts - 1), u_min, 0.0);
                const double r = -std::expm1(u);
                for (int ia = 0; ia < kPts; ++ia) {
                    double a = ca - ha + 2.0 * ha * ia / (kPts - 1);
                    a = std::fmod(a + kTwoPi, kTwoPi);
                    Complex z;
                    const double v = eval_point(df, w, r, a, &z);
                    ++out.evaluations;
                    if (v > best.value) {
                        best.value = v;
                        best.u = u;
                        best.angle = a;
                        best.z = z;
                    }
                }
            }
            if (best.value > cfg.divergence_cap) {
                diverged = true;
                break;
            }
            const double gain = prev > 0.0 ? (best.value - prev) / prev
                                           : (best.value > prev ? 1.0 : 0.0);
            cu = best.u;
            ca = best.angle;
            hu *= cfg.refine_shrink;
            ha *= cfg.refine_shrink;
            // A no-gain round with a wide window only means the incumbent won
            // its own coarse cell; the quadratic residual is O(hu^2), so the
            // gain test is trusted only once hu^2 is inside the tolerance.
            if (gain < cfg.rel_tol && hu * hu < cfg.rel_tol) break;
        }
    }

    out.value = std::max(best.value, 0.0);
    out.argmax = best.z;
    out.diverged = diverged;
    out.boundary_dominated = diverged || near_boundary(-std::expm1(best.u), cfg.r_max);
    return out;
}

SupEstimate sup_weighted_deriv_radial(const RadialFn& profile, const Weight& w,
                                      const GridConfig& cfg) {
    cfg.validate();
    if (!w.radial())
        throw std::invalid_argument("radial sup path requires a radial weight");

    const double u_min = std::log1p(-cfg.r_max);
    const auto radii = clustered_radii(cfg.n_radii, cfg.r_max);

    auto value_at_r = [&](double r) {
        try {
            return w(r) * profile(r);
        } catch (const EvaluatorError&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluatorError(std::polar(r, 0.0), e.what());
        }
    };

    std::size_t best_i = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double v = value_at_r(radii[i]);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }

    SupEstimate out;
    out.evaluations = static_cast<long>(radii.size());

    // Bracket the best sample by its grid neighbours (u decreases with the
    // index) and polish with golden section in u.
    const auto u_of = [&](std::size_t i) {
        return u_min * static_cast<double>(i) / (cfg.n_radii - 1);
    };
    const double lo = best_i + 1 < radii.size() ? u_of(best_i + 1) : u_min;
    const double hi = best_i > 0 ? u_of(best_i - 1) : 0.0;
    const auto polish = golden_max([&](double u) { return value_at_r(-std::expm1(u)); },
                                   lo, hi, 1e-11);
    out.evaluations += polish.evaluations;

    double u_best = u_of(best_i);
    if (polish.value > best_v) {
        best_v = polish.value;
        u_best = polish.x;
    }
    const double r_best = -std::expm1(u_best);

    out.value = std::max(best_v, 0.0);
    out.argmax = Complex(r_best, 0.0);
    out.diverged = out.value > cfg.divergence_cap;
    out.boundary_dominated = out.diverged || near_boundary(r_best, cfg.r_max);
    return out;
}

} // namespace blochlab
