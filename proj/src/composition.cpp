#include "blochlab/composition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blochlab/constants.hpp"
#include "blochlab/format.hpp"
#include "blochlab/grid.hpp"

namespace blochlab {

const char* denominator_name(Denominator d) {
    return d == Denominator::exact_norm ? "exact" : "log";
}

const char* evidence_name(Evidence e) {
    switch (e) {
        case Evidence::strong_yes: return "strong_yes";
        case Evidence::strong_no: return "strong_no";
        case Evidence::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

void require_self_map(const HoloMap& phi, bool force) {
    if (force) return;
    const SelfMapReport rep = validate_self_map(phi, 4096);
    if (!rep.pass)
        throw SelfMapError("symbol '" + phi.spec() + "' failed self-map validation: max |phi| = " +
                           fp17(rep.max_modulus) + " at z = (" + fp17(rep.arg_max.real()) + ", " +
                           fp17(rep.arg_max.imag()) + "); pass --force to override");
}

// Radial profile of |(phi^j)'| when phi(z) = a*z: j * |a|^j * r^(j-1).
double scalar_power_profile(double amag, std::int64_t j, double r) {
    if (j == 1) return amag;
    if (r == 0.0 || amag == 0.0) return 0.0;
    const double jd = static_cast<double>(j);
    return jd * std::exp(jd * std::log(amag) + (jd - 1.0) * std::log(r));
}

} // namespace

QuotientSeries quotient_sequence(const HoloMap& phi, const Weight& mu, std::int64_t j_max,
                                 const GridConfig& cfg, Denominator den, NormTable& norms,
                                 const ThreadPool& pool, bool force) {
    if (j_max < 1) throw std::invalid_argument("quotient_sequence: j_max must be >= 1");
    cfg.validate();
    require_self_map(phi, force);

    QuotientSeries series;
    series.symbol_spec = phi.spec();
    series.weight_spec = mu.spec();
    series.denominator = den;
    series.j_max = j_max;
    series.cfg = cfg;
    series.terms.resize(static_cast<std::size_t>(j_max));

    // Fill the norm cache serially first: deterministic, and the workers then
    // hit a read-mostly table.
    std::vector<double> denoms(static_cast<std::size_t>(j_max));
    for (std::int64_t j = 1; j <= j_max; ++j)
        denoms[static_cast<std::size_t>(j - 1)] =
            den == Denominator::exact_norm ? norms.get(j).norm
                                           : std::log(static_cast<double>(j) + 1.0);

    Complex scalar;
    const bool scalar_path = mu.radial() && phi.scalar_of_identity(&scalar);
    Complex const_val;
    const bool const_path = mu.radial() && phi.is_constant(&const_val);

    pool.parallel_for(series.terms.size(), [&](std::size_t idx) {
        const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
        QuotientTerm term;
        term.j = j;
        if (const_path) {
            term.sup = sup_weighted_deriv_radial([](double) { return 0.0; }, mu, cfg);
        } else if (scalar_path) {
            const double amag = std::abs(scalar);
            term.sup = sup_weighted_deriv_radial(
                [amag, j](double r) { return scalar_power_profile(amag, j, r); }, mu, cfg);
        } else {
            // Terms are already parallel; keep the engine itself serial.
            term.sup = sup_weighted_deriv(
                [&phi, j](const Complex& z) { return power_deriv(phi, j, z); }, mu, cfg,
                nullptr);
        }
        term.numerator = term.sup.value;
        term.denominator = denoms[idx];
        term.q = term.numerator / term.denominator;
        series.terms[idx] = std::move(term);
    });
    return series;
}

Classification classify(const QuotientSeries& series, const ClassifyPolicy& policy) {
    const std::size_t n = series.terms.size();
    if (n < 8) throw std::invalid_argument("classify: needs at least 8 terms");

    Classification cls;
    bool any_diverged = false;
    for (const auto& t : series.terms) {
        cls.sup_q = std::max(cls.sup_q, t.q);
        any_diverged = any_diverged || t.sup.diverged;
    }

    const std::size_t tail_begin = n - n / 4; // last quartile
    for (std::size_t i = tail_begin; i < n; ++i)
        cls.tail_max_q = std::max(cls.tail_max_q, series.terms[i].q);

    // Least-squares slope of log q vs log j over the tail's positive terms.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (std::size_t i = tail_begin; i < n; ++i) {
        const auto& t = series.terms[i];
        if (!(t.q > 0.0)) continue;
        const double x = std::log(static_cast<double>(t.j));
        const double y = std::log(t.q);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    cls.tail_trend = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;

    const bool zero_tail = cls.tail_max_q == 0.0;
    const bool tail_rising = series.terms.back().q > series.terms[tail_begin].q;
    const bool growth = cls.tail_trend > policy.stabilization_slack && tail_rising;

    if (any_diverged || growth) {
        cls.bounded_evidence = Evidence::strong_no;
    } else if (cls.tail_max_q <= (1.0 + policy.stabilization_slack) * cls.sup_q) {
        cls.bounded_evidence = Evidence::strong_yes;
    } else {
        cls.bounded_evidence = Evidence::inconclusive;
    }

    if (cls.bounded_evidence == Evidence::strong_no) {
        // Compactness implies boundedness, so unbounded evidence transfers.
        cls.compact_evidence = Evidence::strong_no;
    } else if (cls.tail_max_q <= policy.compact_threshold &&
               (zero_tail || cls.tail_trend < 0.0)) {
        cls.compact_evidence = Evidence::strong_yes;
    } else if (cls.tail_max_q > policy.compact_threshold &&
               std::abs(cls.tail_trend) <= policy.stabilization_slack) {
        cls.compact_evidence = Evidence::strong_no;
    } else {
        cls.compact_evidence = Evidence::inconclusive;
    }

    cls.notes = "finite-index numerical evidence from j <= " + int_str(series.j_max) +
                "; sup q = " + fp17(cls.sup_q) + ", tail max = " + fp17(cls.tail_max_q) +
                ", tail trend = " + fp17(cls.tail_trend) +
                (any_diverged ? "; some terms exceeded the divergence cap" : "") +
                ". Not a proof: the criteria quantify over all indices.";
    return cls;
}

EssentialNormBand essential_norm_band(const QuotientSeries& series, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::invalid_argument("essential_norm_band: tail_fraction must lie in (0,1]");
    if (series.denominator != Denominator::exact_norm)
        throw std::invalid_argument(
            "essential_norm_band: requires the exact-norm denominator series");
    if (series.terms.size() >= 8) {
        const Classification cls = classify(series);
        if (cls.bounded_evidence == Evidence::strong_no)
            throw std::runtime_error(
                "essential_norm_band: series classified unbounded; band undefined");
    }

    const std::size_t n = series.terms.size();
    const auto tail_count = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n), std::ceil(tail_fraction * static_cast<double>(n))));
    const std::size_t tail_begin = n - std::max<std::size_t>(tail_count, 1);

    EssentialNormBand band;
    band.tail_fraction = tail_fraction;
    for (std::size_t i = tail_begin; i < n; ++i) {
        const auto& t = series.terms[i];
        if (t.sup.diverged)
            throw std::runtime_error("essential_norm_band: diverged term at j = " + int_str(t.j) +
                                     "; tail limsup proxy undefined");
        band.E_est = std::max(band.E_est, t.q);
    }
    band.lower = band.E_est;
    band.upper = constants().band_ratio * band.E_est;
    return band;
}

AnnuliHistogram annuli_diagnostic(const HoloMap& phi, std::int64_t j_max, long samples,
                                  bool force) {
    if (j_max < 1) throw std::invalid_argument("annuli_diagnostic: j_max must be >= 1");
    if (samples < 64) throw std::invalid_argument("annuli_diagnostic: samples must be >= 64");
    require_self_map(phi, force);

    AnnuliHistogram hist;
    hist.symbol_spec = phi.spec();
    hist.j_max = j_max;
    hist.counts.assign(static_cast<std::size_t>(j_max), 0);

    const int n_angles = 64;
    const int n_radii = std::max<int>(2, static_cast<int>(samples / n_angles));
    const auto radii = clustered_radii(n_radii, 1.0 - 1e-12);
    const double L = constants().L;
    constexpr double two_pi = 6.283185307179586476925286766559;

    for (const double r : radii) {
        for (int a = 0; a < n_angles; ++a) {
            const double mod = std::abs(phi.eval(std::polar(r, two_pi * a / n_angles)));
            ++hist.samples;
            // Band index: r_(j-1) <= mod < r_j  <=>  j = floor(L*mod/(1-mod)) + 1.
            // mod >= 1 can only happen under --force; park it in overflow.
            const double x = mod < 1.0 ? L * mod / (1.0 - mod) : static_cast<double>(j_max);
            if (!(x < static_cast<double>(j_max))) {
                ++hist.overflow;
            } else {
                ++hist.counts[static_cast<std::size_t>(x)];
            }
        }
    }
    return hist;
}

TransferReport direct_transfer_check(const HoloMap& phi, const Weight& mu,
                                     const std::vector<TestFunction>& family,
                                     const GridConfig& cfg, const ThreadPool& pool,
                                     bool force) {
    cfg.validate();
    require_self_map(phi, force);
    const Weight source = Weight::vlog();

    TransferReport report;
    report.ratios.resize(family.size());
    pool.parallel_for(family.size(), [&](std::size_t i) {
        const TestFunction& f = family[i];
        TransferRatio out;
        out.name = f.name;
        // Composed semi-norm: sup mu(z) |f'(phi(z)) phi'(z)|.
        const SupEstimate comp = sup_weighted_deriv(
            [&](const Complex& z) { return f.deriv(phi.eval(z)) * phi.deriv(z); }, mu, cfg,
            nullptr);
        // Full source norm: |f(0)| + sup of the log weight against f'.
        const SupEstimate src = sup_weighted_deriv(
            [&](const Complex& z) { return f.deriv(z); }, source, cfg, nullptr);
        out.composed_seminorm = comp.value;
        out.source_norm = std::abs(f.value(Complex(0.0, 0.0))) + src.value;
        out.ratio = out.composed_seminorm / out.source_norm;
        report.ratios[i] = std::move(out);
    });

    for (const auto& r : report.ratios) {
        report.max_ratio = std::max(report.max_ratio, r.ratio);
        report.finite = report.finite && std::isfinite(r.ratio);
    }
    return report;
}

std::vector<TestFunction> default_transfer_family(NormTable& norms) {
    std::vector<TestFunction> family;
    auto monomial = [](std::int64_t j, double scale) {
        return std::pair{[j, scale](Complex z) { return scale * pow_int(z, j); },
                         [j, scale](Complex z) {
                             return scale * static_cast<double>(j) * pow_int(z, j - 1);
                         }};
    };
    for (const std::int64_t j : {std::int64_t{1}, std::int64_t{2}, std::int64_t{5}, std::int64_t{10}}) {
        auto [v, d] = monomial(j, 1.0);
        family.push_back({"monomial_" + int_str(j), v, d});
        auto [vn, dn] = monomial(j, 1.0 / norms.get(j).norm);
        family.push_back({"unit_monomial_" + int_str(j), vn, dn});
    }
    family.push_back({"mix_1_3",
                      [](Complex z) { return 0.5 * z + 0.5 * pow_int(z, 3); },
                      [](Complex z) { return Complex(0.5, 0.0) + 1.5 * pow_int(z, 2); }});
    family.push_back({"mix_2_7",
                      [](Complex z) { return pow_int(z, 2) - 0.3 * pow_int(z, 7); },
                      [](Complex z) { return 2.0 * z - 2.1 * pow_int(z, 6); }});
    return family;
}

} // namespace blochlab
