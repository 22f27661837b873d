#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blochlab/monomials.hpp"
#include "blochlab/parallel.hpp"
#include "blochlab/seminorm.hpp"
#include "blochlab/symbols.hpp"
#include "blochlab/weights.hpp"

namespace blochlab {

// Analysis layer for the composition operator f -> f o phi acting from the
// log-Bloch space into a weighted Bloch space: quotient sequences,
// boundedness/compactness evidence, essential-norm bands, and diagnostics.

enum class Denominator { exact_norm, log_j_plus_1 };

const char* denominator_name(Denominator d);

struct QuotientTerm {
    std::int64_t j = 0;
    double q = 0.0;           // numerator / denominator
    double numerator = 0.0;   // engine estimate of the composed power's semi-norm
    double denominator = 0.0; // monomial norm (exact) or log(j+1)
    SupEstimate sup;
};

struct QuotientSeries {
    std::string symbol_spec;
    std::string weight_spec;
    Denominator denominator = Denominator::exact_norm;
    std::int64_t j_max = 0;
    GridConfig cfg;
    std::vector<QuotientTerm> terms; // j = 1..j_max, no gaps
};

// Computes q_j for j = 1..j_max. Validates the symbol (4096-point sampling)
// unless force is set, throwing SelfMapError on refusal. Terms are computed
// concurrently into per-index slots; per-term divergence is recorded in the
// SupEstimate, never fatal. A radial fast path serves symbols of the shape
// z -> a*z (and constants) under radial weights.
QuotientSeries quotient_sequence(const HoloMap& phi, const Weight& mu, std::int64_t j_max,
                                 const GridConfig& cfg, Denominator den, NormTable& norms,
                                 const ThreadPool& pool, bool force = false);

enum class Evidence { strong_yes, inconclusive, strong_no };

const char* evidence_name(Evidence e);

struct ClassifyPolicy {
    double stabilization_slack = 0.05;
    double compact_threshold = 1e-3;
};

struct Classification {
    Evidence bounded_evidence = Evidence::inconclusive;
    Evidence compact_evidence = Evidence::inconclusive;
    double sup_q = 0.0;
    double tail_max_q = 0.0; // max over the last quartile of indices
    double tail_trend = 0.0; // least-squares slope of log q vs log j on the tail
    std::string notes;
};

// Finite-index evidence, not a proof; requires >= 8 terms
// (std::invalid_argument otherwise).
Classification classify(const QuotientSeries& series, const ClassifyPolicy& policy = {});

struct EssentialNormBand {
    double E_est = 0.0; // tail max of q_j, the finite-index limsup proxy
    double lower = 0.0; // = E_est
    double upper = 0.0; // = band-ratio constant * E_est
    double tail_fraction = 0.25;
};

// Requires the exact-norm denominator and a series not classified unbounded;
// refuses (std::runtime_error) when the tail carries diverged terms.
EssentialNormBand essential_norm_band(const QuotientSeries& series, double tail_fraction = 0.25);

struct AnnuliHistogram {
    std::string symbol_spec;
    std::int64_t j_max = 0;
    long samples = 0;            // == sum(counts) + overflow
    std::vector<long> counts;    // counts[i] = samples landing in band i+1
    long overflow = 0;           // |phi(z)| beyond the j_max-th band
};

// Partitions a boundary-clustered polar sample of the disk by which band
// [r_(j-1), r_j) contains |phi(z)|.
AnnuliHistogram annuli_diagnostic(const HoloMap& phi, std::int64_t j_max, long samples,
                                  bool force = false);

struct TestFunction {
    std::string name;
    std::function<Complex(Complex)> value;
    std::function<Complex(Complex)> deriv;
};

struct TransferRatio {
    std::string name;
    double composed_seminorm = 0.0; // engine estimate of the composed function
    double source_norm = 0.0;       // |f(0)| + log-weight semi-norm of f
    double ratio = 0.0;
};

struct TransferReport {
    std::vector<TransferRatio> ratios;
    double max_ratio = 0.0;
    bool finite = true;
};

// Empirical transfer constants: for each test f, the ratio of the engine's
// composed-map semi-norm to the full source-space norm of f.
TransferReport direct_transfer_check(const HoloMap& phi, const Weight& mu,
                                     const std::vector<TestFunction>& family,
                                     const GridConfig& cfg, const ThreadPool& pool,
                                     bool force = false);

// Monomials, normalized monomials, and a couple of fixed linear combinations.
std::vector<TestFunction> default_transfer_family(NormTable& norms);

} // namespace blochlab
