#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "blochlab/composition.hpp"
#include "blochlab/monomials.hpp"
#include "blochlab/weights.hpp"

namespace blochlab {

// All emitters are pure functions of their inputs: no timestamps, locales,
// hostnames, or thread counts, so identical invocations give identical bytes.

using Json = nlohmann::ordered_json;

Json run_metadata();
Json grid_config_json(const GridConfig& cfg);
Json sup_estimate_json(const SupEstimate& se);

std::string quotients_csv(const QuotientSeries& series);
Json quotients_json(const QuotientSeries& series);

std::string monomials_csv(NormTable& norms, const std::vector<std::int64_t>& js);
Json monomials_json(NormTable& norms, const std::vector<std::int64_t>& js);

Json classification_json(const Classification& cls, const QuotientSeries& series,
                         const ClassifyPolicy& policy);
Json band_json(const EssentialNormBand& band, const QuotientSeries& series);

Json equivalence_json(const EquivalenceReport& rep, const Weight& w1, const Weight& w2);

std::string annuli_csv(const AnnuliHistogram& hist);
Json annuli_json(const AnnuliHistogram& hist);

Json transfer_json(const TransferReport& rep, const std::string& symbol_spec,
                   const std::string& weight_spec);

} // namespace blochlab
