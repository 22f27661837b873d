#include "blochlab/report.hpp"

#include <cmath>

#include "blochlab/format.hpp"

namespace blochlab {

Json run_metadata() {
    Json meta;
    meta["generator"] = "blochlab 0.1.0";
    meta["determinism"] = "output is a pure function of the invocation; no timestamps or rng";
    return meta;
}

Json grid_config_json(const GridConfig& cfg) {
    Json j;
    j["n_radii"] = cfg.n_radii;
    j["n_angles"] = cfg.n_angles;
    j["r_max"] = cfg.r_max;
    j["refine_rounds"] = cfg.refine_rounds;
    j["refine_shrink"] = cfg.refine_shrink;
    j["rel_tol"] = cfg.rel_tol;
    j["divergence_cap"] = cfg.divergence_cap;
    return j;
}

Json sup_estimate_json(const SupEstimate& se) {
    Json j;
    j["value"] = se.value;
    j["argmax"] = {se.argmax.real(), se.argmax.imag()};
    j["boundary_dominated"] = se.boundary_dominated;
    j["diverged"] = se.diverged;
    j["evaluations"] = se.evaluations;
    return j;
}

std::string quotients_csv(const QuotientSeries& series) {
    std::string out = "j,q,numerator,denominator,boundary_dominated,diverged\n";
    for (const auto& t : series.terms) {
        out += int_str(t.j);
        out += ',';
        out += fp17(t.q);
        out += ',';
        out += fp17(t.numerator);
        out += ',';
        out += fp17(t.denominator);
        out += ',';
        out += bool_str(t.sup.boundary_dominated);
        out += ',';
        out += bool_str(t.sup.diverged);
        out += '\n';
    }
    return out;
}

Json quotients_json(const QuotientSeries& series) {
    Json j;
    j["symbol"] = series.symbol_spec;
    j["weight"] = series.weight_spec;
    j["denominator"] = denominator_name(series.denominator);
    j["j_max"] = series.j_max;
    j["grid"] = grid_config_json(series.cfg);
    Json terms = Json::array();
    for (const auto& t : series.terms) {
        Json jt;
        jt["j"] = t.j;
        jt["q"] = t.q;
        jt["numerator"] = t.numerator;
        jt["denominator"] = t.denominator;
        jt["sup"] = sup_estimate_json(t.sup);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    j["metadata"] = run_metadata();
    return j;
}

std::string monomials_csv(NormTable& norms, const std::vector<std::int64_t>& js) {
    std::string out = "j,s_j,norm,residual,method\n";
    for (const std::int64_t idx : js) {
        const MonomialNormRecord r = norms.get(idx);
        out += int_str(r.j);
        out += ',';
        out += fp17(r.gap);
        out += ',';
        out += fp17(r.norm);
        out += ',';
        out += fp17(r.residual);
        out += ',';
        out += method_name(r.method);
        out += '\n';
    }
    return out;
}

Json monomials_json(NormTable& norms, const std::vector<std::int64_t>& js) {
    Json j;
    Json rows = Json::array();
    for (const std::int64_t idx : js) {
        const MonomialNormRecord r = norms.get(idx);
        Json row;
        row["j"] = r.j;
        row["s_j"] = r.gap;
        row["norm"] = r.norm;
        if (std::isnan(r.residual)) row["residual"] = nullptr;
        else row["residual"] = r.residual;
        row["method"] = method_name(r.method);
        rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
    j["metadata"] = run_metadata();
    return j;
}

namespace {

Json series_envelope(const QuotientSeries& series) {
    Json j;
    j["symbol"] = series.symbol_spec;
    j["weight"] = series.weight_spec;
    j["denominator"] = denominator_name(series.denominator);
    j["j_max"] = series.j_max;
    j["grid"] = grid_config_json(series.cfg);
    return j;
}

} // namespace

Json classification_json(const Classification& cls, const QuotientSeries& series,
                         const ClassifyPolicy& policy) {
    Json j;
    j["bounded_evidence"] = evidence_name(cls.bounded_evidence);
    j["compact_evidence"] = evidence_name(cls.compact_evidence);
    j["sup_q"] = cls.sup_q;
    j["tail_max_q"] = cls.tail_max_q;
    j["tail_trend"] = cls.tail_trend;
    j["notes"] = cls.notes;
    j["policy"] = {{"stabilization_slack", policy.stabilization_slack},
                   {"compact_threshold", policy.compact_threshold}};
    j["run"] = series_envelope(series);
    j["metadata"] = run_metadata();
    return j;
}

Json band_json(const EssentialNormBand& band, const QuotientSeries& series) {
    Json j;
    j["E_est"] = band.E_est;
    j["lower"] = band.lower;
    j["upper"] = band.upper;
    j["tail_fraction"] = band.tail_fraction;
    j["run"] = series_envelope(series);
    j["metadata"] = run_metadata();
    return j;
}

Json equivalence_json(const EquivalenceReport& rep, const Weight& w1, const Weight& w2) {
    Json j;
    j["ratio_min"] = rep.ratio_min;
    j["ratio_max"] = rep.ratio_max;
    j["argmin_r"] = rep.argmin_r;
    j["argmax_r"] = rep.argmax_r;
    j["grid_size"] = rep.grid_size;
    j["w1"] = w1.spec();
    j["w2"] = w2.spec();
    j["metadata"] = run_metadata();
    return j;
}

std::string annuli_csv(const AnnuliHistogram& hist) {
    std::string out = "band,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        out += int_str(static_cast<std::int64_t>(i) + 1);
        out += ',';
        out += int_str(hist.counts[i]);
        out += '\n';
    }
    out += "overflow,";
    out += int_str(hist.overflow);
    out += '\n';
    return out;
}

Json annuli_json(const AnnuliHistogram& hist) {
    Json j;
    j["symbol"] = hist.symbol_spec;
    j["j_max"] = hist.j_max;
    j["samples"] = hist.samples;
    j["counts"] = hist.counts;
    j["overflow"] = hist.overflow;
    j["metadata"] = run_metadata();
    return j;
}

Json transfer_json(const TransferReport& rep, const std::string& symbol_spec,
                   const std::string& weight_spec) {
    Json j;
    j["symbol"] = symbol_spec;
    j["weight"] = weight_spec;
    Json rows = Json::array();
    for (const auto& r : rep.ratios) {
        Json row;
        row["name"] = r.name;
        row["composed_seminorm"] = r.composed_seminorm;
        row["source_norm"] = r.source_norm;
        row["ratio"] = r.ratio;
        rows.push_back(std::move(row));
    }
    j["ratios"] = std::move(rows);
    j["max_ratio"] = rep.max_ratio;
    j["finite"] = rep.finite;
    j["metadata"] = run_metadata();
    return j;
}

} // namespace blochlab
