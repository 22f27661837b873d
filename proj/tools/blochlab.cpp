// blochlab: weighted Bloch semi-norms, monomial norms, and composition
// operator diagnostics on the unit disk.
//
// Exit codes: 0 success, 1 verification failure, 2 argument/domain error,
// 3 refused symbol (failed self-map validation without --force).

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blochlab/composition.hpp"
#include "blochlab/constants.hpp"
#include "blochlab/format.hpp"
#include "blochlab/report.hpp"
#include "blochlab/verify.hpp"

namespace {

using namespace blochlab;

struct CommonOpts {
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
};

struct GridOpts {
    GridConfig cfg;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--out", o.out_path, "write the report to this path instead of stdout");
    if (with_format)
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    cmd->add_option("--threads", o.threads,
                    "worker threads (default: BLOCHLAB_THREADS or machine parallelism)");
}

void add_grid(CLI::App* cmd, GridOpts& g) {
    cmd->add_option("--n-radii", g.cfg.n_radii, "coarse radial grid points")
        ->capture_default_str();
    cmd->add_option("--n-angles", g.cfg.n_angles, "coarse angular grid points")
        ->capture_default_str();
    cmd->add_option("--r-max", g.cfg.r_max, "radial truncation of the disk")
        ->capture_default_str();
    cmd->add_option("--refine-rounds", g.cfg.refine_rounds, "local refinement rounds")
        ->capture_default_str();
    cmd->add_option("--rel-tol", g.cfg.rel_tol, "early-stop relative improvement threshold")
        ->capture_default_str();
}

ThreadPool make_pool(const CommonOpts& o) {
    return ThreadPool(o.threads > 0 ? o.threads : ThreadPool::default_thread_count());
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path '" + o.out_path + "'");
    f << text;
}

std::string render(const CommonOpts& o, const std::string& csv, const Json& json) {
    return o.format == "csv" ? csv : json.dump(2) + "\n";
}

std::vector<std::int64_t> resolve_j_list(std::int64_t j_max, const std::vector<std::int64_t>& j_list) {
    if (!j_list.empty()) {
        for (const auto j : j_list)
            if (j < 1) throw std::invalid_argument("--j-list entries must be >= 1");
        return j_list;
    }
    if (j_max < 1) throw std::invalid_argument("--j-max must be >= 1 (or pass --j-list)");
    std::vector<std::int64_t> js;
    js.reserve(static_cast<std::size_t>(j_max));
    for (std::int64_t j = 1; j <= j_max; ++j) js.push_back(j);
    return js;
}

Denominator parse_denominator(const std::string& name) {
    if (name == "exact") return Denominator::exact_norm;
    if (name == "log") return Denominator::log_j_plus_1;
    throw std::invalid_argument("--denominator must be 'exact' or 'log'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Bloch semi-norms and composition operator diagnostics"};
    app.require_subcommand(1);

    // --- monomials ---
    auto* cmd_mono = app.add_subcommand("monomials", "exact monomial norm table");
    std::int64_t mono_j_max = 0;
    std::vector<std::int64_t> mono_j_list;
    CommonOpts mono_common;
    cmd_mono->add_option("--j-max", mono_j_max, "emit records for j = 1..j_max");
    cmd_mono->add_option("--j-list", mono_j_list, "explicit comma-separated indices")
        ->delimiter(',');
    add_common(cmd_mono, mono_common);

    // --- quotients ---
    auto* cmd_quot = app.add_subcommand("quotients", "power-quotient series q_j");
    std::string quot_symbol, quot_weight = "vlog", quot_denominator = "exact";
    std::int64_t quot_j_max = 0;
    bool quot_force = false;
    CommonOpts quot_common;
    GridOpts quot_grid;
    cmd_quot->add_option("--symbol", quot_symbol, "symbol spec, e.g. mobius:0.3,0.0")->required();
    cmd_quot->add_option("--weight", quot_weight, "target weight spec")->capture_default_str();
    cmd_quot->add_option("--j-max", quot_j_max, "largest power index")->required();
    cmd_quot->add_option("--denominator", quot_denominator, "exact | log")->capture_default_str();
    cmd_quot->add_flag("--force", quot_force, "skip self-map refusal");
    add_common(cmd_quot, quot_common);
    add_grid(cmd_quot, quot_grid);

    // --- classify ---
    auto* cmd_cls = app.add_subcommand("classify", "boundedness/compactness evidence");
    std::string cls_symbol, cls_weight = "vlog";
    std::int64_t cls_j_max = 64;
    bool cls_force = false;
    ClassifyPolicy cls_policy;
    CommonOpts cls_common;
    GridOpts cls_grid;
    cmd_cls->add_option("--symbol", cls_symbol, "symbol spec")->required();
    cmd_cls->add_option("--weight", cls_weight, "target weight spec")->capture_default_str();
    cmd_cls->add_option("--j-max", cls_j_max, "series length")->capture_default_str();
    cmd_cls->add_option("--stabilization-slack", cls_policy.stabilization_slack,
                        "tail stabilization slack")
        ->capture_default_str();
    cmd_cls->add_option("--compact-threshold", cls_policy.compact_threshold,
                        "tail size below which compactness evidence is strong")
        ->capture_default_str();
    cmd_cls->add_flag("--force", cls_force, "skip self-map refusal");
    add_common(cmd_cls, cls_common, /*with_format=*/false);
    add_grid(cmd_cls, cls_grid);

    // --- essnorm ---
    auto* cmd_ess = app.add_subcommand("essnorm", "essential-norm band from the tail");
    std::string ess_symbol, ess_weight = "vlog", ess_denominator = "exact";
    std::int64_t ess_j_max = 64;
    double ess_tail_fraction = 0.25;
    bool ess_force = false;
    CommonOpts ess_common;
    GridOpts ess_grid;
    cmd_ess->add_option("--symbol", ess_symbol, "symbol spec")->required();
    cmd_ess->add_option("--weight", ess_weight, "target weight spec")->capture_default_str();
    cmd_ess->add_option("--j-max", ess_j_max, "series length")->capture_default_str();
    cmd_ess->add_option("--tail-fraction", ess_tail_fraction, "fraction of indices in the tail")
        ->capture_default_str();
    cmd_ess->add_option("--denominator", ess_denominator, "must be 'exact'")
        ->capture_default_str();
    cmd_ess->add_flag("--force", ess_force, "skip self-map refusal");
    add_common(cmd_ess, ess_common, /*with_format=*/false);
    add_grid(cmd_ess, ess_grid);

    // --- weight-equiv ---
    auto* cmd_weq = app.add_subcommand("weight-equiv", "equivalence constants of two weights");
    std::string weq_w1, weq_w2;
    int weq_grid = 10000;
    CommonOpts weq_common;
    cmd_weq->add_option("--w1", weq_w1, "first weight spec")->required();
    cmd_weq->add_option("--w2", weq_w2, "second weight spec")->required();
    cmd_weq->add_option("--grid", weq_grid, "grid size")->capture_default_str();
    add_common(cmd_weq, weq_common, /*with_format=*/false);

    // --- annuli ---
    auto* cmd_ann = app.add_subcommand("annuli", "band histogram of |phi| over the disk");
    std::string ann_symbol;
    std::int64_t ann_j_max = 0;
    long ann_samples = 100000;
    bool ann_force = false;
    CommonOpts ann_common;
    cmd_ann->add_option("--symbol", ann_symbol, "symbol spec")->required();
    cmd_ann->add_option("--j-max", ann_j_max, "number of bands")->required();
    cmd_ann->add_option("--samples", ann_samples, "approximate sample count")
        ->capture_default_str();
    cmd_ann->add_flag("--force", ann_force, "skip self-map refusal");
    add_common(cmd_ann, ann_common);

    // --- transfer ---
    auto* cmd_tr = app.add_subcommand("transfer", "empirical transfer constants on a test family");
    std::string tr_symbol, tr_weight = "vlog";
    bool tr_force = false;
    CommonOpts tr_common;
    GridOpts tr_grid;
    cmd_tr->add_option("--symbol", tr_symbol, "symbol spec")->required();
    cmd_tr->add_option("--weight", tr_weight, "target weight spec")->capture_default_str();
    cmd_tr->add_flag("--force", tr_force, "skip self-map refusal");
    add_common(cmd_tr, tr_common, /*with_format=*/false);
    add_grid(cmd_tr, tr_grid);

    // --- verify ---
    auto* cmd_ver = app.add_subcommand("verify", "run the built-in acceptance suite");
    bool ver_fast = false;
    int ver_threads = 0;
    cmd_ver->add_flag("--fast", ver_fast, "reduced index ranges");
    cmd_ver->add_option("--threads", ver_threads, "worker threads");

    // --- constants ---
    auto* cmd_const = app.add_subcommand("constants", "print the derived constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_mono->parsed()) {
            NormTable norms;
            const auto js = resolve_j_list(mono_j_max, mono_j_list);
            const std::string text =
                render(mono_common, monomials_csv(norms, js), monomials_json(norms, js));
            emit(mono_common, text);
            return 0;
        }
        if (cmd_quot->parsed()) {
            NormTable norms;
            const ThreadPool pool = make_pool(quot_common);
            const QuotientSeries series = quotient_sequence(
                parse_symbol_spec(quot_symbol), parse_weight_spec(quot_weight), quot_j_max,
                quot_grid.cfg, parse_denominator(quot_denominator), norms, pool, quot_force);
            emit(quot_common, render(quot_common, quotients_csv(series), quotients_json(series)));
            return 0;
        }
        if (cmd_cls->parsed()) {
            NormTable norms;
            const ThreadPool pool = make_pool(cls_common);
            const QuotientSeries series = quotient_sequence(
                parse_symbol_spec(cls_symbol), parse_weight_spec(cls_weight), cls_j_max,
                cls_grid.cfg, Denominator::exact_norm, norms, pool, cls_force);
            const Classification cls = classify(series, cls_policy);
            emit(cls_common, classification_json(cls, series, cls_policy).dump(2) + "\n");
            return 0;
        }
        if (cmd_ess->parsed()) {
            if (parse_denominator(ess_denominator) != Denominator::exact_norm)
                throw std::invalid_argument("essnorm requires --denominator exact");
            NormTable norms;
            const ThreadPool pool = make_pool(ess_common);
            const QuotientSeries series = quotient_sequence(
                parse_symbol_spec(ess_symbol), parse_weight_spec(ess_weight), ess_j_max,
                ess_grid.cfg, Denominator::exact_norm, norms, pool, ess_force);
            const EssentialNormBand band = essential_norm_band(series, ess_tail_fraction);
            emit(ess_common, band_json(band, series).dump(2) + "\n");
            return 0;
        }
        if (cmd_weq->parsed()) {
            const Weight w1 = parse_weight_spec(weq_w1);
            const Weight w2 = parse_weight_spec(weq_w2);
            const EquivalenceReport rep = equivalence_constants(w1, w2, weq_grid);
            emit(weq_common, equivalence_json(rep, w1, w2).dump(2) + "\n");
            return 0;
        }
        if (cmd_ann->parsed()) {
            const AnnuliHistogram hist = annuli_diagnostic(parse_symbol_spec(ann_symbol),
                                                           ann_j_max, ann_samples, ann_force);
            emit(ann_common, render(ann_common, annuli_csv(hist), annuli_json(hist)));
            return 0;
        }
        if (cmd_tr->parsed()) {
            NormTable norms;
            const ThreadPool pool = make_pool(tr_common);
            const HoloMap phi = parse_symbol_spec(tr_symbol);
            const Weight mu = parse_weight_spec(tr_weight);
            const TransferReport rep = direct_transfer_check(
                phi, mu, default_transfer_family(norms), tr_grid.cfg, pool, tr_force);
            emit(tr_common, transfer_json(rep, phi.spec(), mu.spec()).dump(2) + "\n");
            return 0;
        }
        if (cmd_ver->parsed()) {
            AcceptanceOptions opts;
            opts.fast = ver_fast;
            opts.threads = ver_threads;
            const auto results = run_acceptance(opts, std::cout);
            return all_passed(results) ? 0 : 1;
        }
        if (cmd_const->parsed()) {
            const Constants& c = constants();
            std::cout << "L = " << fp17(c.L) << "\n"
                      << "L/(2e^L) = " << fp17(c.h_lower) << "\n"
                      << "(2L+6e^(L-1))/L = " << fp17(c.band_ratio) << "\n"
                      << "3/(2e) = " << fp17(c.ratio_cap) << "\n";
            return 0;
        }
    } catch (const SelfMapError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2; // unreachable: a subcommand is required
}
