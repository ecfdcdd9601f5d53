#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/decoder.hpp"
#include "polar/io.hpp"
#include "polar/pruning.hpp"
#include "polar/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

namespace {

using namespace polar;

struct Opts {
    uint32_t N = 0;
    uint32_t K = 0;
    uint32_t d = 0;
    double sigma2 = 0.0;
    double esn0_db = 0.0;
    PolicyKind policy = PolicyKind::NONE;
    double tau1 = 1e-6;
    double pe_bound = 1e-6;
    uint64_t trials = 100;
    uint64_t seed = 1;
    uint32_t workers = 1;
    std::string out;
    bool ceil_peak_formula = false;
    bool literal_leq = false;
    CLI::Option* sigma2_opt = nullptr;
    CLI::Option* esn0_opt = nullptr;
};

const std::map<std::string, PolicyKind> kPolicyNames{{"none", PolicyKind::NONE},
                                                     {"sssc", PolicyKind::SSSC},
                                                     {"pspc", PolicyKind::PSPC},
                                                     {"spspc", PolicyKind::SPSPC}};

void add_common(CLI::App* cmd, Opts& o) {
    cmd->add_option("--n", o.N, "block length N (power of two)")->required();
    cmd->add_option("--k", o.K, "information length K");
    cmd->add_option("--d", o.d, "number of deletions");
    o.sigma2_opt = cmd->add_option("--sigma2", o.sigma2, "noise variance per real dimension");
    o.esn0_opt = cmd->add_option("--esn0-db", o.esn0_db, "Es/N0 in dB (sigma2 = 1/(2*Es/N0))");
    o.sigma2_opt->excludes(o.esn0_opt);
    o.esn0_opt->excludes(o.sigma2_opt);
    cmd->add_option("--policy", o.policy, "pruning policy")
        ->transform(CLI::CheckedTransformer(kPolicyNames, CLI::ignore_case));
    cmd->add_option("--tau1", o.tau1, "uniform weight threshold (sssc)");
    cmd->add_option("--pe-bound", o.pe_bound, "per-node pruning-error limit (pspc/spspc)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--workers", o.workers, "worker threads");
    cmd->add_option("--out", o.out, "CSV output path");
    cmd->add_flag("--paper-peak-formula", o.ceil_peak_formula,
                  "locate subgroup peaks with the published ceil(m*p/n) formula "
                  "instead of the exact hypergeometric mode");
    cmd->add_flag("--literal-leq-pruning", o.literal_leq,
                  "prune every scenario with weight <= tau2 instead of the "
                  "budgeted k-prefix (can starve nodes under tied weights)");
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

// Returns 0 and fills sigma2 when a noise spec is present and consistent.
int resolve_noise(Opts& o, bool required) {
    const bool have_s = o.sigma2_opt->count() > 0;
    const bool have_e = o.esn0_opt->count() > 0;
    if (!have_s && !have_e) {
        if (!required) return 0;
        return usage_error("exactly one of --sigma2 or --esn0-db is required");
    }
    if (have_e) o.sigma2 = 1.0 / (2.0 * std::pow(10.0, o.esn0_db / 10.0));
    if (!(o.sigma2 > 0.0)) return usage_error("--sigma2 must be > 0");
    return 0;
}

int validate_nkd(const Opts& o, bool need_k) {
    if (o.N < 2 || (o.N & (o.N - 1)) != 0) return usage_error("--n must be a power of two >= 2");
    if (need_k && (o.K < 1 || o.K > o.N)) return usage_error("--k must be in [1, n]");
    if (o.d > o.N) return usage_error("--d must not exceed --n");
    if (o.tau1 < 0.0) return usage_error("--tau1 must be >= 0");
    if (!(o.pe_bound >= 0.0 && o.pe_bound < 1.0)) return usage_error("--pe-bound must be in [0, 1)");
    return 0;
}

PrunePolicy make_policy(const Opts& o) {
    PrunePolicy p;
    p.kind = o.policy;
    p.tau1 = o.tau1;
    p.pe_bound = o.pe_bound;
    p.ceil_peak_formula = o.ceil_peak_formula;
    p.literal_leq = o.literal_leq;
    return p;
}

int cmd_simulate(Opts& o) {
    if (int rc = validate_nkd(o, true)) return rc;
    if (int rc = resolve_noise(o, true)) return rc;
    if (o.workers < 1) return usage_error("--workers must be >= 1");

    const CodeConfig config = make_code_config(o.N, o.K, 0.5);
    const PrunePolicy policy = make_policy(o);
    ThresholdTable table;
    const bool tabled = policy.kind == PolicyKind::PSPC || policy.kind == PolicyKind::SPSPC;
    if (tabled) table = build_threshold_table(o.N, o.d, policy);
    const DecoderPlan plan = make_decoder_plan(o.N, o.d, policy, tabled ? &table : nullptr);

    SimOptions so;
    so.sigma2 = o.sigma2;
    so.trials = o.trials;
    so.seed = o.seed;
    so.workers = o.workers;
    const SimResult res = simulate(config, plan, so);

    std::printf("simulate: N=%u K=%u d=%u sigma2=%.9g policy=%s trials=%llu seed=%llu workers=%u\n",
                o.N, o.K, o.d, o.sigma2, policy_name(policy.kind),
                static_cast<unsigned long long>(o.trials),
                static_cast<unsigned long long>(o.seed), o.workers);
    std::printf("FER=%.6g (%llu/%llu) BER=%.6g avg_scenarios=%.6g degenerate=%llu elapsed_us=%llu\n",
                res.summary.fer, static_cast<unsigned long long>(res.summary.frame_errors),
                static_cast<unsigned long long>(res.summary.trials), res.summary.ber,
                res.summary.avg_scenarios,
                static_cast<unsigned long long>(res.summary.degenerate_trials),
                static_cast<unsigned long long>(res.summary.total_elapsed_us));
    if (!o.out.empty())
        write_csv_file(o.out,
                       [&](std::ostream& os) { write_simulate_csv(os, res.rows, res.summary); });
    return 0;
}

int cmd_count(Opts& o) {
    if (int rc = validate_nkd(o, false)) return rc;

    std::vector<CountRow> rows;
    uint64_t base = 0;
    for (PolicyKind kind :
         {PolicyKind::NONE, PolicyKind::SSSC, PolicyKind::PSPC, PolicyKind::SPSPC}) {
        Opts po = o;
        po.policy = kind;
        const PrunePolicy policy = make_policy(po);
        ThresholdTable table;
        const bool tabled = kind == PolicyKind::PSPC || kind == PolicyKind::SPSPC;
        if (tabled) table = build_threshold_table(o.N, o.d, policy);
        const uint64_t c = count_scenarios(o.N, o.d, policy, tabled ? &table : nullptr);
        if (kind == PolicyKind::NONE) base = c;
        CountRow r;
        r.policy = policy_name(kind);
        r.count = c;
        r.reduction = base - c;
        r.reduction_pct = base ? 100.0 * static_cast<double>(base - c) / static_cast<double>(base)
                               : 0.0;
        rows.push_back(r);
    }

    std::printf("count: N=%u d=%u tau1=%.6g pe_bound=%.6g\n", o.N, o.d, o.tau1, o.pe_bound);
    std::printf("%-8s %14s %14s %10s\n", "policy", "scenarios", "reduction", "pct");
    for (const CountRow& r : rows)
        std::printf("%-8s %14llu %14llu %9.2f%%\n", r.policy.c_str(),
                    static_cast<unsigned long long>(r.count),
                    static_cast<unsigned long long>(r.reduction), r.reduction_pct);
    if (!o.out.empty())
        write_csv_file(o.out, [&](std::ostream& os) { write_count_csv(os, rows); });
    return 0;
}

int cmd_profile(Opts& o) {
    if (int rc = validate_nkd(o, false)) return rc;
    if (o.policy == PolicyKind::NONE)
        return usage_error("--policy must be sssc, pspc, or spspc for profile");

    const auto rows = profile_prune_error(o.N, o.d, make_policy(o));
    size_t zeros = 0;
    Rational mn_nonzero(0), mx(0);
    bool have_nonzero = false;
    std::vector<Rational> all;
    all.reserve(rows.size());
    for (const auto& r : rows) {
        all.push_back(r.pe);
        if (r.pe == 0) {
            ++zeros;
        } else {
            if (!have_nonzero || r.pe < mn_nonzero) mn_nonzero = r.pe;
            have_nonzero = true;
        }
        if (r.pe > mx) mx = r.pe;
    }
    std::sort(all.begin(), all.end());
    const Rational median = all.empty() ? Rational(0) : all[all.size() / 2];

    std::printf("profile: N=%u d=%u policy=%s classes=%zu zero_pe=%zu\n", o.N, o.d,
                policy_name(o.policy), rows.size(), zeros);
    std::printf("min_nonzero=%.9g median=%.9g max=%.9g\n",
                have_nonzero ? to_double(mn_nonzero) : 0.0, to_double(median), to_double(mx));
    if (!o.out.empty())
        write_csv_file(o.out, [&](std::ostream& os) { write_profile_csv(os, rows); });
    return 0;
}

int cmd_thresholds(Opts& o) {
    if (int rc = validate_nkd(o, false)) return rc;
    if (o.policy != PolicyKind::PSPC && o.policy != PolicyKind::SPSPC)
        return usage_error("--policy must be pspc or spspc for thresholds");

    const ThresholdTable table = build_threshold_table(o.N, o.d, make_policy(o));
    std::printf("thresholds: N=%u d=%u policy=%s entries=%zu weight_evals=%llu "
                "max_entry_weight_evals=%u\n",
                o.N, o.d, policy_name(o.policy), table.size(),
                static_cast<unsigned long long>(table.total_weight_evals()),
                table.max_entry_weight_evals());
    if (!o.out.empty())
        write_csv_file(o.out, [&](std::ostream& os) { write_threshold_csv(os, table); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"successive-cancellation decoding of polar codes over a noisy "
                 "d-deletion channel"};
    app.require_subcommand(1);
    // Defaults file; keys live in a [subcommand] section, e.g. [simulate].
    // Command-line flags always win. Goes before the subcommand name.
    app.set_config("--config", "", "key=value defaults per [subcommand] section");

    Opts so, co, po, to;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo FER/BER simulation");
    add_common(sim, so);
    CLI::App* cnt = app.add_subcommand("count", "static scenario-count table per policy");
    add_common(cnt, co);
    CLI::App* prof = app.add_subcommand("profile", "per-node pruning error probabilities");
    add_common(prof, po);
    CLI::App* thr = app.add_subcommand("thresholds", "build and export the threshold table");
    add_common(thr, to);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(so);
        if (cnt->parsed()) return cmd_count(co);
        if (prof->parsed()) return cmd_profile(po);
        if (thr->parsed()) return cmd_thresholds(to);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
