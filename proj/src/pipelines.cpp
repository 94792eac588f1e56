#include "sq/pipelines.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "sq/io.hpp"
#include "sq/rng.hpp"

namespace sq {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool wants(const RunConfig& cfg, const char* fmt) {
    for (const auto& f : cfg.formats)
        if (f == fmt) return true;
    return false;
}

uint64_t seed_for_chain(const RunConfig& cfg, int c) {
    return c == 0 ? cfg.traj.seed : rng::chain_seed(cfg.traj.seed, c);
}

int stationarity_k_max(const RunConfig& cfg) { return cfg.k_max > 0 ? cfg.k_max : 4; }

// merged observable table over all configured chains
struct EnsembleTable {
    std::vector<TestFunction> phis;
    ChainTable table;
    SolveResult result;
};

EnsembleTable collect(const RunConfig& cfg) {
    std::vector<TestFunction> phis = select_test_functions(cfg);
    const long expected = records_per_chain(cfg.traj) * cfg.chains;
    EnsembleTable et{phis, ChainTable(cfg.grid, cfg.noise, phis, expected), {}};
    et.result = run_ensemble(cfg, {&et.table});
    return et;
}

json stationarity_json(const std::string& label, const std::vector<StationarityRecord>& recs) {
    json rows = json::array();
    for (const auto& r : recs) {
        rows.push_back({{"k", r.k},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"residual", r.residual},
                        {"stderr", r.stderr_},
                        {"z", r.z},
                        {"n_samples", r.n_samples}});
    }
    return json{{"phi", label}, {"records", rows}};
}

void print_stationarity(std::ostream& out, const std::string& label,
                        const std::vector<StationarityRecord>& recs) {
    out << "phi = " << label << "\n";
    out << "  k      lhs          rhs          residual     stderr       z\n";
    for (const auto& r : recs) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-6d %-12.5g %-12.5g %-12.5g %-12.5g %-8.3g\n", r.k,
                      r.lhs, r.rhs, r.residual, r.stderr_, r.z);
        out << line;
    }
}

double drift_slope_bound(const RunConfig& cfg, const Field& u0) {
    double m = 0.0;
    for (long i = 0; i < u0.size(); ++i)
        m = std::max(m, std::abs(cfg.nl.eval_local_derivative(u0[i])));
    return cfg.traj.dt * m;
}

}  // namespace

std::vector<TestFunction> select_test_functions(const RunConfig& cfg) {
    std::vector<TestFunction> all = default_test_functions(cfg.grid, cfg.noise);
    if (cfg.phi_labels.empty()) return all;
    std::vector<TestFunction> picked;
    for (const auto& want : cfg.phi_labels) {
        bool found = false;
        for (const auto& phi : all) {
            if (phi.label == want) {
                picked.push_back(phi);
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("diagnostics.phis: unknown test function \"" + want + "\"");
    }
    return picked;
}

Field initial_field(const RunConfig& cfg, uint64_t seed) {
    if (cfg.init == InitKind::Zero) return Field(cfg.grid, 0.0);
    return sample_gff(cfg.grid, cfg.noise, seed, 0);
}

long records_per_chain(const TrajectoryConfig& traj) {
    const long total = traj.total_steps();
    const long burn = traj.burn_steps();
    const long stride = traj.stride_steps();
    if (burn == 0) return total / stride;
    return (total - burn) / stride + 1;
}

SolveResult run_ensemble(const RunConfig& cfg, const std::vector<ChainObserver*>& observers) {
    SolveResult last;
    long records = 0;
    for (int c = 0; c < cfg.chains; ++c) {
        TrajectoryConfig tc = cfg.traj;
        tc.seed = seed_for_chain(cfg, c);
        Field u0 = initial_field(cfg, tc.seed);
        last = solve_chain(u0, cfg.nl, cfg.noise, tc, observers);
        records += last.records;
    }
    last.records = records;
    return last;
}

void write_json_artifact(const RunConfig& cfg, const json& j, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/" + name);
    out << j.dump(2) << "\n";
}

PipelineResult run_simulate(const RunConfig& cfg, std::ostream& out) {
    std::vector<TestFunction> phis = select_test_functions(cfg);
    const long per = records_per_chain(cfg.traj);
    const double sigma2 = effective_sigma2(cfg.grid, cfg.noise, cfg.nl, cfg.traj);
    fs::create_directories(cfg.out_dir);

    json chains_json = json::array();
    double stability = 0.0;
    for (int c = 0; c < cfg.chains; ++c) {
        TrajectoryConfig tc = cfg.traj;
        tc.seed = seed_for_chain(cfg, c);
        Field u0 = initial_field(cfg, tc.seed);
        if (c == 0) stability = drift_slope_bound(cfg, u0);
        ChainTable table(cfg.grid, cfg.noise, phis, per);
        SolveResult r = solve_chain(u0, cfg.nl, cfg.noise, tc, {&table});
        const std::string prefix = "chain" + std::to_string(c) + "_";
        if (wants(cfg, "csv")) {
            write_chain_csv(table, cfg.out_dir, prefix);
            write_field_csv(r.final_field, cfg.out_dir + "/" + prefix + "final.csv");
        }
        chains_json.push_back({{"chain", c},
                               {"seed", tc.seed},
                               {"records", r.records},
                               {"final_sup", max_abs(r.final_field)}});
        out << "chain " << c << ": " << r.records << " records, final sup-norm "
            << num(max_abs(r.final_field)) << "\n";
    }

    json manifest = make_manifest(cfg, sigma2, stability);
    manifest["chains_run"] = chains_json;
    write_json_artifact(cfg, manifest, "manifest.json");
    out << "sigma2 in use: " << num(sigma2) << ", dt * sup|P'(u0)| = " << num(stability) << "\n";
    out << "wrote " << cfg.out_dir << "/manifest.json\n";
    return {true, manifest};
}

PipelineResult run_stationarity(const RunConfig& cfg, std::ostream& out) {
    EnsembleTable et = collect(cfg);
    const int kmax = stationarity_k_max(cfg);
    bool pass = true;
    double max_z = 0.0;
    json phis_json = json::array();
    for (size_t i = 0; i < et.phis.size(); ++i) {
        auto recs = stationarity_residuals(et.table, i, kmax);
        print_stationarity(out, et.phis[i].label, recs);
        phis_json.push_back(stationarity_json(et.phis[i].label, recs));
        for (const auto& r : recs) {
            max_z = std::max(max_z, std::abs(r.z));
            if (!(std::abs(r.z) <= 3.0)) pass = false;
        }
    }
    out << (pass ? "stationarity: all residuals within 3 SE" : "stationarity: residuals exceed 3 SE")
        << " (max |z| = " << num(max_z) << ", " << et.table.samples() << " samples)\n";
    json report{{"pass", pass}, {"max_abs_z", max_z}, {"k_max", kmax},
                {"samples", et.table.samples()}, {"phis", phis_json}};
    if (wants(cfg, "json")) write_json_artifact(cfg, report, "stationarity.json");
    return {pass, report};
}

PipelineResult run_nongauss(const RunConfig& cfg, std::ostream& out) {
    EnsembleTable et = collect(cfg);
    GaussianityReport rep = gaussianity_report(et.table, cfg.nl, cfg.k_max);
    json phis_json = json::array();
    for (const auto& pd : rep.per_phi) {
        out << "phi = " << pd.label << "\n";
        out << "  k      E[Q_k(X)Y]   stderr       z\n";
        json rows = json::array();
        for (const auto& c : pd.chaos) {
            char line[160];
            std::snprintf(line, sizeof line, "  %-6d %-12.5g %-12.5g %-8.3g%s\n", c.k, c.estimate,
                          c.stderr_, c.z, c.degenerate ? "  (degenerate)" : "");
            out << line;
            rows.push_back({{"k", c.k},
                            {"estimate", c.estimate},
                            {"stderr", c.stderr_},
                            {"z", c.z},
                            {"sigma2_hat", c.sigma2_hat},
                            {"degenerate", c.degenerate}});
        }
        if (pd.top_chaos != 0.0) {
            out << "  top chaos functional " << num(pd.top_chaos) << ", observed/expected ratio "
                << num(pd.top_ratio) << "\n";
        }
        phis_json.push_back({{"phi", pd.label},
                             {"chaos", rows},
                             {"top_chaos", pd.top_chaos},
                             {"top_ratio", pd.top_ratio}});
    }
    out << "verdict: "
        << (rep.gaussian_consistent ? "consistent with a Gaussian stationary law"
                                    : "non-Gaussian stationary law")
        << " (max |z| = " << num(rep.max_abs_chaos_z) << " over k = 2.." << rep.k_max << ")\n";
    json report{{"gaussian_consistent", rep.gaussian_consistent},
                {"max_abs_chaos_z", rep.max_abs_chaos_z},
                {"degree", rep.degree},
                {"k_max", rep.k_max},
                {"samples", et.table.samples()},
                {"phis", phis_json}};
    if (wants(cfg, "json")) write_json_artifact(cfg, report, "nongauss.json");
    return {true, report};
}

PipelineResult run_oracle(const RunConfig& cfg, std::ostream& out) {
    if (cfg.grid.dim != 1) throw ConfigError("oracle: the Gibbs sampler requires a d = 1 grid");
    std::vector<TestFunction> phis = select_test_functions(cfg);

    GibbsAction action{cfg.grid, cfg.nl, cfg.mala_mass};
    ChainTable oracle_table(cfg.grid, cfg.noise, phis, cfg.mala.samples);
    MalaResult mr = mala_chain(action, cfg.mala, {&oracle_table});
    out << "oracle: " << oracle_table.samples() << " samples, acceptance " << num(mr.acceptance)
        << ", step " << num(mr.step_used) << "\n";

    EnsembleTable et = collect(cfg);
    out << "dynamic: " << et.table.samples() << " samples over " << cfg.chains << " chain(s)\n";

    const int kmax = stationarity_k_max(cfg);
    MomentCompareReport cmp = moment_compare(et.table, oracle_table, kmax);
    out << "  phi            k    dynamic        oracle         z\n";
    json rows = json::array();
    for (const auto& g : cmp.gaps) {
        char line[200];
        std::snprintf(line, sizeof line, "  %-14s %-4d %-10.5g+-%-8.2g %-10.5g+-%-8.2g %-8.3g\n",
                      g.label.c_str(), g.k, g.mean_a, g.se_a, g.mean_b, g.se_b, g.z);
        out << line;
        rows.push_back({{"phi", g.label},
                        {"k", g.k},
                        {"dynamic_mean", g.mean_a},
                        {"dynamic_se", g.se_a},
                        {"oracle_mean", g.mean_b},
                        {"oracle_se", g.se_b},
                        {"z", g.z}});
    }
    out << (cmp.pass ? "moments agree within joint 3 SE" : "moment mismatch beyond 3 SE")
        << " (max |z| = " << num(cmp.max_abs_z) << ")\n";
    json report{{"pass", cmp.pass},
                {"max_abs_z", cmp.max_abs_z},
                {"acceptance", mr.acceptance},
                {"step_used", mr.step_used},
                {"moments", rows}};
    if (wants(cfg, "json")) write_json_artifact(cfg, report, "oracle.json");
    return {cmp.pass, report};
}

PipelineResult run_besov(const RunConfig& cfg, std::ostream& out) {
    json rows = json::array();
    std::vector<double> renorm_means, bare_means;
    out << "besov refinement study, alpha = " << num(cfg.besov_alpha) << "\n";
    out << "  n      renormalised   bare(sigma2=0)\n";
    for (int n : cfg.besov_grids) {
        RunConfig sub = cfg;
        sub.grid.n = n;
        double means[2];
        for (int variant = 0; variant < 2; ++variant) {
            if (variant == 1) sub.traj.sigma2_override = 0.0;
            BesovRecorder rec(cfg.besov_alpha);
            run_ensemble(sub, {&rec});
            means[variant] = mean_of(rec.norms());
        }
        renorm_means.push_back(means[0]);
        bare_means.push_back(means[1]);
        char line[120];
        std::snprintf(line, sizeof line, "  %-6d %-14.6g %-14.6g\n", n, means[0], means[1]);
        out << line;
        rows.push_back({{"n", n}, {"renormalised", means[0]}, {"bare", means[1]}});
    }
    double lo = renorm_means[0], hi = renorm_means[0];
    for (double v : renorm_means) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    bool bare_monotone = true;
    for (size_t i = 1; i < bare_means.size(); ++i)
        if (!(bare_means[i] > bare_means[i - 1])) bare_monotone = false;
    out << "renormalised max/min = " << num(ratio) << "; bare norms "
        << (bare_monotone ? "increase monotonically with n" : "are not monotone in n") << "\n";
    json report{{"alpha", cfg.besov_alpha},
                {"rows", rows},
                {"renorm_ratio", ratio},
                {"bare_monotone", bare_monotone}};
    if (wants(cfg, "json")) write_json_artifact(cfg, report, "besov.json");
    return {true, report};
}

PipelineResult run_crosscheck(const RunConfig& cfg, std::ostream& out) {
    Field u0 = initial_field(cfg, cfg.traj.seed);
    CrosscheckResult r = crosscheck_schemes(u0, cfg.nl, cfg.noise, cfg.traj);
    out << "split/direct agreement over " << r.times.size() << " checkpoints: max relative L2 gap "
        << num(r.max_rel_gap) << "\n";
    if (!r.times.empty()) {
        out << "  t        rel_gap\n";
        size_t step = std::max<size_t>(1, r.times.size() / 8);
        for (size_t i = 0; i < r.times.size(); i += step) {
            char line[80];
            std::snprintf(line, sizeof line, "  %-8.4g %-12.5g\n", r.times[i], r.rel_gap[i]);
            out << line;
        }
    }
    json report{{"max_rel_gap", r.max_rel_gap}, {"times", r.times}, {"rel_gap", r.rel_gap}};
    if (wants(cfg, "json")) write_json_artifact(cfg, report, "crosscheck.json");
    return {true, report};
}

}  // namespace sq
