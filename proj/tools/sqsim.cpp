#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sq/pipelines.hpp"
#include "sq/regimes.hpp"

#ifndef SQ_PRESET_DIR
#define SQ_PRESET_DIR "presets"
#endif

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sq::ConfigError("cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw sq::ConfigError(path + " is not valid JSON: " + std::string(e.what()));
    }
}

json load_raw_config(const std::string& config_path, const std::string& preset) {
    if (!config_path.empty() && !preset.empty())
        throw sq::ConfigError("give either --config or --preset, not both");
    if (!preset.empty()) return load_json_file(std::string(SQ_PRESET_DIR) + "/" + preset + ".json");
    if (!config_path.empty()) return load_json_file(config_path);
    throw sq::ConfigError("a configuration is required: --config FILE or --preset NAME");
}

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::vector<std::string> sets;
};

void attach_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "JSON configuration file");
    sub->add_option("--preset", o.preset, "named preset shipped with the tool");
    sub->add_option("--set", o.sets, "dot-path override, e.g. trajectory.dt=0.001")
        ->take_all()
        ->allow_extra_args(false);
}

sq::RunConfig resolve(const CommonOpts& o) {
    json raw = load_raw_config(o.config_path, o.preset);
    for (const auto& s : o.sets) sq::apply_override(raw, s);
    return sq::parse_config(raw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parabolic stochastic quantisation: simulator and verification suite"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* sim = app.add_subcommand("simulate", "integrate chains and write them to disk");
    CLI::App* stat = app.add_subcommand("stationarity", "generator stationarity residuals");
    CLI::App* nong = app.add_subcommand("nongauss", "Hermite-moment Gaussianity verdict");
    CLI::App* orac = app.add_subcommand("oracle", "Gibbs-sampler moment comparison (d = 1)");
    CLI::App* beso = app.add_subcommand("besov", "Besov-norm grid refinement study");
    CLI::App* cross = app.add_subcommand("crosscheck", "split vs direct scheme agreement");
    for (CLI::App* sub : {sim, stat, nong, orac, beso, cross}) attach_common(sub, opts);

    CLI::App* regime = app.add_subcommand("regime", "closed-form parameter regime report");
    int reg_p = 0, reg_d = 0;
    std::string reg_beta, reg_rho, reg_config, reg_preset;
    bool reg_json = false;
    regime->add_option("--p", reg_p, "drift degree p >= 1");
    regime->add_option("--d", reg_d, "dimension in {1,2,3,4}");
    regime->add_option("--beta", reg_beta, "noise exponent, exact rational (e.g. -1/2)");
    regime->add_option("--rho", reg_rho, "regularity offset, exact rational; implies beta");
    regime->add_option("--config", reg_config, "JSON file with p, d and beta or rho");
    regime->add_option("--preset", reg_preset, "named preset with p, d and beta or rho");
    regime->add_flag("--json", reg_json, "also print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (regime->parsed()) {
            if (!reg_config.empty() || !reg_preset.empty()) {
                json j = load_raw_config(reg_config, reg_preset);
                if (reg_p == 0 && j.contains("p")) reg_p = j.at("p").get<int>();
                if (reg_d == 0 && j.contains("d")) reg_d = j.at("d").get<int>();
                auto text_of = [](const json& v) {
                    return v.is_string() ? v.get<std::string>() : v.dump();
                };
                if (reg_beta.empty() && reg_rho.empty()) {
                    if (j.contains("rho")) reg_rho = text_of(j.at("rho"));
                    if (j.contains("beta")) reg_beta = text_of(j.at("beta"));
                }
            }
            if (reg_p == 0 || reg_d == 0)
                throw sq::ConfigError("regime: --p and --d are required (flags or config)");
            if (reg_beta.empty() == reg_rho.empty())
                throw sq::ConfigError("regime: give exactly one of --beta or --rho");
            sq::Rational beta = reg_rho.empty()
                                    ? sq::parse_rational(reg_beta)
                                    : sq::beta_from_rho(reg_d, sq::parse_rational(reg_rho));
            sq::RegimeReport rep = sq::regime_report(reg_p, reg_d, beta);
            std::cout << sq::format_report(rep);
            if (reg_json) std::cout << sq::report_json(rep) << "\n";
            return 0;
        }

        sq::RunConfig cfg = resolve(opts);
        if (sim->parsed()) sq::run_simulate(cfg, std::cout);
        if (stat->parsed()) sq::run_stationarity(cfg, std::cout);
        if (nong->parsed()) sq::run_nongauss(cfg, std::cout);
        if (orac->parsed()) sq::run_oracle(cfg, std::cout);
        if (beso->parsed()) sq::run_besov(cfg, std::cout);
        if (cross->parsed()) sq::run_crosscheck(cfg, std::cout);
        return 0;
    } catch (const sq::BlowUpError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const sq::MalaTuningError& e) {
        std::cerr << "statistical refusal: " << e.what() << "\n";
        return 3;
    } catch (const sq::StatisticalRefusal& e) {
        std::cerr << "statistical refusal: " << e.what() << "\n";
        return 3;
    } catch (const sq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
