#pragma once

#include <iosfwd>

#include "sq/chain.hpp"
#include "sq/config.hpp"
#include "sq/diagnostics.hpp"
#include "sq/oracle.hpp"

namespace sq {

// Test functions a run diagnoses against: all defaults, or the configured
// label subset.
std::vector<TestFunction> select_test_functions(const RunConfig& cfg);

// Initial state for one chain under the given seed.
Field initial_field(const RunConfig& cfg, uint64_t seed);

long records_per_chain(const TrajectoryConfig& traj);

// Runs every configured chain into the shared observers.  Chain 0 uses the
// configured seed directly (so single-chain runs match plain solve_chain);
// further chains use derived seeds.  Records are summed over chains.
SolveResult run_ensemble(const RunConfig& cfg, const std::vector<ChainObserver*>& observers);

struct PipelineResult {
    bool pass = true;
    nlohmann::json report;
};

PipelineResult run_simulate(const RunConfig& cfg, std::ostream& out);
PipelineResult run_stationarity(const RunConfig& cfg, std::ostream& out);
PipelineResult run_nongauss(const RunConfig& cfg, std::ostream& out);
PipelineResult run_oracle(const RunConfig& cfg, std::ostream& out);
PipelineResult run_besov(const RunConfig& cfg, std::ostream& out);
PipelineResult run_crosscheck(const RunConfig& cfg, std::ostream& out);

void write_json_artifact(const RunConfig& cfg, const nlohmann::json& j, const std::string& name);

}  // namespace sq
