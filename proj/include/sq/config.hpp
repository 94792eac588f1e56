#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sq/grid.hpp"
#include "sq/noise.hpp"
#include "sq/nonlinearity.hpp"
#include "sq/oracle.hpp"
#include "sq/stepper.hpp"

namespace sq {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitKind { Gff, Zero };

// Fully resolved run description.  Parsed strictly: unknown keys and type
// mismatches are configuration errors, and the sections grid, nonlinearity
// and trajectory must be present.
struct RunConfig {
    TorusGrid grid{1, 64};
    NoiseSpec noise{};
    NonlinearitySpec nl{};
    TrajectoryConfig traj{};
    int chains = 1;
    InitKind init = InitKind::Gff;
    std::vector<std::string> phi_labels;  // empty: all default test functions
    int k_max = 0;                        // 0: degree-derived default
    int mode_cut = 2;
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv", "json"};
    double besov_alpha = -0.1;
    std::vector<int> besov_grids{32, 64, 128};
    MalaConfig mala{};
    double mala_mass = 1.0;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

// dotted assignment "section.key=value"; the value is parsed as JSON when
// possible and kept as a string otherwise
void apply_override(nlohmann::json& j, const std::string& assignment);

// config with every default materialised
nlohmann::json resolved_json(const RunConfig& c);

// resolved config plus version, the renormalisation constant in use and the
// explicit-drift stability figure dt * max|P'(u0)|
nlohmann::json make_manifest(const RunConfig& c, double sigma2, double stability);

}  // namespace sq
