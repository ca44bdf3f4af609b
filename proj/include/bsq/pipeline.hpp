#pragma once

/// Orchestration of the scatter -> asymptotics -> PDE comparison pipeline:
/// JSON config with CLI overrides, staged commands with digest-matched
/// caching of intermediates, comparison fits, and the run manifest.

#include <string>
#include <vector>

#include "json.hpp"

#include "bsq/asymptotics.hpp"
#include "bsq/csvio.hpp"
#include "bsq/pde.hpp"
#include "bsq/profiles.hpp"
#include "bsq/scatter.hpp"

namespace bsq {

struct PipelineConfig {
    nlohmann::json raw;          ///< the merged config as given (for manifest)
    Profile profile;
    double k_min = 1e-3;
    double k_max = 6.5;
    std::size_t k_n = 1301;
    std::vector<double> zetas{0.6, 1.0, 1.4};
    std::vector<double> ts{40.0, 80.0, 160.0};
    double tol = 1e-10;          ///< ODE sweep tolerance
    double margin = 0.05;        ///< sector clearance above zeta0
    SolverConfig pde;
    int threads = 0;             ///< 0 = library default
    std::string out_dir = "out";
    Exec exec = Exec::openmp;
};

/// The built-in default configuration (negative-amplitude gaussian datum).
nlohmann::json default_config_json();

/// Parse a config JSON object into a typed PipelineConfig (missing fields
/// take defaults; unknown fields are rejected to catch typos).
PipelineConfig parse_config(const nlohmann::json& raw);

/// Read a config file and parse it; empty path = built-in defaults.
PipelineConfig load_config(const std::string& path);

/// Apply one "dotted.key=value" override onto the raw JSON (value parsed as
/// number, bool, comma list of numbers, or string).
void apply_override(nlohmann::json& raw, const std::string& key_eq_value);

/// Least-squares line through (log t, log |residual|).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n = 0;
    bool degenerate = true; ///< too few points or a zero residual
};
FitResult fit_loglog(const std::vector<double>& t, const std::vector<double>& abs_residual);

/// Stage commands.  Each writes its artifacts under cfg.out_dir, updates
/// manifest.json (config, digests, timings, error estimates), reuses cached
/// intermediates whose recorded input digest and file digest both match,
/// and throws bsq::Error subclasses on failure.
void cmd_scatter(const PipelineConfig& cfg);
void cmd_asym(const PipelineConfig& cfg);
void cmd_pde(const PipelineConfig& cfg);
void cmd_compare(const PipelineConfig& cfg);
void cmd_report(const PipelineConfig& cfg);
int cmd_check_assumptions(const PipelineConfig& cfg); ///< 4 on a failed verdict

/// Shared helpers (exposed for tests).
SpectralLine ensure_spectral_line(const PipelineConfig& cfg);
std::vector<double> make_k_grid(double k_min, double k_max, std::size_t n);

} // namespace bsq
