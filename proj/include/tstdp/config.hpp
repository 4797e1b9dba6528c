#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tstdp/fitting.hpp"
#include "tstdp/robustness.hpp"
#include "tstdp/sweeps.hpp"

namespace tstdp {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

struct BcmConfig {
    BcmSweep sweep;
    std::vector<double> a3_plus_values; ///< empty = use the configured a3_plus
    bool presynaptic = false;
};

struct FitConfig {
    ParamMask mask = full_mask();
    std::string mask_name = "full";
    bool has_initial = false;
    TripletParams initial; ///< falls back to the rule parameters
    double tol_x = 1e-6;
    double tol_f = 1e-6;
    int max_iter = 2000;
    int n_starts = 1;
};

struct McConfig {
    PerturbationSpec spec;
    bool retune = false;
};

/// The parsed, schema-validated run configuration. Time-valued keys carry an
/// explicit _ms/_s suffix in the file and are stored in seconds here. Unknown
/// keys anywhere raise ConfigError naming the key and section; bias-current
/// alias keys (I_pot1, I_tp1_ms, ...) are accepted interchangeably with the
/// model-unit names they map to.
struct RunConfig {
    std::uint64_t seed = 0;
    std::string out_dir; ///< empty = unset (flag or environment decides)
    RuleSpec rule = TripletParams{};
    WindowSweep window{.dt_grid = default_window_grid()};
    FrequencySweep freq{.rho_grid = default_rho_grid()};
    TripletGridSweep triplet{.points = {{0.005, -0.005}}};
    QuadrupletSweepSpec quad{.t_grid = default_quad_t_grid()};
    SixTripletSpec six;
    BcmConfig bcm;
    FitConfig fit;
    McConfig mc;

    /// The exact file bytes, digested into the run manifest.
    std::string raw_text;
};

RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::filesystem::path& path);

/// The triplet parameters of the configured rule; throws ConfigError when the
/// command needs the triplet rule but the config selects another one.
TripletParams require_triplet(const RuleSpec& rule, const std::string& command);

} // namespace tstdp
