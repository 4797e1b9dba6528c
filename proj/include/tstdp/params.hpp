#pragma once

#include <array>
#include <string_view>

namespace tstdp {

/// Amplitudes and time constants of the classic pair rule: a potentiation
/// branch a_plus * exp(-dt/tau_plus) for dt > 0 and a depression branch
/// -a_minus * exp(dt/tau_minus) for dt <= 0, dt = t_post - t_pre.
struct PairParams {
    double a_plus = 0.0;    ///< dimensionless
    double a_minus = 0.0;   ///< dimensionless
    double tau_plus = 0.0168;  ///< s
    double tau_minus = 0.0337; ///< s
};

/// The eight parameters of the triplet rule. The pair rule embeds as the
/// special case a3_plus = a3_minus = 0.
///
/// epsilon is the "just before" guard on the triplet traces: at a post spike
/// the post-post interval is taken against the previous post spike, never the
/// current one (likewise pre-pre intervals at pre spikes). That ordering rule
/// realizes the guard exactly, so epsilon never enters any arithmetic; the
/// field documents the convention and must stay below the resolution floor.
struct TripletParams {
    double a2_plus = 0.0;  ///< pair potentiation amplitude
    double a2_minus = 0.0; ///< pair depression amplitude
    double a3_plus = 0.0;  ///< triplet potentiation amplitude
    double a3_minus = 0.0; ///< triplet depression amplitude
    double tau_plus = 0.0168;  ///< s, pre trace for potentiation
    double tau_minus = 0.0337; ///< s, post trace for depression
    double tau_x = 0.1;        ///< s, pre-pre trace (triplet depression)
    double tau_y = 0.05;       ///< s, post-post trace (triplet potentiation)
    double epsilon = 1e-9;     ///< s, ordering guard; not used numerically

    /// Throws std::invalid_argument on negative amplitudes, non-positive time
    /// constants, or an epsilon at or above the resolution floor.
    void validate() const;
};

/// Pair kernel plus the suppression constant tau_s of the efficacy factors
/// eps_i = 1 - exp(-(t_i - t_{i-1}) / tau_s). A spike without predecessor has
/// efficacy 1 (the limit of an infinite preceding gap).
struct SuppressionParams {
    PairParams pair;
    double tau_s = 0.034; ///< s
};

/// Uniform addressing of the eight triplet parameters; the order doubles as
/// the layout of perturbation-factor vectors and fit masks.
enum class ParamId : int {
    A2Plus = 0,
    A2Minus,
    A3Plus,
    A3Minus,
    TauPlus,
    TauMinus,
    TauX,
    TauY,
};

inline constexpr int kParamCount = 8;

inline constexpr std::array<ParamId, kParamCount> kAllParams = {
    ParamId::A2Plus,  ParamId::A2Minus,  ParamId::A3Plus, ParamId::A3Minus,
    ParamId::TauPlus, ParamId::TauMinus, ParamId::TauX,   ParamId::TauY,
};

double get_param(const TripletParams& p, ParamId id);
void set_param(TripletParams& p, ParamId id, double value);
bool is_amplitude(ParamId id);

/// Model-unit name, e.g. "a2_plus".
std::string_view param_name(ParamId id);

/// Circuit bias-current alias, e.g. "I_pot1". The aliases are naming
/// conveniences only; values remain in model units.
std::string_view bias_alias(ParamId id);

/// One multiplicative factor per parameter, in kAllParams order.
using ParamScale = std::array<double, kParamCount>;

inline constexpr ParamScale kUnitScale = {1, 1, 1, 1, 1, 1, 1, 1};

/// Applies a mismatch vector: amplitudes are current-valued and scale with the
/// factor directly, time constants are set by their inverse, so tau -> tau / f.
TripletParams scale_params(const TripletParams& p, const ParamScale& factors);

} // namespace tstdp
