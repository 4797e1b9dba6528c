#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tstdp/params.hpp"
#include "tstdp/protocol.hpp"
#include "tstdp/rules.hpp"

namespace tstdp {

/// Which plasticity rule a sweep drives.
using RuleSpec = std::variant<PairParams, TripletParams, SuppressionParams>;

double evaluate_rule(const RuleSpec& rule, const ProtocolTrains& trains);

/// Mean/spread over the trials of one grid point. Deterministic protocols
/// produce identical trials, in which case stddev is exactly 0.
struct SweepStat {
    double mean = 0.0;
    double stddev = 0.0;
    int trials = 0;
};

SweepStat make_stat(const std::vector<double>& values);

struct WindowPoint {
    double dt = 0.0; ///< s
    SweepStat stat;
};

struct FreqPoint {
    double rho = 0.0; ///< Hz
    SweepStat stat;
    bool valid = true;
    std::string note; ///< why the point was skipped, when invalid
};

struct FreqCurve {
    double dt = 0.0; ///< s
    std::vector<FreqPoint> points;
};

struct TripletGridPoint {
    double dt1 = 0.0;
    double dt2 = 0.0;
    SweepStat stat;
    bool valid = true;
    std::string note;
};

struct QuadPoint {
    double T = 0.0; ///< s
    SweepStat stat;
    bool valid = true;
    std::string note;
};

struct SixTripletValue {
    SixTripletKind kind;
    double dw = 0.0;
};

struct BcmPoint {
    double rho_post = 0.0; ///< Hz (equals rho_pre on the presynaptic curve)
    SweepStat stat;        ///< drift in weight / s
};

struct WindowSweep {
    std::vector<double> dt_grid; ///< s
    double rho = 1.0;
    int n_pairs = 60;
    int trials = 1;
};

struct FrequencySweep {
    std::vector<double> dt_set = {0.010, -0.010}; ///< s
    std::vector<double> rho_grid;                 ///< Hz
    int n_pairs = 60;
    int trials = 1;
};

struct TripletGridSweep {
    TripletKind kind = TripletKind::PrePostPre;
    std::vector<std::array<double, 2>> points; ///< (dt1, dt2) in s
    double rho = 1.0;
    int n = 60;
    int trials = 1;
};

struct QuadrupletSweepSpec {
    double dt = 0.005;          ///< s
    std::vector<double> t_grid; ///< s
    double rho = 1.0;
    int n = 60;
    int trials = 1;
};

struct SixTripletSpec {
    double gap1 = 0.005; ///< s
    double gap2 = 0.005; ///< s
    double rho = 0.2;
    int n = 60;
};

struct BcmSweep {
    double rho_pre = 10.0;             ///< Hz, ignored on the presynaptic curve
    std::vector<double> rho_post_grid; ///< Hz
    double duration = 100.0;           ///< s
    int trials = 10;
    std::uint64_t seed = 0;
};

/// Weight change versus pairing delay (the STDP learning window).
/// Generator errors propagate.
std::vector<WindowPoint> stdp_window(const RuleSpec& rule, const WindowSweep& sweep);

/// Weight change versus pairing repetition rate, one curve per dt. Grid
/// points whose pairing span does not fit the period are reported and skipped.
std::vector<FreqCurve> frequency_sweep(const RuleSpec& rule, const FrequencySweep& sweep);

/// Weight change over a (dt1, dt2) grid for one triplet kind; invalid timing
/// combinations are reported and skipped.
std::vector<TripletGridPoint> triplet_grid(const RuleSpec& rule, const TripletGridSweep& sweep);

/// Weight change versus the quadruplet midpoint separation T.
std::vector<QuadPoint> quadruplet_sweep(const RuleSpec& rule, const QuadrupletSweepSpec& sweep);

/// Weight change of all six three-spike orderings at the same pair of
/// adjacent gaps.
std::array<SixTripletValue, 6> six_triplet_matrix(const RuleSpec& rule, const SixTripletSpec& spec);

/// Mean +- std of the Poisson-protocol drift (weight per second) across
/// trials, per post-synaptic rate. Requires a3_minus == 0; per-trial seeds
/// derive from (seed, point, trial), so results are reproducible and
/// independent of evaluation order.
std::vector<BcmPoint> bcm_curve(const TripletParams& params, const BcmSweep& sweep);

/// As bcm_curve but with rho_pre = rho_post at every grid point.
std::vector<BcmPoint> bcm_presynaptic_curve(const TripletParams& params, const BcmSweep& sweep);

/// Grid defaults mirroring the usual figure axes.
std::vector<double> default_window_grid();    ///< -100..100 ms, 5 ms steps
std::vector<double> default_rho_grid();       ///< {0.1, 5, 10, ..., 50} Hz
std::vector<double> default_rho_post_grid();  ///< 0..50 Hz, 2 Hz steps
std::vector<double> default_quad_t_grid();    ///< +-[10, 100] ms, 10 ms steps

} // namespace tstdp
