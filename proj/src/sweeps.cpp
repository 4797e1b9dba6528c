#include "tstdp/sweeps.hpp"

#include <cmath>
#include <stdexcept>

#include "tstdp/errors.hpp"
#include "tstdp/rng.hpp"

namespace tstdp {

double evaluate_rule(const RuleSpec& rule, const ProtocolTrains& trains) {
    return std::visit(
        [&](const auto& params) -> double {
            using P = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<P, PairParams>) {
                return pstdp_total(params, trains);
            } else if constexpr (std::is_same_v<P, TripletParams>) {
                return tstdp_total(params, trains);
            } else {
                return suppressive_total(params, trains);
            }
        },
        rule);
}

SweepStat make_stat(const std::vector<double>& values) {
    SweepStat stat;
    stat.trials = static_cast<int>(values.size());
    if (values.empty()) return stat;

    bool all_equal = true;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        all_equal = all_equal && v == values.front();
    }
    if (all_equal) {
        // Identical trials (deterministic protocols, or a single trial) must
        // report a spread of exactly zero, untouched by summation rounding.
        stat.mean = values.front();
        stat.stddev = 0.0;
        return stat;
    }
    stat.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - stat.mean) * (v - stat.mean);
    stat.stddev = std::sqrt(ss / static_cast<double>(values.size()));
    return stat;
}

namespace {

// Deterministic protocols give identical trials; running them anyway keeps
// the mean/std bookkeeping uniform and honest.
SweepStat repeat_rule(const RuleSpec& rule, const ProtocolTrains& trains, int trials) {
    std::vector<double> values;
    values.reserve(trials);
    for (int t = 0; t < trials; ++t) values.push_back(evaluate_rule(rule, trains));
    return make_stat(values);
}

} // namespace

std::vector<WindowPoint> stdp_window(const RuleSpec& rule, const WindowSweep& sweep) {
    std::vector<WindowPoint> out;
    out.reserve(sweep.dt_grid.size());
    for (double dt : sweep.dt_grid) {
        const ProtocolTrains trains = generate_pairing(dt, sweep.rho, sweep.n_pairs);
        out.push_back({dt, repeat_rule(rule, trains, sweep.trials)});
    }
    return out;
}

std::vector<FreqCurve> frequency_sweep(const RuleSpec& rule, const FrequencySweep& sweep) {
    std::vector<FreqCurve> curves;
    for (double dt : sweep.dt_set) {
        FreqCurve curve;
        curve.dt = dt;
        for (double rho : sweep.rho_grid) {
            FreqPoint point;
            point.rho = rho;
            try {
                const ProtocolTrains trains = generate_pairing(dt, rho, sweep.n_pairs);
                point.stat = repeat_rule(rule, trains, sweep.trials);
            } catch (const ProtocolError& err) {
                point.valid = false;
                point.note = err.what();
            }
            curve.points.push_back(std::move(point));
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<TripletGridPoint> triplet_grid(const RuleSpec& rule, const TripletGridSweep& sweep) {
    std::vector<TripletGridPoint> out;
    out.reserve(sweep.points.size());
    for (const auto& [dt1, dt2] : sweep.points) {
        TripletGridPoint point;
        point.dt1 = dt1;
        point.dt2 = dt2;
        try {
            const ProtocolTrains trains = generate_triplet(sweep.kind, dt1, dt2, sweep.rho, sweep.n);
            point.stat = repeat_rule(rule, trains, sweep.trials);
        } catch (const ProtocolError& err) {
            point.valid = false;
            point.note = err.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<QuadPoint> quadruplet_sweep(const RuleSpec& rule, const QuadrupletSweepSpec& sweep) {
    std::vector<QuadPoint> out;
    out.reserve(sweep.t_grid.size());
    for (double T : sweep.t_grid) {
        QuadPoint point;
        point.T = T;
        try {
            const ProtocolTrains trains = generate_quadruplet(sweep.dt, T, sweep.rho, sweep.n);
            point.stat = repeat_rule(rule, trains, sweep.trials);
        } catch (const ProtocolError& err) {
            point.valid = false;
            point.note = err.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

std::array<SixTripletValue, 6> six_triplet_matrix(const RuleSpec& rule, const SixTripletSpec& spec) {
    std::array<SixTripletValue, 6> out{};
    int k = 0;
    for (SixTripletKind kind :
         {SixTripletKind::PrePostPost, SixTripletKind::PostPostPre, SixTripletKind::PostPrePost,
          SixTripletKind::PrePostPre, SixTripletKind::PrePrePost, SixTripletKind::PostPrePre}) {
        const ProtocolTrains trains =
            generate_six_triplet(kind, spec.gap1, spec.gap2, spec.rho, spec.n);
        out[k++] = {kind, evaluate_rule(RuleSpec(rule), trains)};
    }
    return out;
}

namespace {

std::vector<BcmPoint> bcm_curve_impl(const TripletParams& params, const BcmSweep& sweep,
                                     bool presynaptic) {
    if (params.a3_minus != 0.0) {
        throw std::invalid_argument(
            "bcm_curve: the rate-based analysis applies to the minimal rule only "
            "(a3_minus must be 0)");
    }
    if (sweep.trials < 1) throw std::invalid_argument("bcm_curve: trials must be >= 1");

    std::vector<BcmPoint> out;
    out.reserve(sweep.rho_post_grid.size());
    for (std::size_t i = 0; i < sweep.rho_post_grid.size(); ++i) {
        const double rho_post = sweep.rho_post_grid[i];
        const double rho_pre = presynaptic ? rho_post : sweep.rho_pre;
        std::vector<double> drifts;
        drifts.reserve(sweep.trials);
        for (int t = 0; t < sweep.trials; ++t) {
            PoissonProtocol protocol;
            protocol.rho_pre = rho_pre;
            protocol.rho_post = rho_post;
            protocol.duration = sweep.duration;
            protocol.seed = derive_seed(sweep.seed,
                                        i * static_cast<std::uint64_t>(sweep.trials) + t);
            const ProtocolTrains trains = generate(protocol);
            drifts.push_back(tstdp_total(params, trains) / sweep.duration);
        }
        out.push_back({rho_post, make_stat(drifts)});
    }
    return out;
}

} // namespace

std::vector<BcmPoint> bcm_curve(const TripletParams& params, const BcmSweep& sweep) {
    return bcm_curve_impl(params, sweep, false);
}

std::vector<BcmPoint> bcm_presynaptic_curve(const TripletParams& params, const BcmSweep& sweep) {
    return bcm_curve_impl(params, sweep, true);
}

std::vector<double> default_window_grid() {
    std::vector<double> grid;
    for (int ms = -100; ms <= 100; ms += 5) {
        if (ms == 0) continue; // coincident pre/post pairs are rejected
        grid.push_back(ms * 1e-3);
    }
    return grid;
}

std::vector<double> default_rho_grid() {
    std::vector<double> grid = {0.1};
    for (int hz = 5; hz <= 50; hz += 5) grid.push_back(hz);
    return grid;
}

std::vector<double> default_rho_post_grid() {
    std::vector<double> grid;
    for (int hz = 0; hz <= 50; hz += 2) grid.push_back(hz);
    return grid;
}

std::vector<double> default_quad_t_grid() {
    std::vector<double> grid;
    for (int ms = -100; ms <= 100; ms += 10) {
        if (std::abs(ms) < 10) continue; // |T| must exceed the pair delay
        grid.push_back(ms * 1e-3);
    }
    return grid;
}

} // namespace tstdp
