#include "tstdp/rules.hpp"

#include <cmath>
#include <stdexcept>

#include "tstdp/interactions.hpp"

namespace tstdp {

// pstdp_total and tstdp_total keep term-for-term identical arithmetic on the
// shared event stream so that the a3 = 0 reduction is exact in floating point.

double pstdp_total(const PairParams& params, const ProtocolTrains& trains) {
    double total = 0.0;
    for (const InteractionEvent& ev : nearest_interactions(trains.pre, trains.post)) {
        if (!ev.pair_dt) continue;
        const double dt = *ev.pair_dt;
        if (ev.kind == SpikeKind::Post && dt > 0.0) {
            total += (params.a_plus + 0.0) * std::exp(-dt / params.tau_plus);
        } else {
            total -= (params.a_minus + 0.0) * std::exp(dt / params.tau_minus);
        }
    }
    return total;
}

double tstdp_total(const TripletParams& params, const ProtocolTrains& trains) {
    double total = 0.0;
    for (const InteractionEvent& ev : nearest_interactions(trains.pre, trains.post)) {
        if (!ev.pair_dt) continue;
        const double dt = *ev.pair_dt;
        if (ev.kind == SpikeKind::Post && dt > 0.0) {
            const double triplet =
                ev.same_gap ? params.a3_plus * std::exp(-*ev.same_gap / params.tau_y) : 0.0;
            total += (params.a2_plus + triplet) * std::exp(-dt / params.tau_plus);
        } else if (ev.kind == SpikeKind::Pre) {
            const double triplet =
                ev.same_gap ? params.a3_minus * std::exp(-*ev.same_gap / params.tau_x) : 0.0;
            total -= (params.a2_minus + triplet) * std::exp(dt / params.tau_minus);
        } else {
            // Coincident pair seen from the post side: dt == 0 sits on the
            // depression branch. The pre-pre triplet interval is not defined
            // at a post event, so only the pair term applies.
            total -= (params.a2_minus + 0.0) * std::exp(dt / params.tau_minus);
        }
    }
    return total;
}

double suppressive_total(const SuppressionParams& params, const ProtocolTrains& trains) {
    const auto efficacy = [&](const std::optional<double>& gap) {
        return gap ? 1.0 - std::exp(-*gap / params.tau_s) : 1.0;
    };
    double total = 0.0;
    for (const InteractionEvent& ev : nearest_interactions(trains.pre, trains.post)) {
        if (!ev.pair_dt) continue;
        const double dt = *ev.pair_dt;
        double kernel;
        if (ev.kind == SpikeKind::Post && dt > 0.0) {
            kernel = (params.pair.a_plus + 0.0) * std::exp(-dt / params.pair.tau_plus);
        } else {
            kernel = -(params.pair.a_minus + 0.0) * std::exp(dt / params.pair.tau_minus);
        }
        total += efficacy(ev.same_gap) * efficacy(ev.opposite_gap) * kernel;
    }
    return total;
}

double averaged_drift(const TripletParams& p, double rho_pre, double rho_post) {
    return -p.a2_minus * p.tau_minus * rho_pre * rho_post +
           p.a2_plus * p.tau_plus * rho_pre * rho_post -
           p.a3_minus * p.tau_minus * p.tau_x * rho_pre * rho_pre * rho_post +
           p.a3_plus * p.tau_plus * p.tau_y * rho_post * rho_post * rho_pre;
}

double bcm_threshold(const TripletParams& p, const ThresholdSpec& spec) {
    const double denom = spec.rho0_p * p.a3_plus * p.tau_plus * p.tau_y;
    if (!(denom > 0.0)) {
        throw std::domain_error("bcm_threshold: singular parameters, "
                                "rho0^p * a3_plus * tau_plus * tau_y must be > 0");
    }
    return spec.post_rate_p_mean * (p.a2_minus * p.tau_minus - p.a2_plus * p.tau_plus) / denom;
}

} // namespace tstdp
