#pragma once

#include "tstdp/params.hpp"
#include "tstdp/spike_train.hpp"

namespace tstdp {

/// Total weight change of the pair rule over the given trains, accumulated
/// additively under nearest-spike semantics. Events without an opposite-kind
/// predecessor contribute nothing; a coincident pre/post pair falls on the
/// depression branch (dt <= 0).
double pstdp_total(const PairParams& params, const ProtocolTrains& trains);

/// Total weight change of the triplet rule. At each post spike
///   dw+ = exp(-dt1/tau_plus) * (a2_plus + a3_plus * exp(-dt2/tau_y))
/// and at each pre spike
///   dw- = -exp(dt1/tau_minus) * (a2_minus + a3_minus * exp(-dt3/tau_x)),
/// where dt1 pairs with the most recent opposite spike and dt2/dt3 are the
/// gaps to the previous same-kind spike ("just before" the current one, so a
/// spike never pairs with itself). A missing same-kind predecessor drops the
/// triplet term; a missing opposite predecessor skips the event.
/// With a3_plus = a3_minus = 0 this reduces exactly to pstdp_total.
double tstdp_total(const TripletParams& params, const ProtocolTrains& trains);

/// Total weight change of the suppressive model: each nearest-neighbour pair
/// contribution F(dt) is weighted by the efficacies of both spikes involved,
/// eps = 1 - exp(-own_isi/tau_s), efficacy 1 for first spikes.
double suppressive_total(const SuppressionParams& params, const ProtocolTrains& trains);

/// Expected weight drift (weight per second) of the triplet rule under
/// independent Poisson pre/post trains with all-to-all interactions:
///   -a2_minus tau_minus rho_pre rho_post + a2_plus tau_plus rho_pre rho_post
///   -a3_minus tau_minus tau_x rho_pre^2 rho_post
///   +a3_plus tau_plus tau_y rho_post^2 rho_pre
double averaged_drift(const TripletParams& params, double rho_pre, double rho_post);

/// Inputs of the closed-form modification threshold: the expectation of the
/// p-th power of the post-synaptic rate and its reference value rho_0^p.
struct ThresholdSpec {
    double p_exponent = 2.0;
    double rho0_p = 1.0;         ///< Hz^p, must be > 0
    double post_rate_p_mean = 1.0; ///< <rho_post^p>
};

/// Closed-form modification threshold of the all-to-all rule,
///   theta = <rho_post^p> (a2_minus tau_minus - a2_plus tau_plus)
///           / (rho0^p a3_plus tau_plus tau_y).
/// The simulator works with nearest-spike interactions, for which no closed
/// form exists; this value serves as a reference marker only. Throws
/// std::domain_error when the denominator vanishes.
double bcm_threshold(const TripletParams& params, const ThresholdSpec& spec);

} // namespace tstdp
