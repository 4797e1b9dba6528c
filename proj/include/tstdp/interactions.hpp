#pragma once

#include <optional>
#include <vector>

#include "tstdp/spike_train.hpp"

namespace tstdp {

enum class SpikeKind { Pre, Post };

/// One spike of the merged pre/post stream together with the nearest-spike
/// timing context every plasticity rule in this library consumes:
///   pair_dt  -- t_post - t_pre against the most recent opposite-kind spike
///               (>= 0 at post events, <= 0 at pre events); absent when no
///               opposite spike has occurred yet, in which case the event
///               contributes nothing downstream.
///   same_gap -- time since the previous spike of the same kind (the triplet
///               rule's post-post / pre-pre interval); absent for the first
///               spike of a train.
///   opposite_gap -- the paired opposite spike's own predecessor gap, needed
///               by the suppressive model's efficacy of that spike.
struct InteractionEvent {
    double time = 0.0;
    SpikeKind kind = SpikeKind::Pre;
    std::optional<double> pair_dt;
    std::optional<double> same_gap;
    std::optional<double> opposite_gap;
};

/// Merges the two trains into a time-ordered event stream under nearest-spike
/// semantics: each spike replaces its predecessor as the interaction partner.
/// Coincident pre/post spikes are ordered pre before post, so the post event
/// sees pair_dt == 0 (the depression boundary of the pair rule) while the pre
/// event pairs with an earlier post only. Pure function of its inputs.
std::vector<InteractionEvent> nearest_interactions(const SpikeTrain& pre,
                                                   const SpikeTrain& post);

} // namespace tstdp
