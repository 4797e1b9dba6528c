#include "tstdp/interactions.hpp"

namespace tstdp {

std::vector<InteractionEvent> nearest_interactions(const SpikeTrain& pre,
                                                   const SpikeTrain& post) {
    const std::vector<double>& a = pre.times();
    const std::vector<double>& b = post.times();
    std::vector<InteractionEvent> events;
    events.reserve(a.size() + b.size());

    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        // Ties go to the pre spike.
        const bool take_pre = i < a.size() && (j >= b.size() || a[i] <= b[j]);
        InteractionEvent ev;
        if (take_pre) {
            ev.time = a[i];
            ev.kind = SpikeKind::Pre;
            if (j > 0) {
                ev.pair_dt = b[j - 1] - a[i];
                if (j > 1) ev.opposite_gap = b[j - 1] - b[j - 2];
            }
            if (i > 0) ev.same_gap = a[i] - a[i - 1];
            ++i;
        } else {
            ev.time = b[j];
            ev.kind = SpikeKind::Post;
            if (i > 0) {
                ev.pair_dt = b[j] - a[i - 1];
                if (i > 1) ev.opposite_gap = a[i - 1] - a[i - 2];
            }
            if (j > 0) ev.same_gap = b[j] - b[j - 1];
            ++j;
        }
        events.push_back(ev);
    }
    return events;
}

} // namespace tstdp
