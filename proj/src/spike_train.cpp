#include "tstdp/spike_train.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace tstdp {

namespace {

// Slack of one part per million on the floor check absorbs the rounding of
// shifted or generator-built times.
constexpr double kFloorSlack = kResolutionFloor * (1.0 - 1e-6);

void validate(const std::vector<double>& times) {
    if (!times.empty() && times.front() < 0.0) {
        throw std::invalid_argument("spike time " + std::to_string(times.front()) +
                                    " is negative");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] - times[i - 1] >= kFloorSlack)) {
            throw std::invalid_argument(
                "spikes at " + std::to_string(times[i - 1]) + " s and " +
                std::to_string(times[i]) + " s are out of order or closer than the " +
                "resolution floor");
        }
    }
}

} // namespace

SpikeTrain::SpikeTrain(std::vector<double> times) : times_(std::move(times)) {
    validate(times_);
}

SpikeTrain SpikeTrain::shifted(double offset) const {
    std::vector<double> out(times_);
    for (double& t : out) t += offset;
    return SpikeTrain(std::move(out));
}

} // namespace tstdp
