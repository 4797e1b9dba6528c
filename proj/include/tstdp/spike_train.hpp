#pragma once

#include <cstddef>
#include <vector>

namespace tstdp {

/// Smallest spike separation the library distinguishes, in seconds of
/// biological time. Two spikes of one train closer than this would make the
/// temporal order ambiguous, so train construction rejects them and the
/// Poisson generator jitters colliding samples forward by this amount.
inline constexpr double kResolutionFloor = 1e-6;

/// An immutable, strictly increasing sequence of spike times in seconds.
/// All times are >= 0 and consecutive spikes are at least kResolutionFloor
/// apart. Safe for concurrent reads.
class SpikeTrain {
public:
    SpikeTrain() = default;

    /// Takes ownership of `times`; throws std::invalid_argument if they are
    /// negative, out of order, or closer than the resolution floor.
    explicit SpikeTrain(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    double front() const { return times_.front(); }
    double back() const { return times_.back(); }

    /// Same train displaced by `offset` seconds (result must stay >= 0).
    SpikeTrain shifted(double offset) const;

private:
    std::vector<double> times_;
};

/// The pre/post pair of trains a stimulation protocol produces.
struct ProtocolTrains {
    SpikeTrain pre;
    SpikeTrain post;
};

} // namespace tstdp
