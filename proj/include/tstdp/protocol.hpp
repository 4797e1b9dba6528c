#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "tstdp/spike_train.hpp"

namespace tstdp {

/// Which pre/post spike arrives first, second and third in a three-spike
/// pattern. Kinds with two pre spikes use one post spike and vice versa.
enum class TripletKind { PrePostPre, PostPrePost };

enum class SixTripletKind {
    PrePostPost,
    PostPostPre,
    PostPrePost,
    PrePostPre,
    PrePrePost,
    PostPrePre,
};

std::string to_string(TripletKind kind);
std::string to_string(SixTripletKind kind);
TripletKind triplet_kind_from_string(const std::string& s);
SixTripletKind six_kind_from_string(const std::string& s);

/// 60-pairs style protocol: n_pairs repetitions at rate rho of a pre spike
/// followed (dt > 0) or preceded (dt < 0) by a post spike, dt = t_post - t_pre.
struct PairingProtocol {
    double dt = 0.010; ///< s
    double rho = 1.0;  ///< Hz, repetition rate
    int n_pairs = 60;
};

/// Repeated three-spike pattern. Timing conventions differ per kind:
///   PrePostPre:  dt1 = t_post - t_pre1 (> 0), dt2 = t_post - t_pre2 (< 0,
///                the second pre follows the post), so (5 ms, -5 ms) is the
///                symmetric pattern pre,post,pre at 0, 5, 10 ms.
///   PostPrePost: dt1 = t_pre - t_post1 (> 0), dt2 = t_post2 - t_pre (> 0),
///                so (5 ms, 5 ms) is post,pre,post at 0, 5, 10 ms.
struct TripletProtocol {
    TripletKind kind = TripletKind::PrePostPre;
    double dt1 = 0.005; ///< s
    double dt2 = -0.005; ///< s
    double rho = 1.0;   ///< Hz
    int n = 60;
};

/// Two spike pairs per repetition. For T > 0 a post-pre pair (delay -dt)
/// precedes a pre-post pair (delay +dt); for T < 0 the order is mirrored.
/// T is the separation of the two pair midpoints, so |T| must exceed dt.
struct QuadrupletProtocol {
    double dt = 0.005; ///< s, pair delay magnitude
    double T = 0.020;  ///< s, signed midpoint separation
    double rho = 1.0;  ///< Hz
    int n = 60;
};

/// One of the six orderings of {pre,pre,post} / {post,post,pre}. gap1 and
/// gap2 are the two adjacent inter-spike intervals (both > 0): spikes sit at
/// 0, gap1 and gap1+gap2 within each repetition. A single (gap1, gap2) pair
/// is therefore valid for every ordering, which is what the six-pattern
/// comparison needs.
struct SixTripletProtocol {
    SixTripletKind kind = SixTripletKind::PrePostPost;
    double gap1 = 0.005; ///< s
    double gap2 = 0.005; ///< s
    double rho = 0.2;    ///< Hz
    int n = 60;
};

/// Independent homogeneous Poisson pre and post trains over [0, duration).
/// When post_from_pre is set the post train is drawn at rho_pre, mirroring
/// the rate-coupled variant rho_post = rho_pre (the trains themselves stay
/// independent realizations).
struct PoissonProtocol {
    double rho_pre = 10.0;  ///< Hz
    double rho_post = 10.0; ///< Hz
    double duration = 100.0; ///< s
    std::uint64_t seed = 0;
    bool post_from_pre = false;
};

using Protocol = std::variant<PairingProtocol, TripletProtocol, QuadrupletProtocol,
                              SixTripletProtocol, PoissonProtocol>;

/// All generators place the first spike of the pattern at t = 0 and repeat it
/// at the protocol rate; they throw ProtocolError when the pattern span does
/// not fit the repetition period or the requested ordering is inconsistent.
ProtocolTrains generate_pairing(double dt, double rho, int n_pairs);
ProtocolTrains generate_triplet(TripletKind kind, double dt1, double dt2, double rho, int n);
ProtocolTrains generate_quadruplet(double dt, double T, double rho, int n);
ProtocolTrains generate_six_triplet(SixTripletKind kind, double gap1, double gap2,
                                    double rho, int n);

/// Homogeneous Poisson sample on [0, duration); deterministic for a given
/// seed. rho = 0 yields an empty train. Samples that would land closer than
/// the resolution floor to the previous spike are pushed forward by the floor.
SpikeTrain generate_poisson(double rho, double duration, std::uint64_t seed);

/// Dispatches on the protocol variant.
ProtocolTrains generate(const Protocol& protocol);

} // namespace tstdp
