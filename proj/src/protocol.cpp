#include "tstdp/protocol.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "tstdp/errors.hpp"
#include "tstdp/rng.hpp"

namespace tstdp {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ProtocolError(message);
}

void check_repetition(double rho, int n, double span, const char* what) {
    require(rho > 0.0, std::string(what) + ": repetition rate must be positive");
    require(n >= 1, std::string(what) + ": repetition count must be >= 1");
    require(span + kResolutionFloor <= 1.0 / rho,
            std::string(what) + ": pattern span " + std::to_string(span) +
                " s does not fit the repetition period " + std::to_string(1.0 / rho) + " s");
}

// Unrolls one repetition template (offsets from the repetition base) over n
// repetitions at rate rho. Offsets must be handed over in increasing order.
ProtocolTrains unroll(const std::vector<std::pair<double, bool /*is_post*/>>& pattern,
                      double rho, int n) {
    std::vector<double> pre, post;
    for (int k = 0; k < n; ++k) {
        const double base = static_cast<double>(k) / rho;
        for (const auto& [offset, is_post] : pattern) {
            (is_post ? post : pre).push_back(base + offset);
        }
    }
    return {SpikeTrain(std::move(pre)), SpikeTrain(std::move(post))};
}

} // namespace

std::string to_string(TripletKind kind) {
    return kind == TripletKind::PrePostPre ? "pre-post-pre" : "post-pre-post";
}

TripletKind triplet_kind_from_string(const std::string& s) {
    if (s == "pre-post-pre") return TripletKind::PrePostPre;
    if (s == "post-pre-post") return TripletKind::PostPrePost;
    throw ProtocolError("unknown triplet kind \"" + s + "\"");
}

std::string to_string(SixTripletKind kind) {
    switch (kind) {
        case SixTripletKind::PrePostPost: return "pre-post-post";
        case SixTripletKind::PostPostPre: return "post-post-pre";
        case SixTripletKind::PostPrePost: return "post-pre-post";
        case SixTripletKind::PrePostPre: return "pre-post-pre";
        case SixTripletKind::PrePrePost: return "pre-pre-post";
        case SixTripletKind::PostPrePre: return "post-pre-pre";
    }
    return "?";
}

SixTripletKind six_kind_from_string(const std::string& s) {
    for (SixTripletKind k :
         {SixTripletKind::PrePostPost, SixTripletKind::PostPostPre, SixTripletKind::PostPrePost,
          SixTripletKind::PrePostPre, SixTripletKind::PrePrePost, SixTripletKind::PostPrePre}) {
        if (to_string(k) == s) return k;
    }
    throw ProtocolError("unknown six-triplet kind \"" + s + "\"");
}

ProtocolTrains generate_pairing(double dt, double rho, int n_pairs) {
    require(std::abs(dt) >= kResolutionFloor,
            "pairing: |dt| must be at least the resolution floor (coincident pre/post "
            "spikes are rejected)");
    check_repetition(rho, n_pairs, std::abs(dt), "pairing");
    if (dt > 0.0) {
        return unroll({{0.0, false}, {dt, true}}, rho, n_pairs);
    }
    return unroll({{0.0, true}, {-dt, false}}, rho, n_pairs);
}

ProtocolTrains generate_triplet(TripletKind kind, double dt1, double dt2, double rho, int n) {
    if (kind == TripletKind::PrePostPre) {
        // dt1 = t_post - t_pre1 > 0, dt2 = t_post - t_pre2 < 0.
        require(dt1 >= kResolutionFloor && dt2 <= -kResolutionFloor,
                "pre-post-pre: needs dt1 > 0 and dt2 < 0 (dt2 = t_post - t_pre2 with the "
                "second pre after the post)");
        const double span = dt1 - dt2;
        check_repetition(rho, n, span, "pre-post-pre");
        return unroll({{0.0, false}, {dt1, true}, {span, false}}, rho, n);
    }
    // dt1 = t_pre - t_post1 > 0, dt2 = t_post2 - t_pre > 0.
    require(dt1 >= kResolutionFloor && dt2 >= kResolutionFloor,
            "post-pre-post: needs dt1 > 0 and dt2 > 0");
    check_repetition(rho, n, dt1 + dt2, "post-pre-post");
    return unroll({{0.0, true}, {dt1, false}, {dt1 + dt2, true}}, rho, n);
}

ProtocolTrains generate_quadruplet(double dt, double T, double rho, int n) {
    require(dt >= kResolutionFloor, "quadruplet: dt must be positive");
    require(std::abs(T) >= dt + kResolutionFloor,
            "quadruplet: |T| must exceed dt, otherwise the two pairs interleave");
    const double span = std::abs(T) + dt;
    check_repetition(rho, n, span, "quadruplet");
    if (T > 0.0) {
        // post-pre pair, then pre-post pair; midpoints dt/2 and T + dt/2.
        return unroll({{0.0, true}, {dt, false}, {T, false}, {T + dt, true}}, rho, n);
    }
    return unroll({{0.0, false}, {dt, true}, {-T, true}, {-T + dt, false}}, rho, n);
}

ProtocolTrains generate_six_triplet(SixTripletKind kind, double gap1, double gap2,
                                    double rho, int n) {
    require(gap1 >= kResolutionFloor && gap2 >= kResolutionFloor,
            "six-triplet: both inter-spike gaps must be positive");
    check_repetition(rho, n, gap1 + gap2, "six-triplet");

    // true = post
    std::array<bool, 3> types{};
    switch (kind) {
        case SixTripletKind::PrePostPost: types = {false, true, true}; break;
        case SixTripletKind::PostPostPre: types = {true, true, false}; break;
        case SixTripletKind::PostPrePost: types = {true, false, true}; break;
        case SixTripletKind::PrePostPre: types = {false, true, false}; break;
        case SixTripletKind::PrePrePost: types = {false, false, true}; break;
        case SixTripletKind::PostPrePre: types = {true, false, false}; break;
    }
    return unroll({{0.0, types[0]}, {gap1, types[1]}, {gap1 + gap2, types[2]}}, rho, n);
}

SpikeTrain generate_poisson(double rho, double duration, std::uint64_t seed) {
    require(rho >= 0.0, "poisson: rate must be >= 0");
    require(duration > 0.0, "poisson: duration must be positive");
    std::vector<double> times;
    if (rho > 0.0) {
        Rng rng(seed);
        times.reserve(static_cast<std::size_t>(rho * duration * 1.2) + 8);
        double t = 0.0;
        while (true) {
            double next = t + rng.exponential(rho);
            if (!times.empty() && next - times.back() < kResolutionFloor) {
                next = times.back() + kResolutionFloor;
            }
            if (next >= duration) break;
            times.push_back(next);
            t = next;
        }
    }
    return SpikeTrain(std::move(times));
}

ProtocolTrains generate(const Protocol& protocol) {
    return std::visit(
        [](const auto& p) -> ProtocolTrains {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, PairingProtocol>) {
                return generate_pairing(p.dt, p.rho, p.n_pairs);
            } else if constexpr (std::is_same_v<P, TripletProtocol>) {
                return generate_triplet(p.kind, p.dt1, p.dt2, p.rho, p.n);
            } else if constexpr (std::is_same_v<P, QuadrupletProtocol>) {
                return generate_quadruplet(p.dt, p.T, p.rho, p.n);
            } else if constexpr (std::is_same_v<P, SixTripletProtocol>) {
                return generate_six_triplet(p.kind, p.gap1, p.gap2, p.rho, p.n);
            } else {
                const PoissonProtocol& q = p;
                const double rho_post = q.post_from_pre ? q.rho_pre : q.rho_post;
                return {generate_poisson(q.rho_pre, q.duration, derive_seed(q.seed, 0)),
                        generate_poisson(rho_post, q.duration, derive_seed(q.seed, 1))};
            }
        },
        protocol);
}

} // namespace tstdp
