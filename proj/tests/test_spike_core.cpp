#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tstdp/errors.hpp"
#include "tstdp/interactions.hpp"
#include "tstdp/protocol.hpp"
#include "tstdp/rng.hpp"

using namespace tstdp;
using namespace tstdp::testing;

namespace {
constexpr double kTimeTol = 1e-12; // generator times are exact up to rounding
}

TEST_CASE("spike train invariants") {
    CHECK_NOTHROW(SpikeTrain({0.0, 0.001, 0.5}));
    CHECK_NOTHROW(SpikeTrain({}));
    CHECK_THROWS_AS(SpikeTrain({-0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(SpikeTrain({0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(SpikeTrain({0.1, 0.1 + 1e-8}), std::invalid_argument);

    const SpikeTrain t({0.0, 0.5});
    const SpikeTrain s = t.shifted(1.0);
    CHECK(s.times()[0] == doctest::Approx(1.0));
    CHECK(s.times()[1] == doctest::Approx(1.5));
    CHECK_THROWS_AS(t.shifted(-1.0), std::invalid_argument);
}

TEST_CASE("pairing generator") {
    const ProtocolTrains trains = generate_pairing(0.010, 1.0, 60);
    REQUIRE(trains.pre.size() == 60);
    REQUIRE(trains.post.size() == 60);
    CHECK(trains.pre.front() == 0.0);
    for (int k = 0; k < 60; ++k) {
        CHECK(trains.pre.times()[k] == doctest::Approx(k).epsilon(1e-15));
        // requested delay is recovered from the emitted trains
        CHECK(std::abs((trains.post.times()[k] - trains.pre.times()[k]) - 0.010) < kTimeTol);
    }

    const ProtocolTrains neg = generate_pairing(-0.010, 1.0, 3);
    CHECK(neg.post.front() == 0.0);
    CHECK(std::abs((neg.post.times()[1] - neg.pre.times()[1]) + 0.010) < kTimeTol);

    // coincident pre/post spikes are rejected
    CHECK_THROWS_AS(generate_pairing(0.0, 1.0, 60), ProtocolError);
    // span rule: 10 ms fits a 25 ms period but not a 10 ms one
    CHECK_NOTHROW(generate_pairing(0.010, 40.0, 60));
    CHECK_THROWS_AS(generate_pairing(0.010, 100.0, 60), ProtocolError);
    CHECK_THROWS_AS(generate_pairing(0.010, -1.0, 60), ProtocolError);
    CHECK_THROWS_AS(generate_pairing(0.010, 1.0, 0), ProtocolError);
}

TEST_CASE("triplet generator timing conventions") {
    // pre-post-pre (5, -5) ms: pre at 0, post at 5 ms, pre at 10 ms
    const ProtocolTrains ppp = generate_triplet(TripletKind::PrePostPre, 0.005, -0.005, 1.0, 60);
    REQUIRE(ppp.pre.size() == 120);
    REQUIRE(ppp.post.size() == 60);
    CHECK(ppp.pre.times()[0] == 0.0);
    CHECK(std::abs(ppp.post.times()[0] - 0.005) < kTimeTol);
    CHECK(std::abs(ppp.pre.times()[1] - 0.010) < kTimeTol);
    // dt1 = t_post - t_pre1, dt2 = t_post - t_pre2 recovered per repetition
    for (int k = 0; k < 60; ++k) {
        const double pre1 = ppp.pre.times()[2 * k];
        const double pre2 = ppp.pre.times()[2 * k + 1];
        const double post = ppp.post.times()[k];
        CHECK(std::abs((post - pre1) - 0.005) < kTimeTol);
        CHECK(std::abs((post - pre2) + 0.005) < kTimeTol);
    }

    // post-pre-post (5, 5) ms: post at 0, pre at 5 ms, post at 10 ms
    const ProtocolTrains pp = generate_triplet(TripletKind::PostPrePost, 0.005, 0.005, 1.0, 1);
    REQUIRE(pp.pre.size() == 1);
    REQUIRE(pp.post.size() == 2);
    CHECK(pp.post.times()[0] == 0.0);
    CHECK(std::abs(pp.pre.times()[0] - 0.005) < kTimeTol);
    CHECK(std::abs(pp.post.times()[1] - 0.010) < kTimeTol);

    // inconsistent signs for the stated ordering
    CHECK_THROWS_AS(generate_triplet(TripletKind::PrePostPre, 0.005, 0.005, 1.0, 60),
                    ProtocolError);
    CHECK_THROWS_AS(generate_triplet(TripletKind::PostPrePost, -0.005, 0.005, 1.0, 60),
                    ProtocolError);
    // span rule at high rate
    CHECK_THROWS_AS(generate_triplet(TripletKind::PostPrePost, 0.3, 0.3, 2.0, 10), ProtocolError);
}

TEST_CASE("quadruplet generator") {
    // dt = 5 ms, T = +20 ms: post 0, pre 5, pre 20, post 25 ms
    const ProtocolTrains q = generate_quadruplet(0.005, 0.020, 1.0, 1);
    REQUIRE(q.pre.size() == 2);
    REQUIRE(q.post.size() == 2);
    CHECK(q.post.times()[0] == 0.0);
    CHECK(std::abs(q.pre.times()[0] - 0.005) < kTimeTol);
    CHECK(std::abs(q.pre.times()[1] - 0.020) < kTimeTol);
    CHECK(std::abs(q.post.times()[1] - 0.025) < kTimeTol);
    // T = (t_pre2 + t_post2)/2 - (t_pre1 + t_post1)/2 recovered exactly
    const double t_recovered = 0.5 * ((q.pre.times()[1] + q.post.times()[1]) -
                                      (q.pre.times()[0] + q.post.times()[0]));
    CHECK(std::abs(t_recovered - 0.020) < kTimeTol);

    // T < 0 mirrors the pair order: pre 0, post 5, post 20, pre 25 ms
    const ProtocolTrains m = generate_quadruplet(0.005, -0.020, 1.0, 1);
    CHECK(m.pre.times()[0] == 0.0);
    CHECK(std::abs(m.post.times()[0] - 0.005) < kTimeTol);
    CHECK(std::abs(m.post.times()[1] - 0.020) < kTimeTol);
    CHECK(std::abs(m.pre.times()[1] - 0.025) < kTimeTol);
    const double t_mirror = 0.5 * ((m.pre.times()[0] + m.post.times()[0]) -
                                   (m.pre.times()[1] + m.post.times()[1]));
    CHECK(std::abs(t_mirror + 0.020) < kTimeTol);

    // |T| <= dt interleaves the pairs
    CHECK_THROWS_AS(generate_quadruplet(0.005, 0.005, 1.0, 60), ProtocolError);
    CHECK_THROWS_AS(generate_quadruplet(0.005, -0.003, 1.0, 60), ProtocolError);
}

TEST_CASE("six-triplet generator covers all orderings") {
    const double g1 = 0.005, g2 = 0.007;
    for (SixTripletKind kind :
         {SixTripletKind::PrePostPost, SixTripletKind::PostPostPre, SixTripletKind::PostPrePost,
          SixTripletKind::PrePostPre, SixTripletKind::PrePrePost, SixTripletKind::PostPrePre}) {
        const ProtocolTrains trains = generate_six_triplet(kind, g1, g2, 0.2, 2);
        CHECK(trains.pre.size() + trains.post.size() == 6);
        // adjacent gaps are recovered from the merged repetition
        std::vector<double> merged;
        for (double t : trains.pre.times()) merged.push_back(t);
        for (double t : trains.post.times()) merged.push_back(t);
        std::sort(merged.begin(), merged.end());
        CHECK(std::abs((merged[1] - merged[0]) - g1) < kTimeTol);
        CHECK(std::abs((merged[2] - merged[1]) - g2) < kTimeTol);
        CHECK(merged[0] == 0.0);
        CHECK(to_string(kind) == to_string(six_kind_from_string(to_string(kind))));
    }
    CHECK_THROWS_AS(generate_six_triplet(SixTripletKind::PrePostPost, 0.0, 0.005, 0.2, 60),
                    ProtocolError);
}

TEST_CASE("poisson generator") {
    CHECK(generate_poisson(0.0, 10.0, 1).empty());
    CHECK_THROWS_AS(generate_poisson(-1.0, 10.0, 1), ProtocolError);
    CHECK_THROWS_AS(generate_poisson(1.0, 0.0, 1), ProtocolError);

    // fixed seed twice: identical trains
    const SpikeTrain a = generate_poisson(10.0, 100.0, 42);
    const SpikeTrain b = generate_poisson(10.0, 100.0, 42);
    CHECK(a.times() == b.times());
    CHECK(generate_poisson(10.0, 100.0, 43).times() != a.times());

    SUBCASE("mean count matches the Poisson expectation") {
        // 1000 seeds at rho = 10 Hz, 100 s: per-train sd is sqrt(1000), so the
        // mean over seeds sits within 3 * sqrt(1000)/sqrt(1000) = 3 of 1000.
        double total = 0.0;
        for (int seed = 0; seed < 1000; ++seed) {
            total += static_cast<double>(generate_poisson(10.0, 100.0, seed).size());
        }
        const double mean = total / 1000.0;
        CHECK(std::abs(mean - 1000.0) < 3.0);
    }

    SUBCASE("inter-spike intervals pass a KS test against the exponential") {
        const double rho = 50.0;
        const SpikeTrain train = generate_poisson(rho, 300.0, 2024);
        std::vector<double> isis;
        for (std::size_t i = 1; i < train.size(); ++i) {
            isis.push_back(train.times()[i] - train.times()[i - 1]);
        }
        REQUIRE(isis.size() >= 10000);
        const double d =
            ks_statistic(isis, [&](double x) { return 1.0 - std::exp(-rho * x); });
        // critical value at significance 0.01
        CHECK(d < 1.628 / std::sqrt(static_cast<double>(isis.size())));
    }

    SUBCASE("collisions are jittered onto the resolution floor") {
        // at 200 kHz the raw exponential gaps often fall below 1 us; train
        // construction would reject any that were not pushed forward
        const SpikeTrain dense = generate_poisson(2e5, 0.05, 7);
        REQUIRE(dense.size() > 1000);
        double min_gap = 1.0;
        for (std::size_t i = 1; i < dense.size(); ++i) {
            min_gap = std::min(min_gap, dense.times()[i] - dense.times()[i - 1]);
        }
        CHECK(min_gap >= kResolutionFloor * (1 - 1e-6));
        CHECK(min_gap < 2 * kResolutionFloor); // the floor actually engaged
    }
}

TEST_CASE("nearest interactions") {
    SUBCASE("single pair") {
        const auto events = nearest_interactions(SpikeTrain({0.010}), SpikeTrain({0.020}));
        REQUIRE(events.size() == 2);
        CHECK(events[0].kind == SpikeKind::Pre);
        CHECK(!events[0].pair_dt);
        CHECK(events[1].kind == SpikeKind::Post);
        REQUIRE(events[1].pair_dt);
        CHECK(*events[1].pair_dt == doctest::Approx(0.010));
        CHECK(!events[1].same_gap);
    }

    SUBCASE("post without any pre contributes nothing downstream") {
        const auto events = nearest_interactions(SpikeTrain({}), SpikeTrain({0.005}));
        REQUIRE(events.size() == 1);
        CHECK(!events[0].pair_dt);
    }

    SUBCASE("merge carries signed pair offsets and same-kind gaps") {
        const auto events =
            nearest_interactions(SpikeTrain({0.0, 0.030}), SpikeTrain({0.010}));
        REQUIRE(events.size() == 3);
        CHECK(events[1].kind == SpikeKind::Post);
        CHECK(*events[1].pair_dt == doctest::Approx(0.010));
        CHECK(events[2].kind == SpikeKind::Pre);
        CHECK(*events[2].pair_dt == doctest::Approx(-0.020)); // t_post - t_pre
        CHECK(*events[2].same_gap == doctest::Approx(0.030)); // pre-pre interval
    }

    SUBCASE("coincident spikes order pre before post") {
        const auto events = nearest_interactions(SpikeTrain({0.010}), SpikeTrain({0.010}));
        REQUIRE(events.size() == 2);
        CHECK(events[0].kind == SpikeKind::Pre);
        CHECK(!events[0].pair_dt); // the tied post is not visible to the pre
        CHECK(events[1].kind == SpikeKind::Post);
        CHECK(*events[1].pair_dt == 0.0);
    }

    SUBCASE("pure function of its inputs") {
        Rng rng(5);
        const SpikeTrain pre(random_times(rng, 40, 2.0, 0.001));
        const SpikeTrain post(random_times(rng, 40, 2.0, 0.001));
        const auto once = nearest_interactions(pre, post);
        const auto twice = nearest_interactions(pre, post);
        REQUIRE(once.size() == twice.size());
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK(once[i].time == twice[i].time);
            CHECK(once[i].pair_dt == twice[i].pair_dt);
            CHECK(once[i].same_gap == twice[i].same_gap);
            CHECK(once[i].opposite_gap == twice[i].opposite_gap);
        }
    }
}

TEST_CASE("generated trains satisfy the round-trip property on random protocols") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const double rho = 0.2 + rng.uniform() * 5.0;
        const int n = 1 + static_cast<int>(rng.uniform() * 10);

        const double dt = (rng.uniform() < 0.5 ? -1 : 1) * (0.001 + rng.uniform() * 0.05);
        const ProtocolTrains pairing = generate_pairing(dt, rho, n);
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs((pairing.post.times()[k] - pairing.pre.times()[k]) - dt) < 1e-9);
        }

        const double dt1 = 0.001 + rng.uniform() * 0.03;
        const double dt2 = 0.001 + rng.uniform() * 0.03;
        const ProtocolTrains trip = generate_triplet(TripletKind::PostPrePost, dt1, dt2, rho, n);
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs((trip.pre.times()[k] - trip.post.times()[2 * k]) - dt1) < 1e-9);
            CHECK(std::abs((trip.post.times()[2 * k + 1] - trip.pre.times()[k]) - dt2) < 1e-9);
        }

        const double qdt = 0.001 + rng.uniform() * 0.01;
        const double T = (rng.uniform() < 0.5 ? -1 : 1) * (qdt + 0.002 + rng.uniform() * 0.08);
        const ProtocolTrains quad = generate_quadruplet(qdt, T, rho, n);
        for (int k = 0; k < n; ++k) {
            const double pre1 = quad.pre.times()[2 * k], pre2 = quad.pre.times()[2 * k + 1];
            const double post1 = quad.post.times()[2 * k], post2 = quad.post.times()[2 * k + 1];
            const double mid_diff = 0.5 * ((pre2 + post2) - (pre1 + post1));
            // pair labels swap with the sign of T
            CHECK(std::abs(std::abs(mid_diff) - std::abs(T)) < 1e-9);
        }
    }
}
