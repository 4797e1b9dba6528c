#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "tstdp/fitting.hpp"
#include "tstdp/rules.hpp"

using namespace tstdp;
using namespace tstdp::testing;

TEST_CASE("nmse") {
    Dataset ds;
    ds.name = "toy";
    ds.points.push_back({PairingProtocol{0.010, 1.0, 1}, 1.0, 0.25});

    SUBCASE("hand-evaluated single point") {
        const std::vector<double> model = {0.5};
        CHECK(nmse(ds, model) == doctest::Approx(4.0));
    }

    SUBCASE("exact predictions give zero") {
        const std::vector<double> model = {1.0};
        CHECK(nmse(ds, model) == 0.0);
    }

    SUBCASE("doubling every sem quarters the value") {
        Dataset wide = ds;
        wide.points[0].sem *= 2.0;
        const std::vector<double> model = {0.5};
        CHECK(nmse(wide, model) == doctest::Approx(nmse(ds, model) / 4.0));
    }

    SUBCASE("length mismatch and non-positive sem are errors") {
        const std::vector<double> too_many = {0.5, 0.5};
        CHECK_THROWS_AS(nmse(ds, too_many), std::invalid_argument);
        Dataset bad = ds;
        bad.points[0].sem = 0.0;
        const std::vector<double> model = {0.5};
        CHECK_THROWS_AS(nmse(bad, model), std::invalid_argument);
    }

    SUBCASE("permutation invariance") {
        const TripletParams p = hippocampal_style();
        Dataset set = synthetic_hippocampal(p, 1.0, 3);
        Dataset shuffled = set;
        std::reverse(shuffled.points.begin(), shuffled.points.end());
        std::vector<double> m1(set.points.size()), m2(set.points.size());
        for (std::size_t i = 0; i < set.points.size(); ++i) {
            m1[i] = 0.9 * set.points[i].dw_exp;
            m2[i] = 0.9 * shuffled.points[i].dw_exp;
        }
        CHECK(nmse(set, m1) == doctest::Approx(nmse(shuffled, m2)).epsilon(1e-13));
    }
}

TEST_CASE("predict") {
    const TripletParams p = hippocampal_style();

    SUBCASE("an isolated pair point reproduces the closed form") {
        Dataset ds;
        ds.points.push_back({PairingProtocol{0.010, 1.0, 1}, 0.0, 1.0});
        const auto model = predict(p, ds);
        CHECK(model[0] == doctest::Approx(p.a2_plus * std::exp(-0.010 / p.tau_plus))
                              .epsilon(1e-13));
    }

    SUBCASE("point order does not matter") {
        Dataset ds = synthetic_hippocampal(p);
        Dataset reversed = ds;
        std::reverse(reversed.points.begin(), reversed.points.end());
        const auto a = predict(p, ds);
        const auto b = predict(p, reversed);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[a.size() - 1 - i]);
    }

    SUBCASE("every synthetic point matches the brute-force oracle") {
        const Dataset ds = synthetic_hippocampal(p);
        const auto model = predict(p, ds);
        for (std::size_t i = 0; i < ds.points.size(); ++i) {
            const ProtocolTrains trains = generate(ds.points[i].protocol);
            CHECK(rel_diff(model[i],
                           oracle_triplet_total(p, trains.pre.times(), trains.post.times())) <
                  1e-12);
        }
    }
}

TEST_CASE("fit") {
    const TripletParams truth = hippocampal_style();
    const Dataset ds = synthetic_hippocampal(truth);

    FitOptions options;
    options.free_mask = hippocampal_mask();

    SUBCASE("starting at the generating parameters converges to zero error") {
        const FitResult result = fit(ds, truth, options);
        CHECK(result.converged);
        CHECK(result.nmse < 1e-10);
    }

    SUBCASE("recovery from a perturbed initialization") {
        TripletParams init = truth;
        for (ParamId id : {ParamId::A2Plus, ParamId::A2Minus, ParamId::A3Plus}) {
            set_param(init, id, get_param(truth, id) * 2.0);
        }
        const FitResult result = fit(ds, init, options);
        CHECK(result.nmse < 1e-8);
        for (int k = 0; k < kParamCount; ++k) {
            if (!options.free_mask[k]) continue;
            const double got = get_param(result.params, kAllParams[k]);
            const double want = get_param(truth, kAllParams[k]);
            CHECK(std::abs(got - want) / want < 0.05);
        }
        // the frozen parameters never moved
        CHECK(result.params.a3_minus == truth.a3_minus);
        CHECK(result.params.tau_x == truth.tau_x);
    }

    SUBCASE("trace is monotone non-increasing") {
        TripletParams init = truth;
        init.a2_plus *= 3.0;
        init.tau_y *= 0.5;
        const FitResult result = fit(ds, init, options);
        for (std::size_t i = 1; i < result.trace.size(); ++i) {
            CHECK(result.trace[i] <= result.trace[i - 1]);
        }
    }

    SUBCASE("an all-frozen mask returns the initial point") {
        FitOptions frozen;
        frozen.free_mask.fill(false);
        TripletParams init = truth;
        init.a2_plus *= 1.5;
        const FitResult result = fit(ds, init, frozen);
        CHECK(result.iterations == 0);
        CHECK(result.nmse == doctest::Approx(nmse(ds, predict(init, ds))));
    }

    SUBCASE("free parameters stay positive from any workable start") {
        TripletParams init = truth;
        init.a2_plus = 1e-6;
        init.tau_y = 0.4;
        const FitResult result = fit(ds, init, options);
        for (ParamId id : kAllParams) {
            if (id == ParamId::A3Minus) continue; // frozen at zero
            CHECK(get_param(result.params, id) > 0.0);
        }
    }

    SUBCASE("a zero free parameter at the start is rejected") {
        TripletParams init = truth;
        init.a2_plus = 0.0;
        CHECK_THROWS_AS(fit(ds, init, options), std::invalid_argument);
    }
}

TEST_CASE("multi-start fit") {
    const TripletParams truth = hippocampal_style();
    const Dataset ds = synthetic_hippocampal(truth);
    FitOptions options;
    options.free_mask = hippocampal_mask();

    SUBCASE("deterministic given the seed, and the documented draw scheme") {
        const FitResult a = multi_start_fit(ds, 2, 99, truth, options);
        const FitResult b = multi_start_fit(ds, 2, 99, truth, options);
        CHECK(a.nmse == b.nmse);
        for (ParamId id : kAllParams) {
            CHECK(get_param(a.params, id) == get_param(b.params, id));
        }

        // start k draws log-uniformly from derive_seed(seed, k) in mask order
        Rng rng(derive_seed(99, 0));
        TripletParams expected_start = truth;
        for (int k = 0; k < kParamCount; ++k) {
            if (!options.free_mask[k]) continue;
            const ParamId id = kAllParams[k];
            const double lo = is_amplitude(id) ? options.start_ranges.amp_min
                                               : options.start_ranges.tau_min;
            const double hi = is_amplitude(id) ? options.start_ranges.amp_max
                                               : options.start_ranges.tau_max;
            set_param(expected_start, id, lo * std::exp(rng.uniform() * std::log(hi / lo)));
        }
        const FitResult from_start = fit(ds, expected_start, options);
        const FitResult one = multi_start_fit(ds, 1, 99, truth, options);
        CHECK(one.nmse == from_start.nmse);
    }

    SUBCASE("best NMSE is non-increasing in the number of starts") {
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {1, 2, 4}) {
            const double value = multi_start_fit(ds, n, 123, truth, options).nmse;
            CHECK(value <= prev + 1e-15);
            prev = value;
        }
    }

    SUBCASE("finds the global basin of a two-parameter problem within 20 starts") {
        // free time constants only; amplitudes pinned at the truth
        FitOptions two;
        two.free_mask.fill(false);
        two.free_mask[static_cast<int>(ParamId::TauPlus)] = true;
        two.free_mask[static_cast<int>(ParamId::TauY)] = true;
        TripletParams base = truth;
        base.tau_plus = 0.008;
        base.tau_y = 0.180;
        const Dataset two_ds = synthetic_hippocampal(base);

        // grid-search oracle over the same log box
        double grid_best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 25; ++i) {
            for (int j = 0; j < 25; ++j) {
                TripletParams p = base;
                p.tau_plus = 0.002 * std::pow(0.5 / 0.002, i / 24.0);
                p.tau_y = 0.002 * std::pow(0.5 / 0.002, j / 24.0);
                grid_best = std::min(grid_best, nmse(two_ds, predict(p, two_ds)));
            }
        }
        const FitResult result = multi_start_fit(two_ds, 20, 7, base, two);
        CHECK(result.nmse <= grid_best);
        CHECK(result.nmse < 1e-8);
    }
}
