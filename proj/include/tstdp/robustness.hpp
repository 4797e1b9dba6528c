#pragma once

#include <cstdint>
#include <vector>

#include "tstdp/dataset.hpp"
#include "tstdp/fitting.hpp"
#include "tstdp/params.hpp"

namespace tstdp {

/// Monte Carlo mismatch campaign settings. Each run draws one Gaussian
/// threshold-voltage deviation per parameter and maps it onto the parameter
/// multiplicatively (see mismatch_factor); time constants are perturbed
/// through their inverse values, which the same bias currents set.
struct PerturbationSpec {
    double sigma_v = 0.030; ///< V, one-sigma threshold-voltage deviation
    double v_scale = 0.032; ///< V, subthreshold exponential scale (~ n*U_T)
    int n_runs = 1000;
    std::uint64_t seed = 0;
};

/// exp(delta_v / v_scale): the subthreshold current ratio a threshold shift
/// of delta_v produces.
double mismatch_factor(double delta_v, double v_scale);

/// The per-parameter factors of one run; deterministic in (spec.seed, run).
ParamScale perturbation_factors(const PerturbationSpec& spec, int run_index);

/// scale_params(params, perturbation_factors(spec, run_index)).
TripletParams perturb(const TripletParams& params, const PerturbationSpec& spec, int run_index);

struct McRun {
    int index = 0;
    double nmse = 0.0;
    bool ok = true; ///< false when prediction failed; nmse is then meaningless
};

struct McReport {
    double baseline_nmse = 0.0; ///< unperturbed parameters
    std::vector<McRun> runs;
    int failed_runs = 0;
    int worst_index = -1;       ///< max NMSE, ties to the lowest run index
    ParamScale worst_factors = kUnitScale;
    double min = 0.0, max = 0.0, mean = 0.0;
    double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
};

/// NMSE of the perturbed parameters against the dataset for every run, plus
/// summary statistics over the successful runs. Reproducible bit for bit
/// given (spec, dataset, params).
McReport monte_carlo(const Dataset& dataset, const TripletParams& params,
                     const PerturbationSpec& spec);

/// Re-optimizes the free parameters with the worst-case mismatch held fixed
/// as a multiplicative distortion, modeling bias-current recalibration of a
/// fabricated part. Starting from `initial` the result never exceeds the
/// perturbed un-retuned NMSE.
FitResult retune(const Dataset& dataset, const ParamScale& worst_factors,
                 const TripletParams& initial, FitOptions options = {});

} // namespace tstdp
