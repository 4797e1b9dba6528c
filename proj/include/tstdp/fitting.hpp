#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tstdp/dataset.hpp"
#include "tstdp/params.hpp"

namespace tstdp {

/// Normalized mean square error of model predictions against a dataset:
/// (1/p) * sum_i ((dw_exp_i - dw_model_i) / sem_i)^2. Throws
/// std::invalid_argument on a length mismatch.
double nmse(const Dataset& dataset, std::span<const double> model);

/// Runs every data point's protocol through the triplet rule. Deterministic;
/// the prediction order matches the point order. Propagates ProtocolError if
/// a point's protocol is invalid.
std::vector<double> predict(const TripletParams& params, const Dataset& dataset);

/// true = parameter is optimized; false = held at its initial value.
using ParamMask = std::array<bool, kParamCount>;

ParamMask full_mask();

/// Minimal-rule mask for frequency-dependence style data: a2_plus and
/// a3_minus frozen (at zero in the usual setup); tau_x is inert once
/// a3_minus = 0 and stays frozen as well.
ParamMask visual_cortex_mask();

/// Minimal-rule mask for pairing/triplet/quadruplet style data: a3_minus and
/// the inert tau_x frozen.
ParamMask hippocampal_mask();

/// Log-uniform initialization ranges used by multi_start_fit.
struct StartRanges {
    double amp_min = 1e-4;
    double amp_max = 0.5;
    double tau_min = 0.002; ///< s
    double tau_max = 0.5;   ///< s
};

struct FitOptions {
    ParamMask free_mask = full_mask();
    double tol_x = 1e-6; ///< simplex diameter in log space
    double tol_f = 1e-6; ///< objective spread across the simplex
    int max_iter = 2000;
    /// Fixed multiplicative mismatch applied to candidate parameters before
    /// every evaluation (see scale_params); used by worst-case retuning.
    ParamScale distortion = kUnitScale;
    StartRanges start_ranges;
};

struct FitResult {
    TripletParams params;  ///< best candidate (distortion not folded in)
    double nmse = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace; ///< best NMSE per iteration, non-increasing
};

/// Derivative-free simplex (Nelder-Mead) minimization of the NMSE over the
/// log-transformed free parameters, so positivity holds throughout.
/// Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
/// Free parameters must be positive at the initial point. Non-finite
/// objective values are treated as +inf; if the objective is non-finite at
/// the initial point the result is a failure (converged = false, nmse inf).
FitResult fit(const Dataset& dataset, const TripletParams& initial,
              const FitOptions& options = {});

/// Best of n_starts fits from log-uniform random initializations of the free
/// parameters (frozen ones keep the base values). Deterministic given seed;
/// the per-start seed stream means the best NMSE is non-increasing in
/// n_starts for a fixed seed.
FitResult multi_start_fit(const Dataset& dataset, int n_starts, std::uint64_t seed,
                          const TripletParams& base, const FitOptions& options = {});

} // namespace tstdp
