#include "tstdp/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tstdp/rng.hpp"

namespace tstdp {

double mismatch_factor(double delta_v, double v_scale) {
    return std::exp(delta_v / v_scale);
}

ParamScale perturbation_factors(const PerturbationSpec& spec, int run_index) {
    if (spec.sigma_v < 0.0 || !(spec.v_scale > 0.0)) {
        throw std::invalid_argument("perturbation: sigma_v must be >= 0 and v_scale > 0");
    }
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(run_index)));
    ParamScale factors;
    for (int k = 0; k < kParamCount; ++k) {
        factors[k] = mismatch_factor(rng.normal(0.0, spec.sigma_v), spec.v_scale);
    }
    return factors;
}

TripletParams perturb(const TripletParams& params, const PerturbationSpec& spec, int run_index) {
    return scale_params(params, perturbation_factors(spec, run_index));
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
    // Nearest-rank on the sorted per-run list.
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

} // namespace

McReport monte_carlo(const Dataset& dataset, const TripletParams& params,
                     const PerturbationSpec& spec) {
    if (spec.n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be >= 1");

    McReport report;
    report.baseline_nmse = nmse(dataset, predict(params, dataset));
    report.runs.reserve(spec.n_runs);

    std::vector<double> ok_values;
    ok_values.reserve(spec.n_runs);
    for (int run = 0; run < spec.n_runs; ++run) {
        McRun entry;
        entry.index = run;
        try {
            const TripletParams perturbed = perturb(params, spec, run);
            entry.nmse = nmse(dataset, predict(perturbed, dataset));
            entry.ok = std::isfinite(entry.nmse);
        } catch (const std::exception&) {
            entry.ok = false;
        }
        if (entry.ok) {
            ok_values.push_back(entry.nmse);
            if (report.worst_index < 0 || entry.nmse > report.max) {
                report.worst_index = run;
                report.max = entry.nmse;
            }
        } else {
            ++report.failed_runs;
        }
        report.runs.push_back(entry);
    }

    if (!ok_values.empty()) {
        std::vector<double> sorted = ok_values;
        std::sort(sorted.begin(), sorted.end());
        report.min = sorted.front();
        report.max = sorted.back();
        double sum = 0.0;
        for (double v : sorted) sum += v;
        report.mean = sum / static_cast<double>(sorted.size());
        report.q05 = quantile(sorted, 0.05);
        report.q25 = quantile(sorted, 0.25);
        report.median = quantile(sorted, 0.50);
        report.q75 = quantile(sorted, 0.75);
        report.q95 = quantile(sorted, 0.95);
        report.worst_factors = perturbation_factors(spec, report.worst_index);
    }
    return report;
}

FitResult retune(const Dataset& dataset, const ParamScale& worst_factors,
                 const TripletParams& initial, FitOptions options) {
    options.distortion = worst_factors;
    return fit(dataset, initial, options);
}

} // namespace tstdp
