#include "tstdp/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "tstdp/rng.hpp"
#include "tstdp/rules.hpp"

namespace tstdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nmse_impl(const Dataset& dataset, std::span<const double> model) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        const double r = (dataset.points[i].dw_exp - model[i]) / dataset.points[i].sem;
        acc += r * r;
    }
    return acc / static_cast<double>(dataset.points.size());
}

// --- Nelder-Mead over log-parameters -------------------------------------

struct SimplexResult {
    std::vector<double> x;
    double f = kInf;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::vector<double> x0, double tol_x, double tol_f, int max_iter) {
    const std::size_t n = x0.size();
    const double initial_step = std::log(1.05); // 5% multiplicative perturbation

    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 1; i <= n; ++i) xs[i][i - 1] += initial_step;
    for (std::size_t i = 0; i <= n; ++i) fs[i] = objective(xs[i]);

    SimplexResult result;
    if (!std::isfinite(fs[0])) {
        // Objective unusable at the start: report failure rather than wander.
        result.x = x0;
        return result;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), candidate(n);
    const auto at = [&](std::size_t rank) -> std::vector<double>& { return xs[order[rank]]; };
    const auto fat = [&](std::size_t rank) -> double& { return fs[order[rank]]; };

    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) {
                diameter = std::max(diameter, std::abs(at(i)[d] - at(0)[d]));
            }
        }
        const double spread = fat(n) - fat(0);
        if (diameter <= tol_x && spread <= tol_f) {
            result.converged = true;
            break;
        }

        for (std::size_t d = 0; d < n; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += at(i)[d];
            centroid[d] = sum / static_cast<double>(n);
        }

        const auto blend = [&](double coeff) {
            for (std::size_t d = 0; d < n; ++d) {
                candidate[d] = centroid[d] + coeff * (centroid[d] - at(n)[d]);
            }
            return objective(candidate);
        };

        const double f_reflect = blend(1.0);
        if (f_reflect < fat(0)) {
            std::vector<double> reflected = candidate;
            const double f_expand = blend(2.0);
            if (f_expand < f_reflect) {
                at(n) = candidate;
                fat(n) = f_expand;
            } else {
                at(n) = reflected;
                fat(n) = f_reflect;
            }
        } else if (f_reflect < fat(n - 1)) {
            at(n) = candidate;
            fat(n) = f_reflect;
        } else {
            bool contracted = false;
            if (f_reflect < fat(n)) {
                const double f_outside = blend(0.5);
                if (f_outside <= f_reflect) {
                    at(n) = candidate;
                    fat(n) = f_outside;
                    contracted = true;
                }
            } else {
                const double f_inside = blend(-0.5);
                if (f_inside < fat(n)) {
                    at(n) = candidate;
                    fat(n) = f_inside;
                    contracted = true;
                }
            }
            if (!contracted) {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d) {
                        at(i)[d] = at(0)[d] + 0.5 * (at(i)[d] - at(0)[d]);
                    }
                    fat(i) = objective(at(i));
                }
            }
        }

        result.iterations = iter + 1;
        result.trace.push_back(*std::min_element(fs.begin(), fs.end()));
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    result.x = xs[best];
    result.f = fs[best];
    return result;
}

std::vector<ParamId> free_params(const ParamMask& mask) {
    std::vector<ParamId> ids;
    for (int k = 0; k < kParamCount; ++k) {
        if (mask[k]) ids.push_back(kAllParams[k]);
    }
    return ids;
}

} // namespace

double nmse(const Dataset& dataset, std::span<const double> model) {
    if (model.size() != dataset.points.size()) {
        throw std::invalid_argument("nmse: prediction count does not match the dataset");
    }
    for (const DataPoint& point : dataset.points) {
        if (!(point.sem > 0.0)) throw std::invalid_argument("nmse: sem must be > 0");
    }
    return nmse_impl(dataset, model);
}

std::vector<double> predict(const TripletParams& params, const Dataset& dataset) {
    std::vector<double> out;
    out.reserve(dataset.points.size());
    for (const DataPoint& point : dataset.points) {
        out.push_back(tstdp_total(params, generate(point.protocol)));
    }
    return out;
}

ParamMask full_mask() {
    ParamMask mask;
    mask.fill(true);
    return mask;
}

ParamMask visual_cortex_mask() {
    ParamMask mask = full_mask();
    mask[static_cast<int>(ParamId::A2Plus)] = false;
    mask[static_cast<int>(ParamId::A3Minus)] = false;
    mask[static_cast<int>(ParamId::TauX)] = false;
    return mask;
}

ParamMask hippocampal_mask() {
    ParamMask mask = full_mask();
    mask[static_cast<int>(ParamId::A3Minus)] = false;
    mask[static_cast<int>(ParamId::TauX)] = false;
    return mask;
}

FitResult fit(const Dataset& dataset, const TripletParams& initial, const FitOptions& options) {
    const std::vector<ParamId> ids = free_params(options.free_mask);
    if (ids.empty()) {
        // Everything frozen: the "fit" is the initial point itself.
        FitResult result;
        result.params = initial;
        result.nmse = nmse_impl(dataset, predict(scale_params(initial, options.distortion), dataset));
        result.converged = true;
        return result;
    }

    std::vector<double> x0;
    x0.reserve(ids.size());
    for (ParamId id : ids) {
        const double v = get_param(initial, id);
        if (!(v > 0.0)) {
            throw std::invalid_argument("fit: free parameter " + std::string(param_name(id)) +
                                        " must be positive at the initial point");
        }
        x0.push_back(std::log(v));
    }

    // Protocol trains do not depend on the parameters, so build them once.
    std::vector<ProtocolTrains> trains;
    trains.reserve(dataset.points.size());
    for (const DataPoint& point : dataset.points) trains.push_back(generate(point.protocol));

    std::vector<double> model(dataset.points.size());
    const auto objective = [&](std::span<const double> x) -> double {
        TripletParams p = initial;
        for (std::size_t k = 0; k < ids.size(); ++k) set_param(p, ids[k], std::exp(x[k]));
        p = scale_params(p, options.distortion);
        for (std::size_t i = 0; i < trains.size(); ++i) model[i] = tstdp_total(p, trains[i]);
        const double value = nmse_impl(dataset, model);
        return std::isfinite(value) ? value : kInf;
    };

    const SimplexResult sr =
        nelder_mead(objective, std::move(x0), options.tol_x, options.tol_f, options.max_iter);

    FitResult result;
    result.params = initial;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        set_param(result.params, ids[k], std::exp(sr.x[k]));
    }
    result.nmse = sr.f;
    result.iterations = sr.iterations;
    result.converged = sr.converged;
    result.trace = sr.trace;
    // Best-so-far trace is non-increasing by construction.
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
        result.trace[i] = std::min(result.trace[i], result.trace[i - 1]);
    }
    return result;
}

FitResult multi_start_fit(const Dataset& dataset, int n_starts, std::uint64_t seed,
                          const TripletParams& base, const FitOptions& options) {
    if (n_starts < 1) throw std::invalid_argument("multi_start_fit: n_starts must be >= 1");
    const std::vector<ParamId> ids = free_params(options.free_mask);
    const StartRanges& ranges = options.start_ranges;

    FitResult best;
    best.nmse = kInf;
    bool have_result = false;
    for (int s = 0; s < n_starts; ++s) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        TripletParams start = base;
        for (ParamId id : ids) {
            const double lo = is_amplitude(id) ? ranges.amp_min : ranges.tau_min;
            const double hi = is_amplitude(id) ? ranges.amp_max : ranges.tau_max;
            set_param(start, id, lo * std::exp(rng.uniform() * std::log(hi / lo)));
        }
        FitResult candidate = fit(dataset, start, options);
        if (!have_result || candidate.nmse < best.nmse) {
            best = std::move(candidate);
            have_result = true;
        }
    }
    if (!std::isfinite(best.nmse)) best.converged = false;
    return best;
}

} // namespace tstdp
