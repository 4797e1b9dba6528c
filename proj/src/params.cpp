#include "tstdp/params.hpp"

#include <stdexcept>
#include <string>

#include "tstdp/spike_train.hpp"

namespace tstdp {

void TripletParams::validate() const {
    for (ParamId id : kAllParams) {
        const double v = get_param(*this, id);
        if (is_amplitude(id)) {
            if (v < 0.0)
                throw std::invalid_argument(std::string(param_name(id)) + " must be >= 0");
        } else if (!(v > 0.0)) {
            throw std::invalid_argument(std::string(param_name(id)) + " must be > 0");
        }
    }
    if (!(epsilon > 0.0) || epsilon >= kResolutionFloor) {
        throw std::invalid_argument("epsilon must lie in (0, resolution floor)");
    }
}

double get_param(const TripletParams& p, ParamId id) {
    switch (id) {
        case ParamId::A2Plus: return p.a2_plus;
        case ParamId::A2Minus: return p.a2_minus;
        case ParamId::A3Plus: return p.a3_plus;
        case ParamId::A3Minus: return p.a3_minus;
        case ParamId::TauPlus: return p.tau_plus;
        case ParamId::TauMinus: return p.tau_minus;
        case ParamId::TauX: return p.tau_x;
        case ParamId::TauY: return p.tau_y;
    }
    return 0.0;
}

void set_param(TripletParams& p, ParamId id, double value) {
    switch (id) {
        case ParamId::A2Plus: p.a2_plus = value; break;
        case ParamId::A2Minus: p.a2_minus = value; break;
        case ParamId::A3Plus: p.a3_plus = value; break;
        case ParamId::A3Minus: p.a3_minus = value; break;
        case ParamId::TauPlus: p.tau_plus = value; break;
        case ParamId::TauMinus: p.tau_minus = value; break;
        case ParamId::TauX: p.tau_x = value; break;
        case ParamId::TauY: p.tau_y = value; break;
    }
}

bool is_amplitude(ParamId id) {
    switch (id) {
        case ParamId::A2Plus:
        case ParamId::A2Minus:
        case ParamId::A3Plus:
        case ParamId::A3Minus: return true;
        default: return false;
    }
}

std::string_view param_name(ParamId id) {
    switch (id) {
        case ParamId::A2Plus: return "a2_plus";
        case ParamId::A2Minus: return "a2_minus";
        case ParamId::A3Plus: return "a3_plus";
        case ParamId::A3Minus: return "a3_minus";
        case ParamId::TauPlus: return "tau_plus";
        case ParamId::TauMinus: return "tau_minus";
        case ParamId::TauX: return "tau_x";
        case ParamId::TauY: return "tau_y";
    }
    return "?";
}

std::string_view bias_alias(ParamId id) {
    switch (id) {
        case ParamId::A2Plus: return "I_pot1";
        case ParamId::A2Minus: return "I_dep1";
        case ParamId::A3Plus: return "I_pot2";
        case ParamId::A3Minus: return "I_dep2";
        case ParamId::TauPlus: return "I_tp1";
        case ParamId::TauMinus: return "I_td1";
        case ParamId::TauX: return "I_td2";
        case ParamId::TauY: return "I_tp2";
    }
    return "?";
}

TripletParams scale_params(const TripletParams& p, const ParamScale& factors) {
    TripletParams out = p;
    for (int k = 0; k < kParamCount; ++k) {
        const ParamId id = kAllParams[k];
        const double v = get_param(p, id);
        set_param(out, id, is_amplitude(id) ? v * factors[k] : v / factors[k]);
    }
    return out;
}

} // namespace tstdp
