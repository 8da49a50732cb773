#include "lgt/priors.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace lgt {

namespace {

double mean_abs_diff(const std::vector<double>& y) {
    double acc = 0.0;
    for (size_t i = 1; i < y.size(); ++i) acc += std::fabs(y[i] - y[i - 1]);
    return acc / static_cast<double>(y.size() - 1);
}

double mean(const std::vector<double>& y) {
    double acc = 0.0;
    for (double v : y) acc += v;
    return acc / static_cast<double>(y.size());
}

}  // namespace

PriorConfig PriorConfig::resolved_for(const TimeSeries& series) const {
    series.validate();
    series.require_positive();
    PriorConfig out = *this;
    const double level = mean(series.values);
    // Constant series would give a zero scale; keep a small floor tied
    // to the level so the priors stay proper.
    const double diff_scale = std::max(mean_abs_diff(series.values),
                                       std::max(1e-4 * level, 1e-8));
    if (std::isnan(out.gamma_scale)) out.gamma_scale = diff_scale;
    if (std::isnan(out.b1_scale)) out.b1_scale = diff_scale;
    if (std::isnan(out.sigma_scale)) out.sigma_scale = diff_scale;
    if (std::isnan(out.xi_scale)) out.xi_scale = std::max(0.01 * level, 1e-8);
    return out;
}

bool PriorConfig::is_resolved() const {
    return !std::isnan(gamma_scale) && !std::isnan(b1_scale) &&
           !std::isnan(sigma_scale) && !std::isnan(xi_scale);
}

void PriorConfig::apply_key(const std::string& key, const std::string& value) {
    static const std::map<std::string, double PriorConfig::*> keys = {
        {"prior.alpha_a", &PriorConfig::alpha_a},
        {"prior.alpha_b", &PriorConfig::alpha_b},
        {"prior.beta_a", &PriorConfig::beta_a},
        {"prior.beta_b", &PriorConfig::beta_b},
        {"prior.zeta_a", &PriorConfig::zeta_a},
        {"prior.zeta_b", &PriorConfig::zeta_b},
        {"prior.gamma_loc", &PriorConfig::gamma_loc},
        {"prior.gamma_scale", &PriorConfig::gamma_scale},
        {"prior.lambda_loc", &PriorConfig::lambda_loc},
        {"prior.lambda_scale", &PriorConfig::lambda_scale},
        {"prior.b1_loc", &PriorConfig::b1_loc},
        {"prior.b1_scale", &PriorConfig::b1_scale},
        {"prior.sigma_scale", &PriorConfig::sigma_scale},
        {"prior.xi_scale", &PriorConfig::xi_scale},
        {"prior.nu_lo", &PriorConfig::nu_lo},
        {"prior.nu_hi", &PriorConfig::nu_hi},
        {"prior.rho_lo", &PriorConfig::rho_lo},
        {"prior.rho_hi", &PriorConfig::rho_hi},
        {"prior.tau_lo", &PriorConfig::tau_lo},
        {"prior.tau_hi", &PriorConfig::tau_hi},
        {"prior.lambda_lo", &PriorConfig::lambda_lo},
        {"prior.lambda_hi", &PriorConfig::lambda_hi},
        {"prior.gamma_lo", &PriorConfig::gamma_lo},
        {"prior.gamma_hi", &PriorConfig::gamma_hi},
        {"prior.b1_lo", &PriorConfig::b1_lo},
        {"prior.b1_hi", &PriorConfig::b1_hi},
        {"prior.sigma_upper", &PriorConfig::sigma_upper},
        {"prior.xi_upper", &PriorConfig::xi_upper},
        {"prior.s_log_scale", &PriorConfig::s_log_scale},
    };
    const auto it = keys.find(key);
    if (it == keys.end()) throw std::runtime_error("unknown prior key '" + key + "'");

    double v;
    if (value == "auto") {
        v = kAuto;
    } else if (value == "inf") {
        v = kInf;
    } else if (value == "-inf") {
        v = -kInf;
    } else {
        char* end = nullptr;
        v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw std::runtime_error("bad value '" + value + "' for prior key '" + key + "'");
    }
    this->*(it->second) = v;
}

}  // namespace lgt
