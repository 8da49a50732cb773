#pragma once

#include "lgt/series.hpp"

#include <limits>
#include <string>

namespace lgt {

/// Prior hyperparameters and parameter boxes. Scale-type entries default
/// to NaN, meaning "derive from the series" (see resolved_for): the
/// Cauchy scales for the trend coefficients and the half-Cauchy scale
/// for sigma use the mean absolute first difference, the xi scale uses
/// 1% of the mean level.
struct PriorConfig {
    static constexpr double kAuto = std::numeric_limits<double>::quiet_NaN();
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    // Beta shapes for the smoothing parameters.
    double alpha_a = 1.0, alpha_b = 1.0;
    double beta_a = 1.0, beta_b = 1.0;
    double zeta_a = 1.0, zeta_b = 1.0;

    // Cauchy priors for the trend coefficients.
    double gamma_loc = 0.0, gamma_scale = kAuto;
    double lambda_loc = 0.0, lambda_scale = 1.0;
    double b1_loc = 0.0, b1_scale = kAuto;

    // Half-Cauchy scales. sigma_scale = inf selects an improper flat
    // prior on sigma^2 (used by sampler verification tests only).
    double sigma_scale = kAuto;
    double xi_scale = kAuto;

    // Uniform bounds; these double as the parameter boxes.
    double nu_lo = 2.0, nu_hi = 20.0;
    double rho_lo = -0.5, rho_hi = 1.0;
    double tau_lo = 0.0, tau_hi = 1.0;

    // Local-trend damping box; widen to [-1, 1] via config when needed.
    double lambda_lo = 0.0, lambda_hi = 1.0;

    // Optional truncation of the heavy-tailed priors (finite bounds make
    // all prior moments exist, which joint-distribution sampler tests
    // depend on).
    double gamma_lo = -kInf, gamma_hi = kInf;
    double b1_lo = -kInf, b1_hi = kInf;
    double sigma_upper = kInf;
    double xi_upper = kInf;

    // log-Cauchy scale for the initial seasonal factors.
    double s_log_scale = 0.3;

    /// Fills the NaN scales from the series. Requires positive values.
    PriorConfig resolved_for(const TimeSeries& series) const;

    bool is_resolved() const;

    /// Parses `key = value` assignments (one per line, '#' comments).
    /// Unknown keys throw. Values may be `inf`/`-inf`/`auto`.
    void apply_key(const std::string& key, const std::string& value);
};

}  // namespace lgt
