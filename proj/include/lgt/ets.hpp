#pragma once

#include "lgt/forecast.hpp"
#include "lgt/series.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace lgt::ets {

/// Classical additive-error exponential smoothing parameters: the
/// damped linear trend model, and its Holt-Winters multiplicative
/// seasonal counterpart.
struct EtsParams {
    double alpha = 0.5;  // level smoothing, (0,1)
    double beta = 0.1;   // trend smoothing, (0,1)
    double phi = 0.98;   // damping, box defaults to [0.8, 0.98]
    double zeta = 0.1;   // seasonal smoothing, (0,1); seasonal only
    double l1 = 0.0;
    double b1 = 0.0;
    std::vector<double> s_init;  // m positive factors, mean 1; seasonal only
    double sigma = 1.0;          // gaussian error sd
};

struct EtsState {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonal;  // last m factors; entry j applies at step j+1
};

struct EtsFilterResult {
    std::vector<double> predictions;  // one-step predictions for y_2..y_n
    EtsState state;
    double loglik = 0.0;
};

/// Damped linear trend recursions with gaussian one-step likelihood.
EtsFilterResult aadn_filter(std::span<const double> y, const EtsParams& p);

/// Forecast at step k: l + (phi + ... + phi^k) * b.
std::vector<double> aadn_forecast(const EtsState& state, const EtsParams& p, int h);

/// Holt-Winters multiplicative seasonal filter; s_init covers the cycle
/// ending at the first observation.
EtsFilterResult hw_mult_filter(std::span<const double> y, const EtsParams& p);

/// Reuses the last m seasonal factors cyclically.
std::vector<double> hw_mult_forecast(const EtsState& state, const EtsParams& p, int h);

struct EtsFitOptions {
    double phi_lo = 0.80;
    double phi_hi = 0.98;
    /// Traditional beta < alpha restriction, off by default.
    bool enforce_beta_lt_alpha = false;
};

/// Thrown when no optimiser restart converges; carries the best point
/// found so far.
class EtsFitError : public std::runtime_error {
public:
    EtsFitError(std::string msg, EtsParams best)
        : std::runtime_error(std::move(msg)), best_params(std::move(best)) {}
    EtsParams best_params;
};

/// Maximum-likelihood fit via multi-start Nelder-Mead on transformed
/// parameters; initial states are estimated jointly with the smoothing
/// parameters. Deterministic for fixed inputs.
EtsParams mle_fit_ets(const TimeSeries& series, bool seasonal,
                      const EtsFitOptions& opts = {});

/// Simulates gaussian-error paths through the recursions (seasonal
/// factors frozen) and aggregates quantiles. Values are floored at the
/// forecast floor of 0.001.
ForecastDistribution ets_simulate_intervals(const EtsState& state, const EtsParams& p,
                                            bool seasonal, int h, int n_paths,
                                            std::uint64_t seed,
                                            const std::vector<double>& levels = kDefaultLevels);

}  // namespace lgt::ets
