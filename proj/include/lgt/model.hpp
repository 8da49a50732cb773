#pragma once

#include "lgt/priors.hpp"
#include "lgt/rng.hpp"
#include "lgt/series.hpp"

#include <span>
#include <vector>

namespace lgt {

/// Levels, fitted values and simulated observations are kept above this
/// floor to avoid numerical instabilities in the power-trend terms.
constexpr double kLevelFloor = 0.001;

enum class ModelKind { lgt, sgt };

/// Non-seasonal local/global trend model parameters. The initial level
/// l1 is pinned to the first observation (it is not a fitted quantity);
/// b1 is fitted. In homoscedastic use tau and xi are fixed to zero and
/// sigma is the constant error scale.
struct LgtParams {
    double nu = 6.0;       // t degrees of freedom
    double gamma = 0.0;    // global-trend coefficient
    double rho = 0.5;      // global-trend power
    double lambda = 0.5;   // local-trend damping
    double alpha = 0.5;    // level smoothing
    double beta = 0.5;     // local-trend smoothing
    double sigma = 1.0;    // error-size coefficient
    double tau = 0.5;      // error-size power
    double xi = 0.01;      // minimum error size
    double b1 = 0.0;       // initial local trend
    double l1 = 1.0;       // initial level (pinned to y_1)
};

/// Seasonal global trend model parameters; no local trend, multiplicative
/// seasonality with mean-one initial factors.
struct SgtParams {
    double nu = 6.0;
    double gamma = 0.0;
    double rho = 0.5;
    double alpha = 0.5;
    double zeta = 0.5;   // seasonality smoothing
    double sigma = 1.0;
    double tau = 0.5;
    double xi = 0.01;
    double l1 = 1.0;     // initial level (pinned to y_1 / s_1)
    std::vector<double> s_init;  // m factors, mean exactly 1
};

bool lgt_in_boxes(const LgtParams& p, const PriorConfig& priors);
bool sgt_in_boxes(const SgtParams& p, const PriorConfig& priors);

/// State sequences of one filtering pass.
struct ForwardPass {
    std::vector<double> yhat;       // predicted values for y_2..y_n
    std::vector<double> sigma_hat;  // error scales for y_2..y_n
    std::vector<double> levels;     // l_1..l_n
    std::vector<double> trends;     // b_1..b_n (LGT only)
    std::vector<double> seasonal;   // s_1..s_{n+m} (SGT only)
    double loglik = 0.0;
};

/// One-step prediction l + gamma*l^rho + lambda*b. Throws when the level
/// is below the floor.
double lgt_one_step(double level, double trend, const LgtParams& p);

/// Heteroscedastic error scale sigma*yhat^tau + xi. Requires yhat at or
/// above the level floor.
double lgt_error_scale(double yhat, const LgtParams& p);

/// The rejected generalisation l + b*l^rho, kept as a formula only.
double generalized_trend_one_step(double level, double trend, double rho);

/// Runs the LGT recursions over the series and accumulates the Student-t
/// log likelihood of y_2..y_n. Levels are floored; the error scale is
/// evaluated at the floored prediction. Throws on non-finite
/// intermediates, naming the time index.
ForwardPass lgt_forward(std::span<const double> y, const LgtParams& p);

/// Seasonal counterpart over factors s_1..s_{n+m}; factors are seeded by
/// s_init and evolve with the zeta recursion.
ForwardPass sgt_forward(std::span<const double> y, const SgtParams& p);

/// Sum of log prior densities; -inf outside any parameter box.
double lgt_log_prior(const LgtParams& p, const PriorConfig& priors);
double sgt_log_prior(const SgtParams& p, const PriorConfig& priors);

/// Draws a full parameter vector from the priors (rejection for the
/// truncated heavy-tailed entries). Used for sampler initialisation and
/// the joint-distribution sampler tests.
LgtParams sample_lgt_prior(Rng& rng, const PriorConfig& priors, double l1,
                           bool homoscedastic);
SgtParams sample_sgt_prior(Rng& rng, const PriorConfig& priors, double y1, int m);

/// Generates y_1..y_n from the model given parameters (y_1 = y1 fixed),
/// using exactly the filtering recursions plus t-distributed errors, so
/// simulated data and likelihood agree step for step.
std::vector<double> simulate_lgt_series(const LgtParams& p, double y1, int n,
                                        Rng& rng);

}  // namespace lgt
