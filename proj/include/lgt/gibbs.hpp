#pragma once

#include "lgt/mcmc.hpp"
#include "lgt/model.hpp"
#include "lgt/priors.hpp"
#include "lgt/rng.hpp"
#include "lgt/series.hpp"

#include <vector>

namespace lgt::mcmc {

/// Sampler state for the simplified homoscedastic model: the parameter
/// subset (nu, gamma, rho, lambda, alpha, beta, sigma, b1), the per-
/// observation variance-inflation latents omega^2, and the auxiliary
/// latents of the Cauchy / half-Cauchy scale-mixture priors.
struct GibbsState {
    LgtParams params;               // tau = xi = 0 throughout
    std::vector<double> omega_sq;   // for y_2..y_n
    double v_gamma = 1.0;           // Cauchy mixture latent for gamma
    double v_lambda = 1.0;          // Cauchy mixture latent for lambda
    double a_sigma = 1.0;           // half-Cauchy mixture latent for sigma
};

/// One Gibbs sweep over the simplified model. Steps, in order:
///   1. sigma^2 from its inverse-gamma conditional (half-Cauchy prior via
///      an inverse-gamma mixture of inverse-gammas);
///   2. omega^2 per observation from inverse-gamma conditionals;
///   3. nu over a finite grid;
///   4. gamma and lambda from (truncated) normal conditionals of the
///      gaussianised linear predictor, plus their mixture latents;
///   5. alpha, beta and b1 by componentwise adaptive Metropolis-Hastings
///      with omega integrated out of the likelihood;
///   6. rho over a finite grid, omega integrated out;
/// followed by a refresh of omega^2 so no later conditional sees latents
/// that predate the marginalised updates. Predictions are recomputed
/// after every step that changes the predictor.
class GibbsKernel {
public:
    GibbsKernel(std::vector<double> y, const PriorConfig& priors,
                const SamplerConfig& config);

    /// Swaps in new observations (same length); used by the joint-
    /// distribution sampler checks which redraw data each sweep.
    void set_data(std::vector<double> y);

    /// Draws parameters and latents from the joint prior.
    GibbsState init_from_prior(Rng& rng) const;

    void sweep(GibbsState& state, Rng& rng);

    /// Runs only the sigma^2 conditional (verification surface for the
    /// closed-form reduction oracle).
    void sweep_sigma_only(GibbsState& state, Rng& rng);

    void set_adaptation(bool on) { adapting_ = on; }

    /// Step-5 acceptance rate since adaptation was frozen.
    double frozen_accept_rate() const;

    const std::vector<double>& data() const { return y_; }

private:
    void recompute_paths(const LgtParams& p);
    void recompute_yhat(const LgtParams& p);
    double marginal_loglik(const LgtParams& p) const;

    void step_sigma(GibbsState& s, Rng& rng);
    void step_omega(GibbsState& s, Rng& rng);
    void step_nu(GibbsState& s, Rng& rng);
    void step_coefficients(GibbsState& s, Rng& rng);
    void step_smoothing_mh(GibbsState& s, Rng& rng);
    void step_rho(GibbsState& s, Rng& rng);

    std::vector<double> y_;
    PriorConfig priors_;
    SamplerConfig config_;
    std::vector<double> levels_, trends_, yhat_;
    // Adaptive MH bookkeeping for step 5 (alpha, beta, b1).
    double mh_log_scale_[3] = {0, 0, 0};
    long mh_count_[3] = {0, 0, 0};
    bool adapting_ = true;
    long frozen_props_ = 0, frozen_accepts_ = 0;
};

/// Posterior draws for the simplified homoscedastic model via the
/// bespoke Gibbs sampler; non-seasonal series only. Emitted draws carry
/// tau = xi = 0 so the shared forecast engine treats them as the
/// constant-scale slice. Deterministic given (series, config, seed).
PosteriorDraws fit_gibbs_lgt(const TimeSeries& series, const PriorConfig& priors,
                             const SamplerConfig& config);

}  // namespace lgt::mcmc
