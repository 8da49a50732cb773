#pragma once

#include "lgt/model.hpp"
#include "lgt/priors.hpp"
#include "lgt/rng.hpp"
#include "lgt/series.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lgt::mcmc {

struct SamplerConfig {
    int n_chains = 4;
    int n_iter = 5000;
    int n_burn = 2500;
    int thin = 5;
    double target_accept = 0.44;  // componentwise
    std::vector<double> nu_grid = {2, 3, 4, 5, 6, 8, 10, 14, 20};
    std::vector<double> rho_grid;  // default: 31 equal steps over [-0.5, 1]
    std::uint64_t seed = 1;

    SamplerConfig();
    void validate() const;  // throws on bad iteration/grid settings

    /// Draws kept per chain: floor((n_iter - n_burn) / thin).
    int kept_per_chain() const { return (n_iter - n_burn) / thin; }
};

struct PosteriorDraws {
    ModelKind kind = ModelKind::lgt;
    std::vector<LgtParams> lgt;
    std::vector<SgtParams> sgt;
    std::vector<int> chain;      // provenance, parallel to the draws
    std::vector<int> iteration;  // 1-based iteration within the chain

    size_t size() const { return kind == ModelKind::lgt ? lgt.size() : sgt.size(); }
};

/// Categorical draw over grid elements proportional to exp(log_weights),
/// stabilised by max subtraction. Throws when the grid is empty or all
/// weights are -inf.
int grid_sample_index(Rng& rng, std::span<const double> log_weights);
double grid_sample(Rng& rng, std::span<const double> grid,
                   std::span<const double> log_weights);

// ---- generic componentwise adaptive random-walk Metropolis -----------------

struct RwmOptions {
    double target_accept = 0.44;
    double adapt_decay = 0.6;  // Robbins-Monro step c/k^decay on log scales
    double adapt_c = 1.0;
};

/// One chain of componentwise random-walk Metropolis over an arbitrary
/// log target. Proposal scales adapt during burn-in and freeze after.
class AdaptiveRwmChain {
public:
    AdaptiveRwmChain(std::function<double(const std::vector<double>&)> log_target,
                     std::vector<double> init, std::vector<double> init_scales,
                     RwmOptions opts, Rng rng);

    /// One full sweep over the coordinates.
    void sweep();

    void freeze_adaptation() { adapting_ = false; }
    const std::vector<double>& state() const { return x_; }
    double current_target() const { return fx_; }
    /// Mean acceptance rate over all proposals since freeze.
    double frozen_accept_rate() const;

private:
    std::function<double(const std::vector<double>&)> log_target_;
    std::vector<double> x_;
    std::vector<double> log_scales_;
    std::vector<long> proposal_count_;
    RwmOptions opts_;
    Rng rng_;
    double fx_ = 0.0;
    bool adapting_ = true;
    long frozen_props_ = 0, frozen_accepts_ = 0;
};

/// Full-posterior fit by componentwise random-walk Metropolis on the
/// unconstrained parameterisation, n_chains independent chains, draws
/// thinned after burn-in. `homoscedastic` pins tau = xi = 0 (the
/// simplified error model). Deterministic given (series, config, seed).
PosteriorDraws fit_mwg(const TimeSeries& series, ModelKind kind,
                       const PriorConfig& priors, const SamplerConfig& config,
                       bool homoscedastic = false);

// ---- convergence summaries --------------------------------------------------

struct ParamDiagnostics {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    /// Split R-hat: the larger of the rank-normalised and raw-scale
    /// between/within ratios (rank normalisation alone saturates under
    /// complete chain separation).
    double rhat = 0.0;
    double ess = 0.0;  // autocorrelation-truncated effective sample size
};

/// Requires >= 2 chains and >= 100 draws per chain.
std::vector<ParamDiagnostics> diagnostics(const PosteriorDraws& draws);

/// R-hat / ESS over explicit per-chain scalar sequences (test surface).
double split_rhat(const std::vector<std::vector<double>>& chains);
double effective_sample_size(const std::vector<std::vector<double>>& chains);

/// Names of the fitted parameters in draw-vector order.
std::vector<std::string> param_names(ModelKind kind, int m, bool homoscedastic);
std::vector<double> flatten_params(const LgtParams& p, bool homoscedastic);
std::vector<double> flatten_params(const SgtParams& p);

}  // namespace lgt::mcmc
