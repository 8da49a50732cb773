#pragma once

#include "lgt/engine.hpp"
#include "lgt/ets.hpp"
#include "lgt/evaluate.hpp"
#include "lgt/gibbs.hpp"
#include "lgt/mcmc.hpp"
#include "lgt/priors.hpp"
#include "lgt/series.hpp"

#include <string>

namespace lgt::pipeline {

enum class Backend { mwg, gibbs };
enum class ModelChoice { automatic, lgt, sgt, ets_aadn, ets_hw };

ModelChoice parse_model(const std::string& name);    // throws on unknown
Backend parse_backend(const std::string& name);
std::string model_label(ModelChoice resolved);

/// The automatic routing rule: LGT for non-seasonal series, SGT
/// otherwise. For explicit choices, validates against the frequency.
ModelChoice resolve_model(ModelChoice choice, int frequency);

struct PipelineOptions {
    ModelChoice model = ModelChoice::automatic;
    Backend backend = Backend::mwg;
    mcmc::SamplerConfig sampler;   // seed here is the master seed
    PriorConfig priors;
    int n_paths = 5000;
    int n_threads = 1;
    std::vector<double> levels = kDefaultLevels;
    ets::EtsFitOptions ets_opts;
};

struct FitResult {
    mcmc::PosteriorDraws draws;
    double offset = 0.0;  // positivity shift applied before fitting
};

/// Fits one (possibly shifted) series with the requested backend. The
/// Gibbs backend fits the simplified homoscedastic model and requires a
/// non-seasonal series.
FitResult fit_series(const TimeSeries& raw, ModelChoice resolved, Backend backend,
                     const mcmc::SamplerConfig& config, const PriorConfig& priors);

/// Posterior-predictive forecast from stored draws; re-applies the
/// positivity shift, recomputes per-draw filtered states, simulates
/// paths and removes the shift from the aggregated quantiles.
ForecastDistribution forecast_from_draws(const TimeSeries& raw, const FitResult& fit,
                                         int n_paths, std::uint64_t seed,
                                         const std::vector<double>& levels,
                                         int n_threads);

/// Forecaster over the full option set, as used by evaluate and the CLI.
eval::Forecaster make_forecaster(const PipelineOptions& opts);

/// Draw serialisation (full precision; round-trips exactly).
std::string draws_to_csv(const FitResult& fit);
FitResult draws_from_csv(const std::string& content);

}  // namespace lgt::pipeline
