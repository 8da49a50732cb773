#pragma once

#include "lgt/forecast.hpp"
#include "lgt/metrics.hpp"
#include "lgt/series.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lgt::eval {

/// A forecaster consumes the training part of a series plus a seed for
/// its private RNG streams and produces the forecast distribution along
/// with the name of the model it applied.
struct SeriesForecast {
    ForecastDistribution dist;
    std::string model;
};

using Forecaster =
    std::function<SeriesForecast(const TimeSeries& train, std::uint64_t seed)>;

struct SeriesMetrics {
    std::string id;
    std::string category;
    std::string model;
    bool failed = false;
    std::string error;
    double smape = 0.0;
    double mase = 0.0;
    double msis90 = 0.0;   // alpha = 0.1, p5/p95 tracks
    double msis98 = 0.0;   // alpha = 0.02, p1/p99 tracks
    CoverageStats coverage;
    double seconds = 0.0;  // wall clock; reported on the console, never
                           // written into output files (those must be
                           // byte-stable across runs)
};

struct AggregateMetrics {
    std::string category;
    int count = 0;
    double smape = 0.0;
    double mase = 0.0;
    double msis90 = 0.0;
    double msis98 = 0.0;
    CoverageStats coverage;
};

struct MetricReport {
    std::vector<SeriesMetrics> series;  // input order
    std::vector<AggregateMetrics> by_category;
    AggregateMetrics overall;
    int failures = 0;
    /// Per-series forecasts, kept for the output CSV.
    std::vector<ForecastDistribution> forecasts;
};

struct EvalOptions {
    int jobs = 1;
    std::uint64_t seed = 1;
};

/// Splits every series, forecasts the held-out horizon and aggregates
/// unweighted means per category and overall. Per-series failures are
/// recorded and excluded from the aggregates, never aborting the batch.
/// Results are independent of the worker count.
MetricReport evaluate_dataset(const std::vector<TimeSeries>& dataset,
                              const Forecaster& forecaster,
                              const EvalOptions& opts);

/// Rendered outputs: the per-series CSV and a plain-text summary table.
std::string per_series_csv(const MetricReport& report);
std::string summary_text(const MetricReport& report);
std::string forecasts_csv(const std::vector<TimeSeries>& dataset,
                          const MetricReport& report);

}  // namespace lgt::eval
