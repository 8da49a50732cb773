#pragma once

#include <span>
#include <vector>

namespace lgt::eval {

/// Symmetric mean absolute percentage error, in percent (bounded by
/// [0, 200]). Throws when |y| + |yhat| is zero at any step, naming the
/// step.
double smape(std::span<const double> actuals, std::span<const double> forecasts);

/// Mean absolute scaled error: out-of-sample MAE over the in-sample
/// seasonal-naive MAE at lag s. Throws on a zero denominator.
double mase(std::span<const double> actuals, std::span<const double> forecasts,
            std::span<const double> insample, int s);

struct IntervalForecast {
    std::vector<double> lower;
    std::vector<double> upper;
    double alpha = 0.1;  // significance level (interval covers 1 - alpha)
};

/// Mean scaled interval score: interval width plus 2/alpha times the
/// distance of observations falling outside, scaled like mase.
double msis(std::span<const double> actuals, const IntervalForecast& interval,
            std::span<const double> insample, int s);

struct CoverageStats {
    double below_p1 = 0.0;
    double below_p5 = 0.0;
    double below_p95 = 0.0;
    double below_p99 = 0.0;
};

/// Fractions of steps where the actual lies below each quantile track.
CoverageStats coverage_stats(std::span<const double> actuals,
                             std::span<const double> p1_track,
                             std::span<const double> p5_track,
                             std::span<const double> p95_track,
                             std::span<const double> p99_track);

}  // namespace lgt::eval
