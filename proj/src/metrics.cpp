#include "lgt/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgt::eval {

namespace {

/// In-sample seasonal-naive mean absolute error, the common scale of
/// mase and msis.
double naive_scale(std::span<const double> insample, int s) {
    const int n = static_cast<int>(insample.size());
    if (s < 1) throw std::invalid_argument("seasonality must be >= 1");
    if (n <= s) throw std::invalid_argument("in-sample length must exceed seasonality");
    double acc = 0.0;
    for (int t = s; t < n; ++t) acc += std::fabs(insample[t] - insample[t - s]);
    const double denom = acc / static_cast<double>(n - s);
    if (denom <= 0.0)
        throw std::invalid_argument("seasonally constant in-sample data: zero scale");
    return denom;
}

}  // namespace

double smape(std::span<const double> actuals, std::span<const double> forecasts) {
    if (actuals.size() != forecasts.size() || actuals.empty())
        throw std::invalid_argument("smape: length mismatch or empty input");
    const double h = static_cast<double>(actuals.size());
    double acc = 0.0;
    for (size_t t = 0; t < actuals.size(); ++t) {
        const double denom = std::fabs(actuals[t]) + std::fabs(forecasts[t]);
        if (denom == 0.0)
            throw std::invalid_argument("smape: zero denominator at step " +
                                        std::to_string(t + 1));
        acc += std::fabs(actuals[t] - forecasts[t]) / denom;
    }
    return 200.0 / h * acc;
}

double mase(std::span<const double> actuals, std::span<const double> forecasts,
            std::span<const double> insample, int s) {
    if (actuals.size() != forecasts.size() || actuals.empty())
        throw std::invalid_argument("mase: length mismatch or empty input");
    const double denom = naive_scale(insample, s);
    double acc = 0.0;
    for (size_t t = 0; t < actuals.size(); ++t)
        acc += std::fabs(actuals[t] - forecasts[t]);
    return acc / static_cast<double>(actuals.size()) / denom;
}

double msis(std::span<const double> actuals, const IntervalForecast& interval,
            std::span<const double> insample, int s) {
    const size_t h = actuals.size();
    if (interval.lower.size() != h || interval.upper.size() != h || h == 0)
        throw std::invalid_argument("msis: interval/actual length mismatch");
    if (!(interval.alpha > 0.0 && interval.alpha < 1.0))
        throw std::invalid_argument("msis: alpha must be in (0,1)");
    for (size_t t = 0; t < h; ++t)
        if (interval.lower[t] > interval.upper[t])
            throw std::invalid_argument("msis: crossed interval bounds");

    const double denom = naive_scale(insample, s);
    const double penalty = 2.0 / interval.alpha;
    double acc = 0.0;
    for (size_t t = 0; t < h; ++t) {
        acc += interval.upper[t] - interval.lower[t];
        if (actuals[t] < interval.lower[t]) acc += penalty * (interval.lower[t] - actuals[t]);
        if (actuals[t] > interval.upper[t]) acc += penalty * (actuals[t] - interval.upper[t]);
    }
    return acc / static_cast<double>(h) / denom;
}

CoverageStats coverage_stats(std::span<const double> actuals,
                             std::span<const double> p1_track,
                             std::span<const double> p5_track,
                             std::span<const double> p95_track,
                             std::span<const double> p99_track) {
    const size_t h = actuals.size();
    if (p1_track.size() != h || p5_track.size() != h || p95_track.size() != h ||
        p99_track.size() != h)
        throw std::invalid_argument("coverage_stats: track length mismatch");
    CoverageStats out;
    for (size_t t = 0; t < h; ++t) {
        out.below_p1 += actuals[t] < p1_track[t] ? 1.0 : 0.0;
        out.below_p5 += actuals[t] < p5_track[t] ? 1.0 : 0.0;
        out.below_p95 += actuals[t] < p95_track[t] ? 1.0 : 0.0;
        out.below_p99 += actuals[t] < p99_track[t] ? 1.0 : 0.0;
    }
    const double hd = static_cast<double>(h);
    out.below_p1 /= hd;
    out.below_p5 /= hd;
    out.below_p95 /= hd;
    out.below_p99 /= hd;
    return out;
}

}  // namespace lgt::eval
