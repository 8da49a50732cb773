#pragma once

#include <vector>

namespace lgt {

/// Per-step simulated-path values: n_paths rows by horizon columns.
struct PathMatrix {
    int n_paths = 0;
    int horizon = 0;
    std::vector<double> data;  // row-major

    PathMatrix() = default;
    PathMatrix(int paths, int h)
        : n_paths(paths), horizon(h),
          data(static_cast<size_t>(paths) * h, 0.0) {}

    double& at(int path, int step) {
        return data[static_cast<size_t>(path) * horizon + step];
    }
    double at(int path, int step) const {
        return data[static_cast<size_t>(path) * horizon + step];
    }
};

/// Quantile tracks plus means over simulated forecast paths.
struct ForecastDistribution {
    int horizon = 0;
    std::vector<double> levels;                  // ascending, in (0,1)
    std::vector<std::vector<double>> quantiles;  // [step][level]
    std::vector<double> mean;                    // per step
    long n_paths = 0;

    std::vector<double> level_track(double level) const;  // throws if absent
};

inline const std::vector<double> kDefaultLevels = {0.01, 0.05, 0.50, 0.95, 0.99};

/// Empirical quantiles per step (linear interpolation between order
/// statistics, the type-7 convention) and per-step means. Levels must be
/// ascending and inside (0,1); the matrix must be non-empty.
ForecastDistribution aggregate_quantiles(const PathMatrix& paths,
                                         const std::vector<double>& levels);

/// The per-step median track. Requires 0.5 among the levels.
std::vector<double> point_forecast(const ForecastDistribution& dist);

}  // namespace lgt
