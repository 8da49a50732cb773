#include "lgt/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgt {

std::vector<double> ForecastDistribution::level_track(double level) const {
    for (size_t j = 0; j < levels.size(); ++j) {
        if (std::fabs(levels[j] - level) < 1e-12) {
            std::vector<double> track(horizon);
            for (int k = 0; k < horizon; ++k) track[k] = quantiles[k][j];
            return track;
        }
    }
    throw std::invalid_argument("forecast distribution has no such quantile level");
}

ForecastDistribution aggregate_quantiles(const PathMatrix& paths,
                                         const std::vector<double>& levels) {
    if (paths.n_paths <= 0 || paths.horizon <= 0)
        throw std::invalid_argument("aggregate_quantiles: empty path matrix");
    for (size_t j = 0; j < levels.size(); ++j) {
        if (!(levels[j] > 0.0 && levels[j] < 1.0))
            throw std::invalid_argument("aggregate_quantiles: levels must be in (0,1)");
        if (j > 0 && levels[j] <= levels[j - 1])
            throw std::invalid_argument("aggregate_quantiles: levels must be ascending");
    }

    ForecastDistribution out;
    out.horizon = paths.horizon;
    out.levels = levels;
    out.n_paths = paths.n_paths;
    out.quantiles.assign(paths.horizon, std::vector<double>(levels.size()));
    out.mean.resize(paths.horizon);

    std::vector<double> col(paths.n_paths);
    for (int k = 0; k < paths.horizon; ++k) {
        double acc = 0.0;
        for (int p = 0; p < paths.n_paths; ++p) {
            col[p] = paths.at(p, k);
            acc += col[p];
        }
        out.mean[k] = acc / paths.n_paths;
        std::sort(col.begin(), col.end());
        for (size_t j = 0; j < levels.size(); ++j) {
            const double pos = levels[j] * (paths.n_paths - 1);
            const auto lo = static_cast<size_t>(std::floor(pos));
            const double frac = pos - static_cast<double>(lo);
            const double q = lo + 1 < col.size()
                                 ? col[lo] + frac * (col[lo + 1] - col[lo])
                                 : col[lo];
            out.quantiles[k][j] = q;
        }
    }
    return out;
}

std::vector<double> point_forecast(const ForecastDistribution& dist) {
    for (size_t j = 0; j < dist.levels.size(); ++j) {
        if (std::fabs(dist.levels[j] - 0.5) < 1e-12) {
            std::vector<double> out(dist.horizon);
            for (int k = 0; k < dist.horizon; ++k) out[k] = dist.quantiles[k][j];
            return out;
        }
    }
    throw std::invalid_argument("point_forecast: median level absent");
}

}  // namespace lgt
