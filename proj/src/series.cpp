#include "lgt/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgt {

void TimeSeries::validate() const {
    if (n() < 4)
        throw std::invalid_argument("series '" + id + "': need at least 4 values");
    if (frequency < 1)
        throw std::invalid_argument("series '" + id + "': frequency must be >= 1");
    if (horizon < 1)
        throw std::invalid_argument("series '" + id + "': horizon must be >= 1");
    if (frequency > 1 && n() < 2 * frequency)
        throw std::invalid_argument("series '" + id +
                                    "': need at least two full seasonal cycles");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("series '" + id + "': non-finite value");
}

void TimeSeries::require_positive() const {
    for (double v : values)
        if (v <= 0.0)
            throw std::invalid_argument("series '" + id +
                                        "': values must be strictly positive for fitting");
}

TrainTestSplit split_last_h(const TimeSeries& series) {
    const int h = series.horizon;
    if (series.n() <= h)
        throw std::invalid_argument("series '" + series.id +
                                    "': length must exceed horizon to split");
    TrainTestSplit out;
    out.train = series;
    out.train.values.assign(series.values.begin(), series.values.end() - h);
    out.test.assign(series.values.end() - h, series.values.end());
    return out;
}

PositiveShift ensure_positive(const TimeSeries& series) {
    PositiveShift out;
    out.series = series;
    const double lo = *std::min_element(series.values.begin(), series.values.end());
    if (lo <= 0.0) {
        out.offset = 1.0 - lo;
        for (double& v : out.series.values) v += out.offset;
    }
    return out;
}

}  // namespace lgt
