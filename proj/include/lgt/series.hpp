#pragma once

#include <string>
#include <vector>

namespace lgt {

/// One univariate series with its seasonal period and forecast horizon.
/// Values are immutable after construction and safe to share across
/// concurrent workers.
struct TimeSeries {
    std::string id;
    std::string category;        // e.g. yearly/quarterly/monthly/other
    int frequency = 1;           // seasonal period m, 1 for non-seasonal
    int horizon = 1;             // forecast horizon h
    std::vector<double> values;  // y_1..y_n, natural units

    int n() const { return static_cast<int>(values.size()); }

    /// Throws std::invalid_argument when any structural invariant fails:
    /// n >= 4, finite values, m >= 1, h >= 1, and n >= 2m when m > 1.
    void validate() const;

    /// Throws when any value is <= 0 (required before model fitting).
    void require_positive() const;
};

struct TrainTestSplit {
    TimeSeries train;
    std::vector<double> test;  // the final h observations
};

/// Holds out the last h values. Requires n > h.
TrainTestSplit split_last_h(const TimeSeries& series);

/// Series shifted into strictly positive territory when needed.
/// offset = 1 - min(y) when min(y) <= 0, else 0; forecasts made on the
/// shifted series must subtract the offset again.
struct PositiveShift {
    TimeSeries series;
    double offset = 0.0;
};

PositiveShift ensure_positive(const TimeSeries& series);

}  // namespace lgt
