#include "lgt/evaluate.hpp"

#include "lgt/csv.hpp"
#include "lgt/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace lgt::eval {

namespace {

constexpr std::uint64_t kSeriesTag = 0x455641u;

std::string quantile_label(double level) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "p%g", level * 100.0);
    return buf;
}

void accumulate(AggregateMetrics& agg, const SeriesMetrics& s) {
    ++agg.count;
    agg.smape += s.smape;
    agg.mase += s.mase;
    agg.msis90 += s.msis90;
    agg.msis98 += s.msis98;
    agg.coverage.below_p1 += s.coverage.below_p1;
    agg.coverage.below_p5 += s.coverage.below_p5;
    agg.coverage.below_p95 += s.coverage.below_p95;
    agg.coverage.below_p99 += s.coverage.below_p99;
}

void finalize(AggregateMetrics& agg) {
    if (agg.count == 0) return;
    const double n = agg.count;
    agg.smape /= n;
    agg.mase /= n;
    agg.msis90 /= n;
    agg.msis98 /= n;
    agg.coverage.below_p1 /= n;
    agg.coverage.below_p5 /= n;
    agg.coverage.below_p95 /= n;
    agg.coverage.below_p99 /= n;
}

}  // namespace

MetricReport evaluate_dataset(const std::vector<TimeSeries>& dataset,
                              const Forecaster& forecaster,
                              const EvalOptions& opts) {
    const int n = static_cast<int>(dataset.size());
    MetricReport report;
    report.series.resize(n);
    report.forecasts.resize(n);

#pragma omp parallel for schedule(dynamic) num_threads(std::max(opts.jobs, 1))
    for (int i = 0; i < n; ++i) {
        const TimeSeries& ts = dataset[i];
        SeriesMetrics& row = report.series[i];
        row.id = ts.id;
        row.category = ts.category;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const TrainTestSplit split = split_last_h(ts);
            split.train.validate();
            const std::uint64_t seed =
                Rng::stream(opts.seed, kSeriesTag, static_cast<std::uint64_t>(i)).next_u64();
            SeriesForecast fc = forecaster(split.train, seed);
            if (fc.dist.horizon != ts.horizon)
                throw std::runtime_error("forecaster returned wrong horizon");
            row.model = fc.model;

            const auto point = point_forecast(fc.dist);
            const auto p1 = fc.dist.level_track(0.01);
            const auto p5 = fc.dist.level_track(0.05);
            const auto p95 = fc.dist.level_track(0.95);
            const auto p99 = fc.dist.level_track(0.99);

            const int s = ts.frequency;
            row.smape = smape(split.test, point);
            row.mase = mase(split.test, point, split.train.values, s);
            row.msis90 = msis(split.test, {p5, p95, 0.10}, split.train.values, s);
            row.msis98 = msis(split.test, {p1, p99, 0.02}, split.train.values, s);
            row.coverage = coverage_stats(split.test, p1, p5, p95, p99);
            report.forecasts[i] = std::move(fc.dist);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        row.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
    }

    // Deterministic ordered reduce.
    std::vector<std::string> cat_order;
    for (const auto& row : report.series) {
        if (row.failed) {
            ++report.failures;
            continue;
        }
        auto it = std::find(cat_order.begin(), cat_order.end(), row.category);
        if (it == cat_order.end()) {
            cat_order.push_back(row.category);
            report.by_category.push_back({row.category});
        }
        const size_t k = std::find(cat_order.begin(), cat_order.end(), row.category) -
                         cat_order.begin();
        accumulate(report.by_category[k], row);
        accumulate(report.overall, row);
    }
    for (auto& agg : report.by_category) finalize(agg);
    report.overall.category = "all";
    finalize(report.overall);
    return report;
}

std::string per_series_csv(const MetricReport& report) {
    std::ostringstream out;
    out << "id,category,model,status,smape,mase,msis90,msis98,"
           "below_p1,below_p5,below_p95,below_p99,error\n";
    for (const auto& r : report.series) {
        out << r.id << ',' << r.category << ',' << r.model << ','
            << (r.failed ? "failed" : "ok") << ',';
        if (r.failed) {
            out << ",,,,,,,," << r.error << '\n';
            continue;
        }
        out << format_double(r.smape) << ',' << format_double(r.mase) << ','
            << format_double(r.msis90) << ',' << format_double(r.msis98) << ','
            << format_double(r.coverage.below_p1) << ','
            << format_double(r.coverage.below_p5) << ','
            << format_double(r.coverage.below_p95) << ','
            << format_double(r.coverage.below_p99) << ",\n";
    }
    return out.str();
}

std::string summary_text(const MetricReport& report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %6s %8s %8s %8s %8s %9s %9s %8s %8s\n",
                  "category", "n", "sMAPE", "MASE", "MSIS90", "MSIS98",
                  "Below99p", "Below95p", "Below5p", "Below1p");
    out << line;
    auto emit = [&](const AggregateMetrics& a) {
        std::snprintf(line, sizeof line,
                      "%-12s %6d %8.2f %8.3f %8.2f %8.2f %9.2f %9.2f %8.2f %8.2f\n",
                      a.category.c_str(), a.count, a.smape, a.mase, a.msis90, a.msis98,
                      100.0 * a.coverage.below_p99, 100.0 * a.coverage.below_p95,
                      100.0 * a.coverage.below_p5, 100.0 * a.coverage.below_p1);
        out << line;
    };
    for (const auto& a : report.by_category) emit(a);
    emit(report.overall);
    out << "failures: " << report.failures << "\n";
    return out.str();
}

std::string forecasts_csv(const std::vector<TimeSeries>& dataset,
                          const MetricReport& report) {
    std::ostringstream out;
    bool header_done = false;
    for (size_t i = 0; i < report.series.size(); ++i) {
        if (report.series[i].failed) continue;
        const ForecastDistribution& d = report.forecasts[i];
        if (!header_done) {
            out << "id,step";
            for (double lv : d.levels) out << ',' << quantile_label(lv);
            out << ",mean\n";
            header_done = true;
        }
        for (int k = 0; k < d.horizon; ++k) {
            out << dataset[i].id << ',' << (k + 1);
            for (size_t j = 0; j < d.levels.size(); ++j)
                out << ',' << format_double(d.quantiles[k][j]);
            out << ',' << format_double(d.mean[k]) << '\n';
        }
    }
    if (!header_done) out << "id,step,p1,p5,p50,p95,p99,mean\n";
    return out.str();
}

}  // namespace lgt::eval
