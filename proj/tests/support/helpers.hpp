#pragma once

#include "lgt/model.hpp"
#include "lgt/rng.hpp"
#include "lgt/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace testsup {

// Adaptive Simpson quadrature; independent oracle for density checks.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (!std::isfinite(left + right - whole)) return left + right;
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Integral of f over the whole real line through x = loc + scale*tan(u),
/// which handles heavy tails exactly.
inline double integrate_real_line(const std::function<double(double)>& f, double loc,
                                  double scale, double tol = 1e-10) {
    const double half_pi = 1.5707963267948966;
    auto g = [&](double u) {
        const double c = std::cos(u);
        const double x = loc + scale * std::tan(u);
        return f(x) * scale / (c * c);
    };
    return integrate(g, -half_pi + 1e-9, half_pi - 1e-9, tol);
}

/// Integral of f over (0, inf) through x = exp(u).
inline double integrate_positive(const std::function<double(double)>& f, double lo_log,
                                 double hi_log, double tol = 1e-10) {
    auto g = [&](double u) { return f(std::exp(u)) * std::exp(u); };
    return integrate(g, lo_log, hi_log, tol);
}

/// Kolmogorov-Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, std::fabs(F - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - F));
    }
    return d;
}

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// A positive, mildly trending synthetic series (not model-generated).
inline lgt::TimeSeries trending_series(std::string id, int n, int frequency, int horizon,
                                       std::uint64_t seed) {
    lgt::Rng rng(seed);
    lgt::TimeSeries ts;
    ts.id = std::move(id);
    ts.category = frequency > 1 ? "quarterly" : "yearly";
    ts.frequency = frequency;
    ts.horizon = horizon;
    ts.values.resize(n);
    const double base = 20.0 + 30.0 * rng.uniform01();
    const double slope = 0.5 + 2.0 * rng.uniform01();
    const double curve = 0.4 + 0.8 * rng.uniform01();
    for (int t = 0; t < n; ++t) {
        double v = base + slope * std::pow(static_cast<double>(t + 1), curve + 0.5);
        if (frequency > 1)
            v *= 1.0 + 0.25 * std::sin(6.2831853 * t / frequency);
        v += (rng.uniform01() - 0.5) * 0.1 * v;
        ts.values[t] = std::max(v, 0.5);
    }
    return ts;
}

/// Series drawn from the LGT model itself with the given parameters.
inline lgt::TimeSeries lgt_series(std::string id, const lgt::LgtParams& p, int n,
                                  int horizon, std::uint64_t seed) {
    lgt::Rng rng(seed);
    lgt::TimeSeries ts;
    ts.id = std::move(id);
    ts.category = "yearly";
    ts.frequency = 1;
    ts.horizon = horizon;
    ts.values = lgt::simulate_lgt_series(p, p.l1, n, rng);
    return ts;
}

}  // namespace testsup
