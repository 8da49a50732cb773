#include "lgt/ets.hpp"

#include "lgt/dist.hpp"
#include "lgt/model.hpp"
#include "lgt/nelder_mead.hpp"
#include "lgt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lgt::ets {

namespace {

// The filters accept the closed boxes (degenerate corners like alpha=1
// or phi=0 are well-defined and used as oracles); the MLE works on the
// open interior.
void check_common(const EtsParams& p, bool seasonal) {
    const bool ok = p.alpha >= 0.0 && p.alpha <= 1.0 && p.beta >= 0.0 && p.beta <= 1.0 &&
                    p.phi >= 0.0 && p.phi <= 1.0 && p.sigma > 0.0 &&
                    (!seasonal || (p.zeta >= 0.0 && p.zeta <= 1.0));
    if (!ok) throw std::invalid_argument("ets: parameter outside its box");
    if (seasonal) {
        if (p.s_init.size() < 2)
            throw std::invalid_argument("ets: seasonal model needs m > 1 factors");
        for (double s : p.s_init)
            if (!(s > 0.0))
                throw std::invalid_argument("ets: seasonal factors must be positive");
    }
}

}  // namespace

EtsFilterResult aadn_filter(std::span<const double> y, const EtsParams& p) {
    check_common(p, false);
    const int n = static_cast<int>(y.size());
    if (n < 2) throw std::invalid_argument("aadn_filter: need at least 2 values");

    EtsFilterResult out;
    out.predictions.resize(n - 1);
    double l = p.l1, b = p.b1;
    for (int i = 0; i + 1 < n; ++i) {
        const double damped = l + p.phi * b;
        out.predictions[i] = damped;
        out.loglik += dist::normal_logpdf(y[i + 1], damped, p.sigma);
        const double lnext = p.alpha * y[i + 1] + (1.0 - p.alpha) * damped;
        b = p.beta * (lnext - l) + (1.0 - p.beta) * p.phi * b;
        l = lnext;
    }
    out.state.level = l;
    out.state.trend = b;
    return out;
}

std::vector<double> aadn_forecast(const EtsState& state, const EtsParams& p, int h) {
    if (h < 1) throw std::invalid_argument("aadn_forecast: horizon must be >= 1");
    std::vector<double> out(h);
    double phi_pow = 1.0, damp_sum = 0.0;
    for (int k = 0; k < h; ++k) {
        phi_pow *= p.phi;
        damp_sum += phi_pow;
        out[k] = state.level + damp_sum * state.trend;
    }
    return out;
}

EtsFilterResult hw_mult_filter(std::span<const double> y, const EtsParams& p) {
    check_common(p, true);
    const int n = static_cast<int>(y.size());
    const int m = static_cast<int>(p.s_init.size());
    if (n < 2) throw std::invalid_argument("hw_mult_filter: need at least 2 values");

    EtsFilterResult out;
    out.predictions.resize(n - 1);
    // Factor timeline: index i holds the factor applying to observation
    // i+1 (seeded from s_init for the cycle ending at the first value).
    std::vector<double> sfac(n + m - 1);
    for (int j = 0; j < m; ++j) sfac[j] = p.s_init[j];

    double l = p.l1, b = p.b1;
    for (int i = 0; i + 1 < n; ++i) {
        const double damped = l + p.phi * b;
        const double pred = damped * sfac[i];
        out.predictions[i] = pred;
        out.loglik += dist::normal_logpdf(y[i + 1], pred, p.sigma);
        const double lnext = p.alpha * y[i + 1] / sfac[i] + (1.0 - p.alpha) * damped;
        b = p.beta * (lnext - l) + (1.0 - p.beta) * p.phi * b;
        l = lnext;
        sfac[i + m] = p.zeta * y[i + 1] / lnext + (1.0 - p.zeta) * sfac[i];
    }
    out.state.level = l;
    out.state.trend = b;
    out.state.seasonal.assign(sfac.end() - m, sfac.end());
    return out;
}

std::vector<double> hw_mult_forecast(const EtsState& state, const EtsParams& p, int h) {
    if (h < 1) throw std::invalid_argument("hw_mult_forecast: horizon must be >= 1");
    const int m = static_cast<int>(state.seasonal.size());
    if (m < 2) throw std::invalid_argument("hw_mult_forecast: no seasonal state");
    std::vector<double> out(h);
    double phi_pow = 1.0, damp_sum = 0.0;
    for (int k = 0; k < h; ++k) {
        phi_pow *= p.phi;
        damp_sum += phi_pow;
        out[k] = (state.level + damp_sum * state.trend) * state.seasonal[k % m];
    }
    return out;
}

namespace {

struct FitSpace {
    bool seasonal = false;
    int m = 1;
    EtsFitOptions opts;
    double l_scale = 1.0;

    int dim() const { return seasonal ? 4 + 2 + (m - 1) : 3 + 2; }

    // The smoothing boxes are open; keep saturated logits strictly inside.
    static double open_unit(double v) {
        return std::min(std::max(v, 1e-9), 1.0 - 1e-9);
    }

    EtsParams decode(const std::vector<double>& z) const {
        EtsParams p;
        p.alpha = open_unit(logit_out(z[0], 0.0, 1.0));
        p.beta = open_unit(logit_out(z[1], 0.0, 1.0));
        p.phi = logit_out(z[2], opts.phi_lo, opts.phi_hi);
        int k = 3;
        if (seasonal) p.zeta = open_unit(logit_out(z[k++], 0.0, 1.0));
        p.l1 = z[k++] * l_scale;
        p.b1 = z[k++] * l_scale;
        if (seasonal)
            p.s_init = seasonal_from_free({z.begin() + k, z.end()});
        return p;
    }

    std::vector<double> encode(const EtsParams& p) const {
        std::vector<double> z;
        z.push_back(logit_in(p.alpha, 0.0, 1.0));
        z.push_back(logit_in(p.beta, 0.0, 1.0));
        z.push_back(logit_in(p.phi, opts.phi_lo, opts.phi_hi));
        if (seasonal) z.push_back(logit_in(p.zeta, 0.0, 1.0));
        z.push_back(p.l1 / l_scale);
        z.push_back(p.b1 / l_scale);
        if (seasonal) {
            const auto zf = seasonal_to_free(p.s_init);
            z.insert(z.end(), zf.begin(), zf.end());
        }
        return z;
    }
};

/// Gaussian likelihood with the error sd profiled out analytically.
double profiled_negloglik(std::span<const double> y, const EtsParams& p,
                          bool seasonal, double* sigma_out) {
    const int n = static_cast<int>(y.size());
    const auto fr = seasonal ? hw_mult_filter(y, p) : aadn_filter(y, p);
    double sse = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double e = y[i + 1] - fr.predictions[i];
        sse += e * e;
    }
    const int np = n - 1;
    const double var = std::max(sse / np, 1e-300);
    if (sigma_out) *sigma_out = std::sqrt(var);
    return 0.5 * np * (std::log(2.0 * 3.141592653589793 * var) + 1.0);
}

}  // namespace

EtsParams mle_fit_ets(const TimeSeries& series, bool seasonal,
                      const EtsFitOptions& opts) {
    series.validate();
    const auto& y = series.values;
    const int n = series.n();
    const int m = seasonal ? series.frequency : 1;
    if (seasonal && m < 2)
        throw std::invalid_argument("mle_fit_ets: seasonal fit needs frequency > 1");

    FitSpace space;
    space.seasonal = seasonal;
    space.m = m;
    space.opts = opts;

    // Starting state: first-cycle mean level, mean first difference,
    // first-cycle ratios renormalised to mean one.
    const int cycle = seasonal ? m : std::min(4, n);
    double l0 = 0.0;
    for (int i = 0; i < cycle; ++i) l0 += y[i];
    l0 /= cycle;
    double b0 = 0.0;
    for (int i = 1; i < n; ++i) b0 += y[i] - y[i - 1];
    b0 /= (n - 1);
    space.l_scale = std::max(std::fabs(l0), 1e-3);

    std::vector<double> s0;
    if (seasonal) {
        s0.resize(m);
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            s0[i] = std::max(y[i] / std::max(l0, 1e-12), 1e-6);
            total += s0[i];
        }
        for (double& s : s0) s *= m / total;
    }

    auto objective = [&](const std::vector<double>& z) -> double {
        for (double v : z)
            if (!std::isfinite(v)) return 1e30;
        const EtsParams p = space.decode(z);
        if (opts.enforce_beta_lt_alpha && p.beta >= p.alpha) return 1e30;
        if (!std::isfinite(p.l1) || !std::isfinite(p.b1)) return 1e30;
        try {
            return profiled_negloglik(y, p, seasonal, nullptr);
        } catch (const std::exception&) {
            return 1e30;
        }
    };

    const double alpha_starts[][2] = {{0.5, 0.1}, {0.2, 0.05}, {0.8, 0.3}, {0.1, 0.02}};
    SimplexResult best;
    best.value = 1e300;
    bool any_converged = false;

    for (const auto& st : alpha_starts) {
        EtsParams p0;
        p0.alpha = st[0];
        p0.beta = opts.enforce_beta_lt_alpha ? 0.5 * st[1] : st[1];
        p0.phi = 0.5 * (opts.phi_lo + opts.phi_hi);
        p0.zeta = 0.1;
        p0.l1 = l0;
        p0.b1 = b0;
        p0.s_init = s0;
        auto z0 = space.encode(p0);
        std::vector<double> steps(z0.size(), 0.4);
        steps[space.seasonal ? 4 : 3] = 0.2;  // l1 (in level-scale units)
        steps[space.seasonal ? 5 : 4] = 0.2;  // b1
        const auto r = nelder_mead(objective, z0, steps);
        any_converged = any_converged || r.converged;
        if (r.value < best.value) best = r;
    }

    EtsParams fitted = space.decode(best.x);
    profiled_negloglik(y, fitted, seasonal, &fitted.sigma);
    fitted.sigma = std::max(fitted.sigma, 1e-9);
    if (!any_converged)
        throw EtsFitError("mle_fit_ets: no restart converged", fitted);
    return fitted;
}

ForecastDistribution ets_simulate_intervals(const EtsState& state, const EtsParams& p,
                                            bool seasonal, int h, int n_paths,
                                            std::uint64_t seed,
                                            const std::vector<double>& levels) {
    if (n_paths < 100)
        throw std::invalid_argument("ets_simulate_intervals: need at least 100 paths");
    const int m = static_cast<int>(state.seasonal.size());
    if (seasonal && m < 2)
        throw std::invalid_argument("ets_simulate_intervals: no seasonal state");

    PathMatrix paths(n_paths, h);
    constexpr std::uint64_t kTag = 0x455453u;  // distinct stream family per module
    for (int pth = 0; pth < n_paths; ++pth) {
        Rng rng = Rng::stream(seed, kTag, static_cast<std::uint64_t>(pth));
        double l = state.level, b = state.trend;
        for (int k = 0; k < h; ++k) {
            const double damped = l + p.phi * b;
            const double fac = seasonal ? state.seasonal[k % m] : 1.0;
            const double pred = damped * fac;
            const double ysim = std::max(pred + p.sigma * dist::sample_normal(rng, 0.0, 1.0),
                                         kLevelFloor);
            paths.at(pth, k) = ysim;
            const double lnext = p.alpha * ysim / fac + (1.0 - p.alpha) * damped;
            b = p.beta * (lnext - l) + (1.0 - p.beta) * p.phi * b;
            l = lnext;
        }
    }
    return aggregate_quantiles(paths, levels);
}

}  // namespace lgt::ets
