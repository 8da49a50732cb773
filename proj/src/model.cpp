#include "lgt/model.hpp"

#include "lgt/dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgt {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kInf = std::numeric_limits<double>::infinity();

bool in_range(double x, double lo, double hi) { return x >= lo && x <= hi; }

/// log normalising constant of a Cauchy restricted to [lo, hi].
double log_cauchy_mass(double loc, double scale, double lo, double hi) {
    if (lo == -kInf && hi == kInf) return 0.0;
    const double flo = std::atan((lo - loc) / scale) / kPi;
    const double fhi = std::atan((hi - loc) / scale) / kPi;
    return std::log(fhi - flo);
}

double truncated_cauchy_logpdf(double x, double loc, double scale,
                               double lo, double hi) {
    if (x < lo || x > hi) return -kInf;
    return dist::cauchy_logpdf(x, loc, scale) - log_cauchy_mass(loc, scale, lo, hi);
}

double sample_truncated_cauchy(Rng& rng, double loc, double scale,
                               double lo, double hi) {
    for (;;) {
        const double x = dist::sample_cauchy(rng, loc, scale);
        if (x >= lo && x <= hi) return x;
    }
}

double sample_truncated_half_cauchy(Rng& rng, double scale, double upper) {
    for (;;) {
        const double x = dist::sample_half_cauchy(rng, scale);
        if (x <= upper) return x;
    }
}

double half_cauchy_logprior(double x, double scale, double upper) {
    if (x <= 0.0 || x > upper) return -kInf;
    double lp = dist::half_cauchy_logpdf(x, scale);
    if (upper != kInf)
        lp -= std::log(2.0 * std::atan(upper / scale) / kPi);
    return lp;
}

[[noreturn]] void nonfinite_at(int time_index) {
    throw std::runtime_error("non-finite state at time index " +
                             std::to_string(time_index));
}

}  // namespace

bool lgt_in_boxes(const LgtParams& p, const PriorConfig& priors) {
    return in_range(p.nu, priors.nu_lo, priors.nu_hi) &&
           in_range(p.rho, priors.rho_lo, priors.rho_hi) &&
           in_range(p.lambda, priors.lambda_lo, priors.lambda_hi) &&
           in_range(p.alpha, 0.0, 1.0) && in_range(p.beta, 0.0, 1.0) &&
           in_range(p.tau, priors.tau_lo, priors.tau_hi) &&
           p.sigma > 0.0 && p.sigma <= priors.sigma_upper &&
           p.xi >= 0.0 && p.xi <= priors.xi_upper &&
           in_range(p.gamma, priors.gamma_lo, priors.gamma_hi) &&
           in_range(p.b1, priors.b1_lo, priors.b1_hi) &&
           std::isfinite(p.l1);
}

bool sgt_in_boxes(const SgtParams& p, const PriorConfig& priors) {
    if (!(in_range(p.nu, priors.nu_lo, priors.nu_hi) &&
          in_range(p.rho, priors.rho_lo, priors.rho_hi) &&
          in_range(p.alpha, 0.0, 1.0) && in_range(p.zeta, 0.0, 1.0) &&
          in_range(p.tau, priors.tau_lo, priors.tau_hi) &&
          p.sigma > 0.0 && p.sigma <= priors.sigma_upper &&
          p.xi >= 0.0 && p.xi <= priors.xi_upper &&
          in_range(p.gamma, priors.gamma_lo, priors.gamma_hi) &&
          std::isfinite(p.l1) && !p.s_init.empty()))
        return false;
    double sum = 0.0;
    for (double s : p.s_init) {
        if (!(s > 0.0)) return false;
        sum += s;
    }
    return std::fabs(sum / static_cast<double>(p.s_init.size()) - 1.0) <= 1e-9;
}

double lgt_one_step(double level, double trend, const LgtParams& p) {
    if (level < kLevelFloor)
        throw std::invalid_argument("lgt_one_step: level below floor");
    return level + p.gamma * std::pow(level, p.rho) + p.lambda * trend;
}

double lgt_error_scale(double yhat, const LgtParams& p) {
    if (yhat < kLevelFloor)
        throw std::invalid_argument("lgt_error_scale: prediction below floor");
    return p.sigma * std::pow(yhat, p.tau) + p.xi;
}

double generalized_trend_one_step(double level, double trend, double rho) {
    if (level < kLevelFloor)
        throw std::invalid_argument("generalized_trend_one_step: level below floor");
    return level + trend * std::pow(level, rho);
}

ForwardPass lgt_forward(std::span<const double> y, const LgtParams& p) {
    const int n = static_cast<int>(y.size());
    if (n < 2) throw std::invalid_argument("lgt_forward: need at least 2 values");

    ForwardPass fp;
    fp.yhat.resize(n - 1);
    fp.sigma_hat.resize(n - 1);
    fp.levels.resize(n);
    fp.trends.resize(n);
    fp.levels[0] = std::max(p.l1, kLevelFloor);
    fp.trends[0] = p.b1;

    for (int i = 0; i + 1 < n; ++i) {
        const double l = fp.levels[i];
        const double yh = l + p.gamma * std::pow(l, p.rho) + p.lambda * fp.trends[i];
        if (!std::isfinite(yh)) nonfinite_at(i + 2);
        const double sc = p.sigma * std::pow(std::max(yh, kLevelFloor), p.tau) + p.xi;
        fp.loglik += dist::student_t_logpdf(y[i + 1], p.nu, yh, sc);
        const double lnext = std::max(p.alpha * y[i + 1] + (1.0 - p.alpha) * l,
                                      kLevelFloor);
        const double bnext = p.beta * (lnext - l) + (1.0 - p.beta) * fp.trends[i];
        if (!std::isfinite(lnext) || !std::isfinite(bnext)) nonfinite_at(i + 2);
        fp.yhat[i] = yh;
        fp.sigma_hat[i] = sc;
        fp.levels[i + 1] = lnext;
        fp.trends[i + 1] = bnext;
    }
    if (!std::isfinite(fp.loglik) && fp.loglik != -kInf) nonfinite_at(n);
    return fp;
}

ForwardPass sgt_forward(std::span<const double> y, const SgtParams& p) {
    const int n = static_cast<int>(y.size());
    const int m = static_cast<int>(p.s_init.size());
    if (n < 2) throw std::invalid_argument("sgt_forward: need at least 2 values");
    if (m < 2) throw std::invalid_argument("sgt_forward: seasonal period must exceed 1");

    ForwardPass fp;
    fp.yhat.resize(n - 1);
    fp.sigma_hat.resize(n - 1);
    fp.levels.resize(n);
    fp.seasonal.resize(n + m);
    for (int j = 0; j < m; ++j) fp.seasonal[j] = p.s_init[j];
    fp.levels[0] = std::max(p.l1, kLevelFloor);

    for (int i = 0; i + 1 < n; ++i) {
        const double l = fp.levels[i];
        // Factor for time i+1+m, from the state at time i+1.
        fp.seasonal[i + m] = p.zeta * y[i] / l + (1.0 - p.zeta) * fp.seasonal[i];
        const double s_next = fp.seasonal[i + 1];
        const double yh = (l + p.gamma * std::pow(l, p.rho)) * s_next;
        if (!std::isfinite(yh)) nonfinite_at(i + 2);
        const double sc = p.sigma * std::pow(std::max(yh, kLevelFloor), p.tau) + p.xi;
        fp.loglik += dist::student_t_logpdf(y[i + 1], p.nu, yh, sc);
        const double lnext = std::max(p.alpha * y[i + 1] / s_next + (1.0 - p.alpha) * l,
                                      kLevelFloor);
        if (!std::isfinite(lnext)) nonfinite_at(i + 2);
        fp.yhat[i] = yh;
        fp.sigma_hat[i] = sc;
        fp.levels[i + 1] = lnext;
    }
    fp.seasonal[n - 1 + m] = p.zeta * y[n - 1] / fp.levels[n - 1]
                           + (1.0 - p.zeta) * fp.seasonal[n - 1];
    if (!std::isfinite(fp.loglik) && fp.loglik != -kInf) nonfinite_at(n);
    return fp;
}

double lgt_log_prior(const LgtParams& p, const PriorConfig& priors) {
    if (!lgt_in_boxes(p, priors)) return -kInf;
    double lp = 0.0;
    lp += dist::beta_logpdf(p.alpha, priors.alpha_a, priors.alpha_b);
    lp += dist::beta_logpdf(p.beta, priors.beta_a, priors.beta_b);
    lp += truncated_cauchy_logpdf(p.gamma, priors.gamma_loc, priors.gamma_scale,
                                  priors.gamma_lo, priors.gamma_hi);
    lp += truncated_cauchy_logpdf(p.lambda, priors.lambda_loc, priors.lambda_scale,
                                  priors.lambda_lo, priors.lambda_hi);
    lp += truncated_cauchy_logpdf(p.b1, priors.b1_loc, priors.b1_scale,
                                  priors.b1_lo, priors.b1_hi);
    if (std::isfinite(priors.sigma_scale))
        lp += half_cauchy_logprior(p.sigma, priors.sigma_scale, priors.sigma_upper);
    else
        lp += -2.0 * std::log(p.sigma);  // flat on log sigma (testing hook)
    lp += dist::uniform_logpdf(p.tau, priors.tau_lo, priors.tau_hi);
    lp += dist::uniform_logpdf(p.rho, priors.rho_lo, priors.rho_hi);
    lp += dist::uniform_logpdf(p.nu, priors.nu_lo, priors.nu_hi);
    if (p.xi > 0.0 || p.tau > 0.0)
        lp += half_cauchy_logprior(std::max(p.xi, 1e-300), priors.xi_scale,
                                   priors.xi_upper);
    return lp;
}

double sgt_log_prior(const SgtParams& p, const PriorConfig& priors) {
    if (!sgt_in_boxes(p, priors)) return -kInf;
    double lp = 0.0;
    lp += dist::beta_logpdf(p.alpha, priors.alpha_a, priors.alpha_b);
    lp += dist::beta_logpdf(p.zeta, priors.zeta_a, priors.zeta_b);
    lp += truncated_cauchy_logpdf(p.gamma, priors.gamma_loc, priors.gamma_scale,
                                  priors.gamma_lo, priors.gamma_hi);
    if (std::isfinite(priors.sigma_scale))
        lp += half_cauchy_logprior(p.sigma, priors.sigma_scale, priors.sigma_upper);
    else
        lp += -2.0 * std::log(p.sigma);
    lp += dist::uniform_logpdf(p.tau, priors.tau_lo, priors.tau_hi);
    lp += dist::uniform_logpdf(p.rho, priors.rho_lo, priors.rho_hi);
    lp += dist::uniform_logpdf(p.nu, priors.nu_lo, priors.nu_hi);
    lp += half_cauchy_logprior(std::max(p.xi, 1e-300), priors.xi_scale,
                               priors.xi_upper);
    for (double s : p.s_init)
        lp += dist::log_cauchy_logpdf(s, 0.0, priors.s_log_scale);
    return lp;
}

LgtParams sample_lgt_prior(Rng& rng, const PriorConfig& priors, double l1,
                           bool homoscedastic) {
    LgtParams p;
    p.alpha = dist::sample_beta(rng, priors.alpha_a, priors.alpha_b);
    p.beta = dist::sample_beta(rng, priors.beta_a, priors.beta_b);
    p.gamma = sample_truncated_cauchy(rng, priors.gamma_loc, priors.gamma_scale,
                                      priors.gamma_lo, priors.gamma_hi);
    p.lambda = sample_truncated_cauchy(rng, priors.lambda_loc, priors.lambda_scale,
                                       priors.lambda_lo, priors.lambda_hi);
    p.b1 = sample_truncated_cauchy(rng, priors.b1_loc, priors.b1_scale,
                                   priors.b1_lo, priors.b1_hi);
    const double sig_scale = std::isfinite(priors.sigma_scale) ? priors.sigma_scale : 1.0;
    p.sigma = sample_truncated_half_cauchy(rng, sig_scale, priors.sigma_upper);
    p.nu = rng.uniform(priors.nu_lo, priors.nu_hi);
    p.rho = rng.uniform(priors.rho_lo, priors.rho_hi);
    if (homoscedastic) {
        p.tau = 0.0;
        p.xi = 0.0;
    } else {
        p.tau = rng.uniform(priors.tau_lo, priors.tau_hi);
        p.xi = sample_truncated_half_cauchy(rng, priors.xi_scale, priors.xi_upper);
    }
    p.l1 = l1;
    return p;
}

SgtParams sample_sgt_prior(Rng& rng, const PriorConfig& priors, double y1, int m) {
    SgtParams p;
    p.alpha = dist::sample_beta(rng, priors.alpha_a, priors.alpha_b);
    p.zeta = dist::sample_beta(rng, priors.zeta_a, priors.zeta_b);
    p.gamma = sample_truncated_cauchy(rng, priors.gamma_loc, priors.gamma_scale,
                                      priors.gamma_lo, priors.gamma_hi);
    const double sig_scale = std::isfinite(priors.sigma_scale) ? priors.sigma_scale : 1.0;
    p.sigma = sample_truncated_half_cauchy(rng, sig_scale, priors.sigma_upper);
    p.nu = rng.uniform(priors.nu_lo, priors.nu_hi);
    p.rho = rng.uniform(priors.rho_lo, priors.rho_hi);
    p.tau = rng.uniform(priors.tau_lo, priors.tau_hi);
    p.xi = sample_truncated_half_cauchy(rng, priors.xi_scale, priors.xi_upper);
    p.s_init.resize(m);
    double total = 0.0;
    for (double& s : p.s_init) {
        // Keep prior draws of the factors within sane bounds; the prior
        // is heavy-tailed but an initial factor of e^3 is already absurd.
        const double z = sample_truncated_cauchy(rng, 0.0, priors.s_log_scale, -3.0, 3.0);
        s = std::exp(z);
        total += s;
    }
    for (double& s : p.s_init) s *= static_cast<double>(m) / total;
    p.l1 = y1 / p.s_init[0];
    return p;
}

std::vector<double> simulate_lgt_series(const LgtParams& p, double y1, int n,
                                        Rng& rng) {
    std::vector<double> y(n);
    y[0] = y1;
    double l = std::max(p.l1, kLevelFloor);
    double b = p.b1;
    for (int i = 0; i + 1 < n; ++i) {
        const double yh = l + p.gamma * std::pow(l, p.rho) + p.lambda * b;
        const double sc = p.sigma * std::pow(std::max(yh, kLevelFloor), p.tau) + p.xi;
        y[i + 1] = yh + sc * dist::sample_student_t(rng, p.nu);
        const double lnext = std::max(p.alpha * y[i + 1] + (1.0 - p.alpha) * l,
                                      kLevelFloor);
        b = p.beta * (lnext - l) + (1.0 - p.beta) * b;
        l = lnext;
    }
    return y;
}

}  // namespace lgt
