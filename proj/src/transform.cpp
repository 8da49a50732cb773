#include "lgt/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void check_finite(const std::vector<double>& z, const char* what) {
    for (double v : z)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

bool bounded(double lo, double hi) { return lo != -kInf && hi != kInf; }

// Encoders for a single field given its box.
double enc(double x, double lo, double hi) {
    if (bounded(lo, hi)) return logit_in(x, lo, hi);
    if (lo == 0.0 && hi == kInf) return std::log(std::max(x, 1e-300));
    return x;  // unbounded
}

double dec(double z, double lo, double hi) {
    if (bounded(lo, hi)) return logit_out(z, lo, hi);
    if (lo == 0.0 && hi == kInf) return std::exp(z);
    return z;
}

double jac(double z, double lo, double hi) {
    if (bounded(lo, hi)) return logit_log_jacobian(z, lo, hi);
    if (lo == 0.0 && hi == kInf) return z;
    return 0.0;
}

}  // namespace

double logit_in(double x, double lo, double hi) {
    double u = (x - lo) / (hi - lo);
    u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
    return std::log(u / (1.0 - u));
}

double logit_out(double z, double lo, double hi) {
    return lo + (hi - lo) * sigmoid(z);
}

double logit_log_jacobian(double z, double lo, double hi) {
    const double s = sigmoid(z);
    return std::log(hi - lo) + std::log(std::max(s, 1e-300))
         + std::log(std::max(1.0 - s, 1e-300));
}

std::vector<double> seasonal_from_free(const std::vector<double>& z) {
    const int m = static_cast<int>(z.size()) + 1;
    std::vector<double> s(m);
    double total = 1.0;  // pinned last coordinate exp(0)
    for (int i = 0; i + 1 < m; ++i) {
        s[i] = std::exp(z[i]);
        total += s[i];
    }
    s[m - 1] = 1.0;
    // softmax * m, then rescale so the mean is exactly one.
    double sum = 0.0;
    for (double& v : s) {
        v *= static_cast<double>(m) / total;
        sum += v;
    }
    const double fix = static_cast<double>(m) / sum;
    for (double& v : s) v *= fix;
    return s;
}

std::vector<double> seasonal_to_free(const std::vector<double>& s) {
    const int m = static_cast<int>(s.size());
    if (m < 2) throw std::invalid_argument("seasonal_to_free: need m >= 2");
    std::vector<double> z(m - 1);
    for (int i = 0; i + 1 < m; ++i) {
        if (!(s[i] > 0.0) || !(s[m - 1] > 0.0))
            throw std::invalid_argument("seasonal_to_free: factors must be positive");
        z[i] = std::log(s[i]) - std::log(s[m - 1]);
    }
    return z;
}

double seasonal_log_jacobian(const std::vector<double>& s) {
    double acc = 0.0;
    for (double v : s) acc += std::log(v);
    return acc - std::log(static_cast<double>(s.size()));
}

// ---- LgtCodec ---------------------------------------------------------------

LgtCodec::LgtCodec(const PriorConfig& priors, double l1, bool homoscedastic)
    : priors_(priors), l1_(l1), homoscedastic_(homoscedastic) {
    names_ = {"alpha", "beta", "lambda", "rho", "nu", "gamma", "b1", "sigma"};
    if (!homoscedastic_) {
        names_.push_back("tau");
        names_.push_back("xi");
    }
}

std::vector<double> LgtCodec::encode(const LgtParams& p) const {
    std::vector<double> z;
    z.reserve(names_.size());
    z.push_back(logit_in(p.alpha, 0.0, 1.0));
    z.push_back(logit_in(p.beta, 0.0, 1.0));
    z.push_back(logit_in(p.lambda, priors_.lambda_lo, priors_.lambda_hi));
    z.push_back(logit_in(p.rho, priors_.rho_lo, priors_.rho_hi));
    z.push_back(logit_in(p.nu, priors_.nu_lo, priors_.nu_hi));
    z.push_back(enc(p.gamma, priors_.gamma_lo, priors_.gamma_hi));
    z.push_back(enc(p.b1, priors_.b1_lo, priors_.b1_hi));
    z.push_back(enc(p.sigma, 0.0, priors_.sigma_upper));
    if (!homoscedastic_) {
        z.push_back(logit_in(p.tau, priors_.tau_lo, priors_.tau_hi));
        z.push_back(enc(p.xi, 0.0, priors_.xi_upper));
    }
    return z;
}

LgtParams LgtCodec::decode(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != dim())
        throw std::invalid_argument("LgtCodec::decode: wrong dimension");
    check_finite(z, "LgtCodec::decode");
    LgtParams p;
    p.alpha = logit_out(z[0], 0.0, 1.0);
    p.beta = logit_out(z[1], 0.0, 1.0);
    p.lambda = logit_out(z[2], priors_.lambda_lo, priors_.lambda_hi);
    p.rho = logit_out(z[3], priors_.rho_lo, priors_.rho_hi);
    p.nu = logit_out(z[4], priors_.nu_lo, priors_.nu_hi);
    p.gamma = dec(z[5], priors_.gamma_lo, priors_.gamma_hi);
    p.b1 = dec(z[6], priors_.b1_lo, priors_.b1_hi);
    p.sigma = dec(z[7], 0.0, priors_.sigma_upper);
    if (!homoscedastic_) {
        p.tau = logit_out(z[8], priors_.tau_lo, priors_.tau_hi);
        p.xi = dec(z[9], 0.0, priors_.xi_upper);
    } else {
        p.tau = 0.0;
        p.xi = 0.0;
    }
    p.l1 = l1_;
    return p;
}

double LgtCodec::log_jacobian(const std::vector<double>& z) const {
    double acc = 0.0;
    acc += logit_log_jacobian(z[0], 0.0, 1.0);
    acc += logit_log_jacobian(z[1], 0.0, 1.0);
    acc += logit_log_jacobian(z[2], priors_.lambda_lo, priors_.lambda_hi);
    acc += logit_log_jacobian(z[3], priors_.rho_lo, priors_.rho_hi);
    acc += logit_log_jacobian(z[4], priors_.nu_lo, priors_.nu_hi);
    acc += jac(z[5], priors_.gamma_lo, priors_.gamma_hi);
    acc += jac(z[6], priors_.b1_lo, priors_.b1_hi);
    acc += jac(z[7], 0.0, priors_.sigma_upper);
    if (!homoscedastic_) {
        acc += logit_log_jacobian(z[8], priors_.tau_lo, priors_.tau_hi);
        acc += jac(z[9], 0.0, priors_.xi_upper);
    }
    return acc;
}

// ---- SgtCodec ---------------------------------------------------------------

SgtCodec::SgtCodec(const PriorConfig& priors, double y1, int m)
    : priors_(priors), y1_(y1), m_(m) {
    if (m < 2) throw std::invalid_argument("SgtCodec: seasonal period must exceed 1");
    names_ = {"alpha", "zeta", "rho", "nu", "gamma", "sigma", "tau", "xi"};
    for (int i = 0; i + 1 < m; ++i)
        names_.push_back("s_free_" + std::to_string(i + 1));
}

std::vector<double> SgtCodec::encode(const SgtParams& p) const {
    std::vector<double> z;
    z.reserve(names_.size());
    z.push_back(logit_in(p.alpha, 0.0, 1.0));
    z.push_back(logit_in(p.zeta, 0.0, 1.0));
    z.push_back(logit_in(p.rho, priors_.rho_lo, priors_.rho_hi));
    z.push_back(logit_in(p.nu, priors_.nu_lo, priors_.nu_hi));
    z.push_back(enc(p.gamma, priors_.gamma_lo, priors_.gamma_hi));
    z.push_back(enc(p.sigma, 0.0, priors_.sigma_upper));
    z.push_back(logit_in(p.tau, priors_.tau_lo, priors_.tau_hi));
    z.push_back(enc(p.xi, 0.0, priors_.xi_upper));
    const auto zf = seasonal_to_free(p.s_init);
    z.insert(z.end(), zf.begin(), zf.end());
    return z;
}

SgtParams SgtCodec::decode(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != dim())
        throw std::invalid_argument("SgtCodec::decode: wrong dimension");
    check_finite(z, "SgtCodec::decode");
    SgtParams p;
    p.alpha = logit_out(z[0], 0.0, 1.0);
    p.zeta = logit_out(z[1], 0.0, 1.0);
    p.rho = logit_out(z[2], priors_.rho_lo, priors_.rho_hi);
    p.nu = logit_out(z[3], priors_.nu_lo, priors_.nu_hi);
    p.gamma = dec(z[4], priors_.gamma_lo, priors_.gamma_hi);
    p.sigma = dec(z[5], 0.0, priors_.sigma_upper);
    p.tau = logit_out(z[6], priors_.tau_lo, priors_.tau_hi);
    p.xi = dec(z[7], 0.0, priors_.xi_upper);
    p.s_init = seasonal_from_free({z.begin() + 8, z.end()});
    p.l1 = y1_ / p.s_init[0];
    return p;
}

double SgtCodec::log_jacobian(const std::vector<double>& z) const {
    double acc = 0.0;
    acc += logit_log_jacobian(z[0], 0.0, 1.0);
    acc += logit_log_jacobian(z[1], 0.0, 1.0);
    acc += logit_log_jacobian(z[2], priors_.rho_lo, priors_.rho_hi);
    acc += logit_log_jacobian(z[3], priors_.nu_lo, priors_.nu_hi);
    acc += jac(z[4], priors_.gamma_lo, priors_.gamma_hi);
    acc += jac(z[5], 0.0, priors_.sigma_upper);
    acc += logit_log_jacobian(z[6], priors_.tau_lo, priors_.tau_hi);
    acc += jac(z[7], 0.0, priors_.xi_upper);
    acc += seasonal_log_jacobian(seasonal_from_free({z.begin() + 8, z.end()}));
    return acc;
}

}  // namespace lgt
