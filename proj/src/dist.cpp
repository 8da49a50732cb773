#include "lgt/dist.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgt::dist {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogPi = 1.1447298858494001741434273513530587;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764;
const double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Standard normal truncated to [lo, inf) with lo far in the upper tail:
// exponential proposal with rate a = (lo + sqrt(lo^2 + 4))/2 (Robert 1995).
double tail_truncated_std_normal(Rng& rng, double lo) {
    const double a = 0.5 * (lo + std::sqrt(lo * lo + 4.0));
    for (;;) {
        const double x = lo - std::log(rng.uniform01()) / a;
        const double d = x - a;
        if (std::log(rng.uniform01()) <= -0.5 * d * d) return x;
    }
}

}  // namespace

double student_t_logpdf(double x, double nu, double loc, double scale) {
    require(nu > 0.0, "student_t_logpdf: nu must be > 0");
    require(scale > 0.0, "student_t_logpdf: scale must be > 0");
    const double z = (x - loc) / scale;
    return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu)
         - 0.5 * std::log(nu) - 0.5 * kLogPi - std::log(scale)
         - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

double normal_logpdf(double x, double mean, double sd) {
    require(sd > 0.0, "normal_logpdf: sd must be > 0");
    const double z = (x - mean) / sd;
    return -0.5 * z * z - std::log(sd) - kLogSqrt2Pi;
}

double cauchy_logpdf(double x, double loc, double scale) {
    require(scale > 0.0, "cauchy_logpdf: scale must be > 0");
    const double z = (x - loc) / scale;
    return -kLogPi - std::log(scale) - std::log1p(z * z);
}

double half_cauchy_logpdf(double x, double scale) {
    require(scale > 0.0, "half_cauchy_logpdf: scale must be > 0");
    if (x < 0.0) return -kInf;
    return std::log(2.0) + cauchy_logpdf(x, 0.0, scale);
}

double log_cauchy_logpdf(double x, double loc, double scale) {
    require(scale > 0.0, "log_cauchy_logpdf: scale must be > 0");
    if (x <= 0.0) return -kInf;
    return cauchy_logpdf(std::log(x), loc, scale) - std::log(x);
}

double beta_logpdf(double x, double a, double b) {
    require(a > 0.0 && b > 0.0, "beta_logpdf: shapes must be > 0");
    if (x <= 0.0 || x >= 1.0) {
        // Degenerate endpoints only matter for a=b=1 style flat priors.
        if (x == 0.0 || x == 1.0) {
            if (a == 1.0 && b == 1.0) return 0.0;
            return -kInf;
        }
        return -kInf;
    }
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x)
         + std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
}

double inverse_gamma_logpdf(double x, double shape, double rate) {
    require(shape > 0.0 && rate > 0.0, "inverse_gamma_logpdf: bad parameters");
    if (x <= 0.0) return -kInf;
    return shape * std::log(rate) - std::lgamma(shape)
         - (shape + 1.0) * std::log(x) - rate / x;
}

double uniform_logpdf(double x, double lo, double hi) {
    require(lo < hi, "uniform_logpdf: lo must be < hi");
    if (x < lo || x > hi) return -kInf;
    return -std::log(hi - lo);
}

double normal_cdf(double x, double mean, double sd) {
    require(sd > 0.0, "normal_cdf: sd must be > 0");
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double normal_quantile(double p, double mean, double sd) {
    require(sd > 0.0 && p > 0.0 && p < 1.0, "normal_quantile: bad parameters");
    static const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
    return mean + sd * boost::math::quantile(std_normal, p);
}

double inverse_gamma_cdf(double x, double shape, double rate) {
    require(shape > 0.0 && rate > 0.0, "inverse_gamma_cdf: bad parameters");
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_q(shape, rate / x);
}

double sample_normal(Rng& rng, double mean, double sd) {
    require(sd > 0.0, "sample_normal: sd must be > 0");
    return normal_quantile(rng.uniform01(), mean, sd);
}

double sample_gamma(Rng& rng, double shape, double rate) {
    require(shape > 0.0 && rate > 0.0, "sample_gamma: bad parameters");
    // Marsaglia-Tsang squeeze; shape < 1 boosted via the power trick.
    double boost_u = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost_u = std::pow(rng.uniform01(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng, 0.0, 1.0);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost_u * d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return boost_u * d * v / rate;
    }
}

double sample_inverse_gamma(Rng& rng, double shape, double rate) {
    require(shape > 0.0 && rate > 0.0, "sample_inverse_gamma: bad parameters");
    return rate / sample_gamma(rng, shape, 1.0);
}

double sample_beta(Rng& rng, double a, double b) {
    require(a > 0.0 && b > 0.0, "sample_beta: shapes must be > 0");
    const double x = sample_gamma(rng, a, 1.0);
    const double y = sample_gamma(rng, b, 1.0);
    return x / (x + y);
}

double sample_cauchy(Rng& rng, double loc, double scale) {
    require(scale > 0.0, "sample_cauchy: scale must be > 0");
    return loc + scale * std::tan(kPi * (rng.uniform01() - 0.5));
}

double sample_half_cauchy(Rng& rng, double scale) {
    require(scale > 0.0, "sample_half_cauchy: scale must be > 0");
    return std::fabs(sample_cauchy(rng, 0.0, scale));
}

double sample_log_cauchy(Rng& rng, double loc, double scale) {
    require(scale > 0.0, "sample_log_cauchy: scale must be > 0");
    // Clamp the log draw so the result stays a normal double.
    double z = sample_cauchy(rng, loc, scale);
    if (z > 700.0) z = 700.0;
    if (z < -700.0) z = -700.0;
    return std::exp(z);
}

double sample_student_t(Rng& rng, double nu) {
    require(nu > 0.0, "sample_student_t: nu must be > 0");
    const double z = sample_normal(rng, 0.0, 1.0);
    const double g = sample_gamma(rng, 0.5 * nu, 0.5);  // chi-squared(nu)
    return z / std::sqrt(g / nu);
}

double sample_truncated_normal(Rng& rng, double mean, double sd,
                               double lower, double upper) {
    require(sd > 0.0, "sample_truncated_normal: sd must be > 0");
    require(lower < upper, "sample_truncated_normal: lower must be < upper");

    const double a = (lower - mean) / sd;
    const double b = (upper - mean) / sd;

    // Far one-sided tails: the inverse CDF is flat to double precision
    // there, so switch to rejection with an exponential proposal.
    constexpr double kTailCut = 6.0;
    if (a > kTailCut && b == kInf)
        return mean + sd * tail_truncated_std_normal(rng, a);
    if (b < -kTailCut && a == -kInf)
        return mean - sd * tail_truncated_std_normal(rng, -b);
    if (a > kTailCut || b < -kTailCut) {
        // Two-sided interval deep in one tail: rejection against the
        // one-sided tail sampler.
        const bool flip = b < -kTailCut;
        const double lo = flip ? -b : a;
        const double hi = flip ? -a : b;
        for (;;) {
            const double x = tail_truncated_std_normal(rng, lo);
            if (x <= hi) return mean + sd * (flip ? -x : x);
        }
    }

    const double Fa = a == -kInf ? 0.0 : normal_cdf(a, 0.0, 1.0);
    const double Fb = b == kInf ? 1.0 : normal_cdf(b, 0.0, 1.0);
    if (Fb - Fa < 1e-14) {
        // Numerically degenerate window; fall back to the nearer bound.
        return mean + sd * (std::fabs(a) < std::fabs(b) ? a : b);
    }
    const double u = Fa + (Fb - Fa) * rng.uniform01();
    double z = normal_quantile(u, 0.0, 1.0);
    if (a != -kInf && z < a) z = a;
    if (b != kInf && z > b) z = b;
    return mean + sd * z;
}

double sample_truncated_inverse_gamma(Rng& rng, double shape, double rate,
                                      double upper) {
    require(shape > 0.0 && rate > 0.0 && upper > 0.0,
            "sample_truncated_inverse_gamma: bad parameters");
    const double f_up = inverse_gamma_cdf(upper, shape, rate);
    if (f_up < 1e-300) return upper;  // essentially all mass above the cut
    const double u = rng.uniform01() * f_up;
    // F(x) = Q(shape, rate/x)  =>  x = rate / Q^{-1}(shape, u)
    const double q = boost::math::gamma_q_inv(shape, u);
    return rate / q;
}

}  // namespace lgt::dist
