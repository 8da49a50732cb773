#pragma once

#include "lgt/rng.hpp"

namespace lgt::dist {

// ---- log densities -------------------------------------------------------

/// Location-scale Student-t log density. nu > 0, scale > 0.
double student_t_logpdf(double x, double nu, double loc, double scale);

double normal_logpdf(double x, double mean, double sd);

double cauchy_logpdf(double x, double loc, double scale);

/// Density of |C(0, scale)| on (0, inf).
double half_cauchy_logpdf(double x, double scale);

/// log x ~ Cauchy(loc, scale); density on (0, inf).
double log_cauchy_logpdf(double x, double loc, double scale);

double beta_logpdf(double x, double a, double b);

/// Density proportional to x^(-a-1) exp(-b/x) on (0, inf).
double inverse_gamma_logpdf(double x, double shape, double rate);

double uniform_logpdf(double x, double lo, double hi);

// ---- cumulative / quantile ------------------------------------------------

double normal_cdf(double x, double mean, double sd);
double normal_quantile(double p, double mean, double sd);

/// CDF of the inverse gamma above (used by tests and truncated sampling).
double inverse_gamma_cdf(double x, double shape, double rate);

// ---- samplers --------------------------------------------------------------
// All samplers validate their parameters and throw std::invalid_argument.

double sample_normal(Rng& rng, double mean, double sd);
double sample_gamma(Rng& rng, double shape, double rate);
double sample_inverse_gamma(Rng& rng, double shape, double rate);
double sample_beta(Rng& rng, double a, double b);
double sample_cauchy(Rng& rng, double loc, double scale);
double sample_half_cauchy(Rng& rng, double scale);
double sample_log_cauchy(Rng& rng, double loc, double scale);
double sample_student_t(Rng& rng, double nu);

/// N(mean, sd^2) conditioned on [lower, upper]; bounds may be infinite.
/// Uses inverse-CDF in the bulk and an exponential-proposal rejection
/// step for far-tail truncation, where the inverse CDF runs out of
/// precision.
double sample_truncated_normal(Rng& rng, double mean, double sd,
                               double lower, double upper);

/// Inverse gamma conditioned on (0, upper].
double sample_truncated_inverse_gamma(Rng& rng, double shape, double rate,
                                      double upper);

}  // namespace lgt::dist
