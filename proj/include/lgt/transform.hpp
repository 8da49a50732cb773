#pragma once

#include "lgt/model.hpp"

#include <string>
#include <vector>

namespace lgt {

/// Bijection between model parameters and an unconstrained real vector,
/// used by the random-walk sampler. Box-bounded fields map through a
/// scaled logit, positive fields through log, unbounded fields through
/// the identity; the seasonal initials map through a mean-one softmax
/// with m-1 free coordinates. log_jacobian reports
/// log|d(params)/d(coords)| so densities can be carried to coord space.
class LgtCodec {
public:
    LgtCodec(const PriorConfig& priors, double l1, bool homoscedastic);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& coord_names() const { return names_; }

    std::vector<double> encode(const LgtParams& p) const;
    LgtParams decode(const std::vector<double>& z) const;
    double log_jacobian(const std::vector<double>& z) const;

private:
    PriorConfig priors_;
    double l1_;
    bool homoscedastic_;
    std::vector<std::string> names_;
};

class SgtCodec {
public:
    SgtCodec(const PriorConfig& priors, double y1, int m);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& coord_names() const { return names_; }

    std::vector<double> encode(const SgtParams& p) const;
    SgtParams decode(const std::vector<double>& z) const;
    double log_jacobian(const std::vector<double>& z) const;

private:
    PriorConfig priors_;
    double y1_;
    int m_;
    std::vector<std::string> names_;
};

/// Mean-one positive vector from m-1 free coordinates (softmax against a
/// pinned last coordinate, rescaled to mean exactly one). All-zero input
/// maps to all-ones output.
std::vector<double> seasonal_from_free(const std::vector<double>& z);
std::vector<double> seasonal_to_free(const std::vector<double>& s);
double seasonal_log_jacobian(const std::vector<double>& s);

// Scalar helpers shared with the ETS optimiser.
double logit_in(double x, double lo, double hi);
double logit_out(double z, double lo, double hi);
double logit_log_jacobian(double z, double lo, double hi);

}  // namespace lgt
