#pragma once

#include <functional>
#include <vector>

namespace lgt {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

struct SimplexOptions {
    int max_iter = 0;       // 0: 400 * dim
    double f_tol = 1e-10;   // relative spread of simplex values
    double x_tol = 1e-9;    // simplex diameter
};

/// Derivative-free Nelder-Mead minimisation. `steps` gives the initial
/// simplex edge length per coordinate.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start,
                          const std::vector<double>& steps,
                          const SimplexOptions& opts = {});

}  // namespace lgt
