#include "lgt/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace lgt {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start,
                          const std::vector<double>& steps,
                          const SimplexOptions& opts) {
    const int n = static_cast<int>(start.size());
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 400 * n;

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += steps[i];

    SimplexResult res;
    for (int i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
        ++res.evaluations;
    }

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        // Order: best first, worst last.
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return vals[a] < vals[b]; });
        {
            std::vector<std::vector<double>> p2(n + 1);
            std::vector<double> v2(n + 1);
            for (int i = 0; i <= n; ++i) {
                p2[i] = pts[idx[i]];
                v2[i] = vals[idx[i]];
            }
            pts.swap(p2);
            vals.swap(v2);
        }

        const double spread = std::fabs(vals[n] - vals[0]);
        double diam = 0.0;
        for (int i = 0; i < n; ++i)
            diam = std::max(diam, std::fabs(pts[n][i] - pts[0][i]));
        if (spread <= opts.f_tol * (1.0 + std::fabs(vals[0])) && diam <= opts.x_tol) {
            res.converged = true;
            break;
        }

        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += pts[i][j];
            centroid[j] = acc / n;
        }

        auto along = [&](double coef, std::vector<double>& out) {
            for (int j = 0; j < n; ++j)
                out[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
        };

        along(-1.0, xr);
        const double fr = f(xr);
        ++res.evaluations;
        if (fr < vals[0]) {
            along(-2.0, xe);
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if (fr < vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        along(fr < vals[n] ? -0.5 : 0.5, xc);
        const double fc = f(xc);
        ++res.evaluations;
        if (fc < std::min(fr, vals[n])) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        // Shrink toward the best point.
        for (int i = 1; i <= n; ++i) {
            for (int j = 0; j < n; ++j)
                pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
            vals[i] = f(pts[i]);
            ++res.evaluations;
        }
    }

    const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

}  // namespace lgt
