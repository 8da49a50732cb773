#include "lgt/engine.hpp"

#include "lgt/dist.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace lgt::engine {

namespace {

constexpr std::uint64_t kPathTag = 0x504154u;

void simulate_one_path(const mcmc::PosteriorDraws& draws,
                       const std::vector<FinalState>& states, int h,
                       std::uint64_t seed, int path, PathMatrix& out) {
    Rng rng = Rng::stream(seed, kPathTag, static_cast<std::uint64_t>(path));
    const size_t d = static_cast<size_t>(path) % draws.size();
    const FinalState& st = states[d];

    if (draws.kind == ModelKind::lgt) {
        const LgtParams& p = draws.lgt[d];
        double l = std::max(st.level, kLevelFloor), b = st.trend;
        for (int k = 0; k < h; ++k) {
            const double yh = l + p.gamma * std::pow(l, p.rho) + p.lambda * b;
            const double sc = p.sigma * std::pow(std::max(yh, kLevelFloor), p.tau) + p.xi;
            const double ysim = std::max(yh + sc * dist::sample_student_t(rng, p.nu),
                                         kLevelFloor);
            out.at(path, k) = ysim;
            const double lnext = std::max(p.alpha * ysim + (1.0 - p.alpha) * l,
                                          kLevelFloor);
            b = p.beta * (lnext - l) + (1.0 - p.beta) * b;
            l = lnext;
        }
        return;
    }

    const SgtParams& p = draws.sgt[d];
    const int m = static_cast<int>(st.seasonal.size());
    double l = std::max(st.level, kLevelFloor);
    for (int k = 0; k < h; ++k) {
        const double fac = st.seasonal[k % m];
        const double yh = (l + p.gamma * std::pow(l, p.rho)) * fac;
        const double sc = p.sigma * std::pow(std::max(yh, kLevelFloor), p.tau) + p.xi;
        const double ysim = std::max(yh + sc * dist::sample_student_t(rng, p.nu),
                                     kLevelFloor);
        out.at(path, k) = ysim;
        l = std::max(p.alpha * ysim / fac + (1.0 - p.alpha) * l, kLevelFloor);
    }
}

}  // namespace

FinalState final_state(const ForwardPass& fp, ModelKind kind, int m) {
    FinalState st;
    st.level = fp.levels.back();
    if (kind == ModelKind::lgt) {
        st.trend = fp.trends.back();
    } else {
        st.seasonal.assign(fp.seasonal.end() - m, fp.seasonal.end());
    }
    return st;
}

std::vector<FinalState> final_states(const std::vector<double>& y,
                                     const mcmc::PosteriorDraws& draws) {
    std::vector<FinalState> out(draws.size());
    if (draws.kind == ModelKind::lgt) {
        for (size_t i = 0; i < draws.lgt.size(); ++i)
            out[i] = final_state(lgt_forward(y, draws.lgt[i]), ModelKind::lgt, 1);
    } else {
        for (size_t i = 0; i < draws.sgt.size(); ++i) {
            const int m = static_cast<int>(draws.sgt[i].s_init.size());
            out[i] = final_state(sgt_forward(y, draws.sgt[i]), ModelKind::sgt, m);
        }
    }
    return out;
}

PathMatrix simulate_paths(const mcmc::PosteriorDraws& draws,
                          const std::vector<FinalState>& states, int h,
                          int n_paths, std::uint64_t seed, int n_threads) {
    if (draws.size() == 0) throw std::invalid_argument("simulate_paths: no draws");
    if (states.size() != draws.size())
        throw std::invalid_argument("simulate_paths: draw/state count mismatch");
    if (h < 1 || n_paths < 1)
        throw std::invalid_argument("simulate_paths: need h >= 1 and n_paths >= 1");

    PathMatrix out(n_paths, h);
#pragma omp parallel for schedule(static) num_threads(std::max(n_threads, 1))
    for (int path = 0; path < n_paths; ++path)
        simulate_one_path(draws, states, h, seed, path, out);
    return out;
}

PathMatrix simulate_paths_serial(const mcmc::PosteriorDraws& draws,
                                 const std::vector<FinalState>& states, int h,
                                 int n_paths, std::uint64_t seed) {
    if (draws.size() == 0) throw std::invalid_argument("simulate_paths: no draws");
    if (states.size() != draws.size())
        throw std::invalid_argument("simulate_paths: draw/state count mismatch");
    if (h < 1 || n_paths < 1)
        throw std::invalid_argument("simulate_paths: need h >= 1 and n_paths >= 1");

    PathMatrix out(n_paths, h);
    for (int path = 0; path < n_paths; ++path)
        simulate_one_path(draws, states, h, seed, path, out);
    return out;
}

}  // namespace lgt::engine
