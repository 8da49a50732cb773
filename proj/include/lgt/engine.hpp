#pragma once

#include "lgt/forecast.hpp"
#include "lgt/mcmc.hpp"
#include "lgt/model.hpp"

#include <cstdint>
#include <vector>

namespace lgt::engine {

/// Filtered state at the end of the training sample, per posterior draw:
/// final level and local trend, and for SGT the frozen factors for
/// forecast steps 1..m.
struct FinalState {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonal;
};

FinalState final_state(const ForwardPass& fp, ModelKind kind, int m);

/// Forward passes for every draw; states[i] belongs to draw i.
std::vector<FinalState> final_states(const std::vector<double>& y,
                                     const mcmc::PosteriorDraws& draws);

/// Simulates n_paths forecast trajectories of length h. Path p uses
/// posterior draw p mod n_draws; per step the error is t(nu, 0,
/// sigma_hat) with the heteroscedastic scale evaluated at the current
/// prediction, simulated values and levels are floored at 0.001, and the
/// filtering recursions evolve the state along the path (SGT seasonal
/// factors stay frozen). Each path owns an independent RNG stream
/// derived from `seed`, so results do not depend on the thread count.
PathMatrix simulate_paths(const mcmc::PosteriorDraws& draws,
                          const std::vector<FinalState>& states, int h,
                          int n_paths, std::uint64_t seed, int n_threads);

/// Serial reference implementation; bit-identical to simulate_paths.
PathMatrix simulate_paths_serial(const mcmc::PosteriorDraws& draws,
                                 const std::vector<FinalState>& states, int h,
                                 int n_paths, std::uint64_t seed);

}  // namespace lgt::engine
