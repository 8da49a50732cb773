#include "lgt/mcmc.hpp"

#include "lgt/dist.hpp"
#include "lgt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lgt::mcmc {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kChainTag = 0x4d5747u;

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(std::span<const double> v, double m) {
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

}  // namespace

SamplerConfig::SamplerConfig() {
    rho_grid.resize(31);
    for (int i = 0; i < 31; ++i) rho_grid[i] = -0.5 + 1.5 * i / 30.0;
}

void SamplerConfig::validate() const {
    if (n_chains < 1) throw std::invalid_argument("sampler: n_chains must be >= 1");
    if (n_iter < 1) throw std::invalid_argument("sampler: n_iter must be >= 1");
    if (n_burn < 0 || n_burn >= n_iter)
        throw std::invalid_argument("sampler: need 0 <= n_burn < n_iter");
    if (thin < 1) throw std::invalid_argument("sampler: thin must be >= 1");
    if (!(target_accept > 0.0 && target_accept < 1.0))
        throw std::invalid_argument("sampler: target_accept must be in (0,1)");
    if (nu_grid.empty() || rho_grid.empty())
        throw std::invalid_argument("sampler: grids must be non-empty");
    if (!std::is_sorted(nu_grid.begin(), nu_grid.end()) ||
        !std::is_sorted(rho_grid.begin(), rho_grid.end()))
        throw std::invalid_argument("sampler: grids must be ascending");
}

int grid_sample_index(Rng& rng, std::span<const double> log_weights) {
    if (log_weights.empty()) throw std::invalid_argument("grid_sample: empty grid");
    double best = -kInf;
    for (double w : log_weights) best = std::max(best, w);
    if (best == -kInf) throw std::runtime_error("grid_sample: all weights are -inf");
    double total = 0.0;
    for (double w : log_weights) total += std::exp(w - best);
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    for (size_t i = 0; i < log_weights.size(); ++i) {
        acc += std::exp(log_weights[i] - best);
        if (u <= acc) return static_cast<int>(i);
    }
    return static_cast<int>(log_weights.size()) - 1;
}

double grid_sample(Rng& rng, std::span<const double> grid,
                   std::span<const double> log_weights) {
    if (grid.size() != log_weights.size())
        throw std::invalid_argument("grid_sample: grid/weight size mismatch");
    return grid[grid_sample_index(rng, log_weights)];
}

// ---- AdaptiveRwmChain -------------------------------------------------------

AdaptiveRwmChain::AdaptiveRwmChain(std::function<double(const std::vector<double>&)> log_target,
                                   std::vector<double> init,
                                   std::vector<double> init_scales,
                                   RwmOptions opts, Rng rng)
    : log_target_(std::move(log_target)),
      x_(std::move(init)),
      opts_(opts),
      rng_(rng) {
    log_scales_.resize(x_.size());
    for (size_t j = 0; j < x_.size(); ++j)
        log_scales_[j] = std::log(std::max(init_scales[j], 1e-8));
    proposal_count_.assign(x_.size(), 0);
    fx_ = log_target_(x_);
    if (!std::isfinite(fx_))
        throw std::runtime_error("AdaptiveRwmChain: non-finite target at init");
}

void AdaptiveRwmChain::sweep() {
    std::vector<double> prop = x_;
    for (size_t j = 0; j < x_.size(); ++j) {
        const double scale = std::exp(log_scales_[j]);
        prop[j] = x_[j] + scale * dist::sample_normal(rng_, 0.0, 1.0);
        const double fp = log_target_(prop);
        const bool accept = std::isfinite(fp) &&
                            std::log(rng_.uniform01()) < fp - fx_;
        if (accept) {
            x_[j] = prop[j];
            fx_ = fp;
        } else {
            prop[j] = x_[j];
        }
        ++proposal_count_[j];
        if (adapting_) {
            const double k = static_cast<double>(proposal_count_[j]);
            const double step = opts_.adapt_c / std::pow(k, opts_.adapt_decay);
            log_scales_[j] += step * ((accept ? 1.0 : 0.0) - opts_.target_accept);
        } else {
            ++frozen_props_;
            frozen_accepts_ += accept ? 1 : 0;
        }
    }
}

double AdaptiveRwmChain::frozen_accept_rate() const {
    return frozen_props_ == 0 ? 0.0
                              : static_cast<double>(frozen_accepts_) / frozen_props_;
}

// ---- fit_mwg ----------------------------------------------------------------

namespace {

std::vector<double> data_driven_init_lgt(const TimeSeries& series,
                                         const PriorConfig& priors,
                                         const LgtCodec& codec, bool homoscedastic) {
    const auto& y = series.values;
    LgtParams p;
    p.alpha = 0.3;
    p.beta = 0.3;
    p.lambda = std::clamp(0.5, priors.lambda_lo + 1e-3, priors.lambda_hi - 1e-3);
    p.rho = std::clamp(0.25, priors.rho_lo + 1e-3, priors.rho_hi - 1e-3);
    p.nu = std::clamp(6.0, priors.nu_lo + 1e-3, priors.nu_hi - 1e-3);
    p.gamma = std::clamp(0.0, priors.gamma_lo, priors.gamma_hi);
    const int k = std::min<int>(5, series.n() - 1);
    double b0 = 0.0;
    for (int i = 0; i < k; ++i) b0 += y[i + 1] - y[i];
    p.b1 = std::clamp(b0 / k, priors.b1_lo, priors.b1_hi);
    p.sigma = std::min(std::isfinite(priors.sigma_scale) ? priors.sigma_scale : 1.0,
                       0.5 * priors.sigma_upper);
    if (homoscedastic) {
        p.tau = 0.0;
        p.xi = 0.0;
    } else {
        p.tau = std::clamp(0.3, priors.tau_lo + 1e-3, priors.tau_hi - 1e-3);
        p.xi = std::min(priors.xi_scale, 0.5 * priors.xi_upper);
    }
    p.l1 = y[0];
    return codec.encode(p);
}

std::vector<double> data_driven_init_sgt(const TimeSeries& series,
                                         const PriorConfig& priors,
                                         const SgtCodec& codec) {
    const auto& y = series.values;
    const int m = series.frequency;
    SgtParams p;
    p.alpha = 0.3;
    p.zeta = 0.3;
    p.rho = std::clamp(0.25, priors.rho_lo + 1e-3, priors.rho_hi - 1e-3);
    p.nu = std::clamp(6.0, priors.nu_lo + 1e-3, priors.nu_hi - 1e-3);
    p.gamma = std::clamp(0.0, priors.gamma_lo, priors.gamma_hi);
    p.sigma = std::min(std::isfinite(priors.sigma_scale) ? priors.sigma_scale : 1.0,
                       0.5 * priors.sigma_upper);
    p.tau = std::clamp(0.3, priors.tau_lo + 1e-3, priors.tau_hi - 1e-3);
    p.xi = std::min(priors.xi_scale, 0.5 * priors.xi_upper);
    // First-cycle ratios renormalised to mean one.
    double l0 = 0.0;
    for (int i = 0; i < m; ++i) l0 += y[i];
    l0 /= m;
    p.s_init.resize(m);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        p.s_init[i] = std::max(y[i] / std::max(l0, 1e-12), 1e-6);
        total += p.s_init[i];
    }
    for (double& s : p.s_init) s *= m / total;
    p.l1 = y[0] / p.s_init[0];
    return codec.encode(p);
}

}  // namespace

PosteriorDraws fit_mwg(const TimeSeries& series, ModelKind kind,
                       const PriorConfig& priors_in, const SamplerConfig& config,
                       bool homoscedastic) {
    config.validate();
    series.validate();
    const PriorConfig priors = priors_in.is_resolved() ? priors_in
                                                       : priors_in.resolved_for(series);
    if (kind == ModelKind::sgt && series.frequency < 2)
        throw std::invalid_argument("fit_mwg: SGT needs seasonal frequency > 1");

    const auto& y = series.values;
    const int m = series.frequency;

    // Codec plus target over unconstrained coordinates.
    const LgtCodec lgt_codec(priors, y[0], homoscedastic);
    const SgtCodec sgt_codec = kind == ModelKind::sgt
                                   ? SgtCodec(priors, y[0], m)
                                   : SgtCodec(priors, 1.0, 2);

    auto log_target = [&](const std::vector<double>& z) -> double {
        try {
            if (kind == ModelKind::lgt) {
                const LgtParams p = lgt_codec.decode(z);
                const double lp = lgt_log_prior(p, priors);
                if (lp == -kInf) return -kInf;
                return lgt_forward(y, p).loglik + lp + lgt_codec.log_jacobian(z);
            }
            const SgtParams p = sgt_codec.decode(z);
            const double lp = sgt_log_prior(p, priors);
            if (lp == -kInf) return -kInf;
            return sgt_forward(y, p).loglik + lp + sgt_codec.log_jacobian(z);
        } catch (const std::exception&) {
            return -kInf;
        }
    };

    const int dim = kind == ModelKind::lgt ? lgt_codec.dim() : sgt_codec.dim();
    std::vector<double> init_scales(dim, 0.5);

    PosteriorDraws out;
    out.kind = kind;

    RwmOptions rwm;
    rwm.target_accept = config.target_accept;

    for (int c = 0; c < config.n_chains; ++c) {
        Rng rng = Rng::stream(config.seed, kChainTag, static_cast<std::uint64_t>(c));

        // Initial point: data-driven first, then prior redraws.
        std::vector<double> init = kind == ModelKind::lgt
                                       ? data_driven_init_lgt(series, priors, lgt_codec, homoscedastic)
                                       : data_driven_init_sgt(series, priors, sgt_codec);
        int tries = 0;
        while (!std::isfinite(log_target(init))) {
            if (++tries > 100)
                throw std::runtime_error("fit_mwg: no finite initial target after 100 prior draws");
            if (kind == ModelKind::lgt)
                init = lgt_codec.encode(sample_lgt_prior(rng, priors, y[0], homoscedastic));
            else
                init = sgt_codec.encode(sample_sgt_prior(rng, priors, y[0], m));
        }

        AdaptiveRwmChain chain(log_target, init, init_scales, rwm, rng);
        for (int it = 1; it <= config.n_iter; ++it) {
            if (it == config.n_burn + 1) chain.freeze_adaptation();
            chain.sweep();
            if (it > config.n_burn && (it - config.n_burn) % config.thin == 0) {
                if (kind == ModelKind::lgt)
                    out.lgt.push_back(lgt_codec.decode(chain.state()));
                else
                    out.sgt.push_back(sgt_codec.decode(chain.state()));
                out.chain.push_back(c);
                out.iteration.push_back(it);
            }
        }
        if (chain.frozen_accept_rate() < 0.01)
            throw std::runtime_error("fit_mwg: chain " + std::to_string(c) +
                                     " rejected essentially all moves after burn-in");
    }
    return out;
}

// ---- diagnostics ------------------------------------------------------------

namespace {

/// Between/within variance ratio over the given sequences.
double rhat_of(const std::vector<std::vector<double>>& seqs) {
    const double n = static_cast<double>(seqs[0].size());
    std::vector<double> means(seqs.size());
    double w = 0.0;
    for (size_t i = 0; i < seqs.size(); ++i) {
        means[i] = mean_of(seqs[i]);
        w += var_of(seqs[i], means[i]);
    }
    w /= static_cast<double>(seqs.size());
    const double grand = mean_of(means);
    double b = 0.0;
    for (double mn : means) b += (mn - grand) * (mn - grand);
    b *= n / (static_cast<double>(seqs.size()) - 1.0);
    if (w <= 0.0) return 1.0;
    const double var_plus = (n - 1.0) / n * w + b / n;
    return std::sqrt(var_plus / w);
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
    // Rank normalisation bounds the statistic (two fully separated
    // chains cap near 1.8), so the raw-scale ratio is kept alongside and
    // the larger of the two is reported.
    std::vector<std::vector<double>> halves;
    size_t min_len = std::numeric_limits<size_t>::max();
    for (const auto& c : chains) min_len = std::min(min_len, c.size());
    const size_t half = min_len / 2;
    if (chains.size() < 2 || half < 2)
        throw std::invalid_argument("split_rhat: need >= 2 chains of usable length");
    for (const auto& c : chains) {
        halves.emplace_back(c.begin(), c.begin() + half);
        halves.emplace_back(c.begin() + half, c.begin() + 2 * half);
    }

    // Average ranks across all values.
    struct Entry {
        double v;
        size_t chain, pos;
    };
    std::vector<Entry> all;
    for (size_t i = 0; i < halves.size(); ++i)
        for (size_t j = 0; j < halves[i].size(); ++j)
            all.push_back({halves[i][j], i, j});
    std::sort(all.begin(), all.end(),
              [](const Entry& a, const Entry& b) { return a.v < b.v; });
    const double S = static_cast<double>(all.size());
    std::vector<std::vector<double>> z(halves.size(), std::vector<double>(half));
    for (size_t i = 0; i < all.size();) {
        size_t j = i;
        while (j < all.size() && all[j].v == all[i].v) ++j;
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        const double u = (rank - 0.375) / (S + 0.25);
        const double zz = dist::normal_quantile(u, 0.0, 1.0);
        for (size_t k = i; k < j; ++k) z[all[k].chain][all[k].pos] = zz;
        i = j;
    }

    return std::max(rhat_of(z), rhat_of(halves));
}

double effective_sample_size(const std::vector<std::vector<double>>& chains) {
    const size_t M = chains.size();
    size_t N = std::numeric_limits<size_t>::max();
    for (const auto& c : chains) N = std::min(N, c.size());
    if (M < 1 || N < 4)
        throw std::invalid_argument("effective_sample_size: chains too short");

    std::vector<double> means(M), vars(M);
    for (size_t m = 0; m < M; ++m) {
        means[m] = mean_of({chains[m].data(), N});
        vars[m] = var_of({chains[m].data(), N}, means[m]);
    }
    double w = mean_of(means);
    double W = 0.0;
    for (double v : vars) W += v;
    W /= static_cast<double>(M);
    double B = 0.0;
    if (M > 1) {
        for (double mn : means) B += (mn - w) * (mn - w);
        B *= static_cast<double>(N) / (static_cast<double>(M) - 1.0);
    }
    const double n = static_cast<double>(N);
    const double var_plus = (n - 1.0) / n * W + (M > 1 ? B / n : W / n);
    if (var_plus <= 0.0) return static_cast<double>(M * N);

    // Combined autocorrelations, truncated at the first negative pair sum.
    auto acov = [&](size_t m, size_t t) {
        double acc = 0.0;
        for (size_t i = 0; i + t < N; ++i)
            acc += (chains[m][i] - means[m]) * (chains[m][i + t] - means[m]);
        return acc / static_cast<double>(N);
    };

    double tau = 1.0;
    double prev_pair = kInf;
    for (size_t t = 1; t + 1 < N; t += 2) {
        double rho_t = 0.0, rho_t1 = 0.0;
        for (size_t m = 0; m < M; ++m) {
            rho_t += acov(m, t);
            rho_t1 += acov(m, t + 1);
        }
        rho_t = 1.0 - (W - rho_t / static_cast<double>(M)) / var_plus;
        rho_t1 = 1.0 - (W - rho_t1 / static_cast<double>(M)) / var_plus;
        double pair = rho_t + rho_t1;
        if (pair < 0.0) break;
        pair = std::min(pair, prev_pair);  // enforce monotone decrease
        prev_pair = pair;
        tau += 2.0 * pair;
    }
    return static_cast<double>(M) * n / tau;
}

std::vector<std::string> param_names(ModelKind kind, int m, bool homoscedastic) {
    if (kind == ModelKind::lgt) {
        std::vector<std::string> names = {"alpha", "beta", "lambda", "rho",
                                          "nu", "gamma", "b1", "sigma"};
        if (!homoscedastic) {
            names.push_back("tau");
            names.push_back("xi");
        }
        return names;
    }
    std::vector<std::string> names = {"alpha", "zeta", "rho", "nu",
                                      "gamma", "sigma", "tau", "xi"};
    for (int i = 1; i <= m; ++i) names.push_back("s_" + std::to_string(i));
    return names;
}

std::vector<double> flatten_params(const LgtParams& p, bool homoscedastic) {
    std::vector<double> v = {p.alpha, p.beta, p.lambda, p.rho,
                             p.nu, p.gamma, p.b1, p.sigma};
    if (!homoscedastic) {
        v.push_back(p.tau);
        v.push_back(p.xi);
    }
    return v;
}

std::vector<double> flatten_params(const SgtParams& p) {
    std::vector<double> v = {p.alpha, p.zeta, p.rho, p.nu,
                             p.gamma, p.sigma, p.tau, p.xi};
    v.insert(v.end(), p.s_init.begin(), p.s_init.end());
    return v;
}

std::vector<ParamDiagnostics> diagnostics(const PosteriorDraws& draws) {
    int n_chains = 0;
    for (int c : draws.chain) n_chains = std::max(n_chains, c + 1);
    if (n_chains < 2) throw std::invalid_argument("diagnostics: need >= 2 chains");

    const bool homosced =
        draws.kind == ModelKind::lgt && !draws.lgt.empty() &&
        draws.lgt.front().tau == 0.0 && draws.lgt.front().xi == 0.0;
    const int m = draws.kind == ModelKind::sgt && !draws.sgt.empty()
                      ? static_cast<int>(draws.sgt.front().s_init.size())
                      : 1;
    const auto names = param_names(draws.kind, m, homosced);

    // Per-chain per-parameter sequences.
    std::vector<std::vector<std::vector<double>>> seq(
        names.size(), std::vector<std::vector<double>>(n_chains));
    for (size_t i = 0; i < draws.size(); ++i) {
        const auto v = draws.kind == ModelKind::lgt
                           ? flatten_params(draws.lgt[i], homosced)
                           : flatten_params(draws.sgt[i]);
        for (size_t j = 0; j < names.size(); ++j)
            seq[j][draws.chain[i]].push_back(v[j]);
    }
    for (const auto& per_chain : seq[0])
        if (per_chain.size() < 100)
            throw std::invalid_argument("diagnostics: need >= 100 draws per chain");

    std::vector<ParamDiagnostics> out(names.size());
    for (size_t j = 0; j < names.size(); ++j) {
        out[j].name = names[j];
        std::vector<double> pooled;
        for (const auto& c : seq[j]) pooled.insert(pooled.end(), c.begin(), c.end());
        out[j].mean = mean_of(pooled);
        out[j].sd = std::sqrt(std::max(var_of(pooled, out[j].mean), 0.0));
        if (out[j].sd < 1e-300) {
            // Constant parameter (e.g. pinned tau); R-hat is vacuous.
            out[j].rhat = 1.0;
            out[j].ess = static_cast<double>(pooled.size());
            continue;
        }
        out[j].rhat = split_rhat(seq[j]);
        out[j].ess = effective_sample_size(seq[j]);
    }
    return out;
}

}  // namespace lgt::mcmc
