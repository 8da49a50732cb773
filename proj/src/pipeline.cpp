#include "lgt/pipeline.hpp"

#include "lgt/csv.hpp"
#include "lgt/ets.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lgt::pipeline {

namespace {

void subtract_offset(ForecastDistribution& dist, double offset) {
    if (offset == 0.0) return;
    for (auto& row : dist.quantiles)
        for (double& v : row) v -= offset;
    for (double& v : dist.mean) v -= offset;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ModelChoice parse_model(const std::string& name) {
    if (name == "auto") return ModelChoice::automatic;
    if (name == "lgt") return ModelChoice::lgt;
    if (name == "sgt") return ModelChoice::sgt;
    if (name == "ets-aadn") return ModelChoice::ets_aadn;
    if (name == "ets-hw") return ModelChoice::ets_hw;
    throw std::invalid_argument("unknown model '" + name + "'");
}

Backend parse_backend(const std::string& name) {
    if (name == "mwg") return Backend::mwg;
    if (name == "gibbs") return Backend::gibbs;
    throw std::invalid_argument("unknown backend '" + name + "'");
}

std::string model_label(ModelChoice resolved) {
    switch (resolved) {
        case ModelChoice::lgt: return "lgt";
        case ModelChoice::sgt: return "sgt";
        case ModelChoice::ets_aadn: return "ets-aadn";
        case ModelChoice::ets_hw: return "ets-hw";
        default: return "auto";
    }
}

ModelChoice resolve_model(ModelChoice choice, int frequency) {
    if (choice == ModelChoice::automatic)
        return frequency > 1 ? ModelChoice::sgt : ModelChoice::lgt;
    if (choice == ModelChoice::sgt && frequency < 2)
        throw std::invalid_argument("sgt requires a seasonal series (frequency > 1)");
    if (choice == ModelChoice::ets_hw && frequency < 2)
        throw std::invalid_argument("ets-hw requires a seasonal series (frequency > 1)");
    return choice;
}

FitResult fit_series(const TimeSeries& raw, ModelChoice resolved, Backend backend,
                     const mcmc::SamplerConfig& config, const PriorConfig& priors) {
    FitResult out;
    const PositiveShift shifted = ensure_positive(raw);
    out.offset = shifted.offset;
    switch (resolved) {
        case ModelChoice::lgt:
            out.draws = backend == Backend::gibbs
                            ? mcmc::fit_gibbs_lgt(shifted.series, priors, config)
                            : mcmc::fit_mwg(shifted.series, ModelKind::lgt, priors, config);
            break;
        case ModelChoice::sgt:
            if (backend == Backend::gibbs)
                throw std::invalid_argument(
                    "the gibbs backend supports non-seasonal models only");
            out.draws = mcmc::fit_mwg(shifted.series, ModelKind::sgt, priors, config);
            break;
        default:
            throw std::invalid_argument("fit_series: not a posterior-sampled model");
    }
    return out;
}

ForecastDistribution forecast_from_draws(const TimeSeries& raw, const FitResult& fit,
                                         int n_paths, std::uint64_t seed,
                                         const std::vector<double>& levels,
                                         int n_threads) {
    const PositiveShift shifted = ensure_positive(raw);
    const auto& y = shifted.series.values;

    // Pin the initial level to the (shifted) first observation; stored
    // draws do not carry l1.
    mcmc::PosteriorDraws draws = fit.draws;
    if (draws.kind == ModelKind::lgt) {
        for (auto& p : draws.lgt) p.l1 = y[0];
    } else {
        for (auto& p : draws.sgt) p.l1 = y[0] / p.s_init[0];
    }

    const auto states = engine::final_states(y, draws);
    const auto paths = engine::simulate_paths(draws, states, raw.horizon, n_paths,
                                              seed, n_threads);
    ForecastDistribution dist = aggregate_quantiles(paths, levels);
    subtract_offset(dist, fit.offset);
    return dist;
}

eval::Forecaster make_forecaster(const PipelineOptions& opts) {
    return [opts](const TimeSeries& train, std::uint64_t seed) -> eval::SeriesForecast {
        const ModelChoice resolved = resolve_model(opts.model, train.frequency);
        eval::SeriesForecast out;
        out.model = model_label(resolved);

        if (resolved == ModelChoice::ets_aadn || resolved == ModelChoice::ets_hw) {
            const bool seasonal = resolved == ModelChoice::ets_hw;
            const PositiveShift shifted = ensure_positive(train);
            const ets::EtsParams params =
                ets::mle_fit_ets(shifted.series, seasonal, opts.ets_opts);
            const auto filt = seasonal
                                  ? ets::hw_mult_filter(shifted.series.values, params)
                                  : ets::aadn_filter(shifted.series.values, params);
            out.dist = ets::ets_simulate_intervals(filt.state, params, seasonal,
                                                   train.horizon, opts.n_paths, seed,
                                                   opts.levels);
            subtract_offset(out.dist, shifted.offset);
            return out;
        }

        mcmc::SamplerConfig config = opts.sampler;
        config.seed = seed;
        const FitResult fit = fit_series(train, resolved, opts.backend, config,
                                         opts.priors);
        out.dist = forecast_from_draws(train, fit, opts.n_paths, seed, opts.levels,
                                       opts.n_threads);
        return out;
    };
}

std::string draws_to_csv(const FitResult& fit) {
    std::ostringstream out;
    out << "# offset=" << format_double(fit.offset) << "\n";
    const auto& d = fit.draws;
    const bool homosced = d.kind == ModelKind::lgt && !d.lgt.empty() &&
                          d.lgt.front().tau == 0.0 && d.lgt.front().xi == 0.0;
    const int m = d.kind == ModelKind::sgt && !d.sgt.empty()
                      ? static_cast<int>(d.sgt.front().s_init.size())
                      : 1;
    const auto names = mcmc::param_names(d.kind, m, homosced);
    out << "chain,iteration";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (size_t i = 0; i < d.size(); ++i) {
        out << d.chain[i] << ',' << d.iteration[i];
        const auto v = d.kind == ModelKind::lgt
                           ? mcmc::flatten_params(d.lgt[i], homosced)
                           : mcmc::flatten_params(d.sgt[i]);
        for (double x : v) out << ',' << format_double(x);
        out << '\n';
    }
    return out.str();
}

FitResult draws_from_csv(const std::string& content) {
    FitResult out;
    std::istringstream in(content);
    std::string line;

    if (!std::getline(in, line) || line.rfind("# offset=", 0) != 0)
        throw std::runtime_error("draws file: missing offset line");
    out.offset = std::strtod(line.c_str() + 9, nullptr);

    if (!std::getline(in, line))
        throw std::runtime_error("draws file: missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "chain" || header[1] != "iteration")
        throw std::runtime_error("draws file: bad header");
    const std::vector<std::string> cols(header.begin() + 2, header.end());

    const bool is_sgt = cols.size() > 2 && cols[1] == "zeta";
    int m = 0;
    if (is_sgt)
        for (const auto& c : cols)
            if (c.rfind("s_", 0) == 0) ++m;
    const bool homosced = !is_sgt && cols.size() == 8;
    out.draws.kind = is_sgt ? ModelKind::sgt : ModelKind::lgt;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != cols.size() + 2)
            throw std::runtime_error("draws file: row width mismatch");
        out.draws.chain.push_back(std::stoi(f[0]));
        out.draws.iteration.push_back(std::stoi(f[1]));
        std::vector<double> v(cols.size());
        for (size_t j = 0; j < cols.size(); ++j) v[j] = std::strtod(f[j + 2].c_str(), nullptr);
        if (!is_sgt) {
            LgtParams p;
            p.alpha = v[0];
            p.beta = v[1];
            p.lambda = v[2];
            p.rho = v[3];
            p.nu = v[4];
            p.gamma = v[5];
            p.b1 = v[6];
            p.sigma = v[7];
            p.tau = homosced ? 0.0 : v[8];
            p.xi = homosced ? 0.0 : v[9];
            out.draws.lgt.push_back(p);
        } else {
            SgtParams p;
            p.alpha = v[0];
            p.zeta = v[1];
            p.rho = v[2];
            p.nu = v[3];
            p.gamma = v[4];
            p.sigma = v[5];
            p.tau = v[6];
            p.xi = v[7];
            p.s_init.assign(v.begin() + 8, v.end());
            out.draws.sgt.push_back(p);
        }
    }
    if (out.draws.size() == 0) throw std::runtime_error("draws file: no draws");
    return out;
}

}  // namespace lgt::pipeline
