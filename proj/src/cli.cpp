#include "lgt/cli.hpp"

#include "lgt/csv.hpp"
#include "lgt/evaluate.hpp"
#include "lgt/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

namespace lgt::cli {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::string output_dir = ".";
    std::string model = "auto";
    std::string backend = "mwg";
    std::string draws_dir;
    int chains = 4;
    int iters = 5000;
    int burn = 2500;
    int thin = 5;
    int paths = 5000;
    int jobs = 1;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string quantiles = "0.01,0.05,0.5,0.95,0.99";
    double target_accept = 0.44;
    std::string nu_grid, rho_grid;  // comma lists; empty keeps defaults
    double phi_lo = 0.80, phi_hi = 0.98;
    bool beta_lt_alpha = false;
    PriorConfig priors;
};

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw std::invalid_argument("bad " + what + " entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_levels(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || !(v > 0.0 && v < 1.0))
            throw std::invalid_argument("bad quantile level '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("no quantile levels given");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw std::invalid_argument("quantile levels must be ascending");
    return out;
}

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_int = [&](int& field) {
        field = std::stoi(value);
    };
    if (key.rfind("prior.", 0) == 0) {
        cfg.priors.apply_key(key, value);
    } else if (key == "input") {
        cfg.input = value;
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "model") {
        cfg.model = value;
    } else if (key == "backend") {
        cfg.backend = value;
    } else if (key == "chains") {
        as_int(cfg.chains);
    } else if (key == "iters") {
        as_int(cfg.iters);
    } else if (key == "burn") {
        as_int(cfg.burn);
    } else if (key == "thin") {
        as_int(cfg.thin);
    } else if (key == "paths") {
        as_int(cfg.paths);
    } else if (key == "jobs") {
        as_int(cfg.jobs);
    } else if (key == "seed") {
        cfg.seed = std::stoull(value);
        cfg.seed_given = true;
    } else if (key == "quantiles") {
        cfg.quantiles = value;
    } else if (key == "target_accept") {
        cfg.target_accept = std::stod(value);
    } else if (key == "nu_grid") {
        cfg.nu_grid = value;
    } else if (key == "rho_grid") {
        cfg.rho_grid = value;
    } else if (key == "phi_lo") {
        cfg.phi_lo = std::stod(value);
    } else if (key == "phi_hi") {
        cfg.phi_hi = std::stod(value);
    } else if (key == "beta_lt_alpha") {
        cfg.beta_lt_alpha = value == "1" || value == "true";
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

pipeline::PipelineOptions make_options(const RunConfig& cfg) {
    pipeline::PipelineOptions opts;
    opts.model = pipeline::parse_model(cfg.model);
    opts.backend = pipeline::parse_backend(cfg.backend);
    opts.sampler.n_chains = cfg.chains;
    opts.sampler.n_iter = cfg.iters;
    opts.sampler.n_burn = cfg.burn;
    opts.sampler.thin = cfg.thin;
    opts.sampler.target_accept = cfg.target_accept;
    opts.sampler.seed = cfg.seed;
    if (!cfg.nu_grid.empty())
        opts.sampler.nu_grid = parse_number_list(cfg.nu_grid, "nu_grid");
    if (!cfg.rho_grid.empty())
        opts.sampler.rho_grid = parse_number_list(cfg.rho_grid, "rho_grid");
    opts.sampler.validate();
    opts.priors = cfg.priors;
    opts.n_paths = cfg.paths;
    opts.n_threads = cfg.jobs;
    opts.levels = parse_levels(cfg.quantiles);
    opts.ets_opts.phi_lo = cfg.phi_lo;
    opts.ets_opts.phi_hi = cfg.phi_hi;
    opts.ets_opts.enforce_beta_lt_alpha = cfg.beta_lt_alpha;
    return opts;
}

std::vector<TimeSeries> load_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw std::invalid_argument("--input is required");
    if (!fs::exists(cfg.input)) throw IoError("cannot read input '" + cfg.input + "'");
    return load_dataset(cfg.input);
}

void ensure_outdir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (!fs::is_directory(cfg.output_dir))
        throw IoError("cannot create output directory '" + cfg.output_dir + "'");
}

std::uint64_t series_seed(std::uint64_t master, size_t index) {
    return Rng::stream(master, 0x455641u, index).next_u64();
}

int cmd_fit(const RunConfig& cfg) {
    const auto opts = make_options(cfg);
    const auto dataset = load_input(cfg);
    ensure_outdir(cfg);

    std::vector<std::string> draw_files(dataset.size());
    std::vector<std::string> diag_rows(dataset.size());
    std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic) num_threads(std::max(cfg.jobs, 1))
    for (int i = 0; i < static_cast<int>(dataset.size()); ++i) {
        try {
            const auto& ts = dataset[i];
            const auto resolved = pipeline::resolve_model(opts.model, ts.frequency);
            mcmc::SamplerConfig sc = opts.sampler;
            sc.seed = series_seed(cfg.seed, i);
            const auto fit = pipeline::fit_series(ts, resolved, opts.backend, sc, opts.priors);
            draw_files[i] = pipeline::draws_to_csv(fit);

            std::ostringstream diag;
            for (const auto& d : mcmc::diagnostics(fit.draws))
                diag << ts.id << ',' << d.name << ',' << format_double(d.mean) << ','
                     << format_double(d.sd) << ',' << format_double(d.rhat) << ','
                     << format_double(d.ess) << '\n';
            diag_rows[i] = diag.str();
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    std::ostringstream diag_all;
    diag_all << "id,param,mean,sd,rhat,ess\n";
    for (size_t i = 0; i < dataset.size(); ++i) {
        write_file_atomic(cfg.output_dir + "/draws_" + dataset[i].id + ".csv",
                          draw_files[i]);
        diag_all << diag_rows[i];
    }
    write_file_atomic(cfg.output_dir + "/diagnostics.csv", diag_all.str());
    std::cout << "fit: wrote " << dataset.size() << " draw files to "
              << cfg.output_dir << "\n";
    return kExitOk;
}

int cmd_forecast(const RunConfig& cfg) {
    const auto opts = make_options(cfg);
    const auto dataset = load_input(cfg);
    ensure_outdir(cfg);

    std::vector<ForecastDistribution> dists(dataset.size());
    std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic) num_threads(std::max(cfg.jobs, 1))
    for (int i = 0; i < static_cast<int>(dataset.size()); ++i) {
        try {
            const auto& ts = dataset[i];
            const std::uint64_t seed = series_seed(cfg.seed, i);
            const auto resolved = pipeline::resolve_model(opts.model, ts.frequency);
            if (resolved == pipeline::ModelChoice::ets_aadn ||
                resolved == pipeline::ModelChoice::ets_hw) {
                auto forecaster = pipeline::make_forecaster(opts);
                dists[i] = forecaster(ts, seed).dist;
                continue;
            }
            pipeline::FitResult fit;
            if (!cfg.draws_dir.empty()) {
                const std::string path = cfg.draws_dir + "/draws_" + ts.id + ".csv";
                std::ifstream in(path);
                if (!in) throw IoError("cannot read draws file '" + path + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                fit = pipeline::draws_from_csv(buf.str());
            } else {
                mcmc::SamplerConfig sc = opts.sampler;
                sc.seed = seed;
                fit = pipeline::fit_series(ts, resolved, opts.backend, sc, opts.priors);
            }
            dists[i] = pipeline::forecast_from_draws(ts, fit, opts.n_paths, seed,
                                                     opts.levels, 1);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    std::ostringstream out;
    out << "id,step";
    for (double lv : opts.levels) {
        char buf[24];
        std::snprintf(buf, sizeof buf, ",p%g", lv * 100.0);
        out << buf;
    }
    out << ",mean\n";
    for (size_t i = 0; i < dataset.size(); ++i) {
        for (int k = 0; k < dists[i].horizon; ++k) {
            out << dataset[i].id << ',' << (k + 1);
            for (size_t j = 0; j < dists[i].levels.size(); ++j)
                out << ',' << format_double(dists[i].quantiles[k][j]);
            out << ',' << format_double(dists[i].mean[k]) << '\n';
        }
    }
    write_file_atomic(cfg.output_dir + "/forecasts.csv", out.str());
    std::cout << "forecast: wrote " << cfg.output_dir << "/forecasts.csv\n";
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
    const auto opts = make_options(cfg);
    const auto dataset = load_input(cfg);
    ensure_outdir(cfg);

    // The four coverage tracks plus the median are required for metrics.
    for (double need : {0.01, 0.05, 0.5, 0.95, 0.99}) {
        bool found = false;
        for (double lv : opts.levels)
            if (std::fabs(lv - need) < 1e-12) found = true;
        if (!found)
            throw std::invalid_argument(
                "evaluate requires quantiles 0.01,0.05,0.5,0.95,0.99");
    }

    const auto t0 = std::chrono::steady_clock::now();
    eval::EvalOptions eopts;
    eopts.jobs = cfg.jobs;
    eopts.seed = cfg.seed;
    const auto report = eval::evaluate_dataset(dataset, pipeline::make_forecaster(opts),
                                               eopts);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_file_atomic(cfg.output_dir + "/per_series.csv", eval::per_series_csv(report));
    write_file_atomic(cfg.output_dir + "/summary.txt", eval::summary_text(report));
    write_file_atomic(cfg.output_dir + "/forecasts.csv",
                      eval::forecasts_csv(dataset, report));

    std::cout << eval::summary_text(report);
    double per_series = 0.0;
    for (const auto& r : report.series) per_series += r.seconds;
    std::cout << "wall time: " << elapsed << " s ("
              << (dataset.empty() ? 0.0 : per_series / dataset.size())
              << " s/series)\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    RunConfig cfg;

    // Config file first, so flags can override its values.
    try {
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config") {
                if (i + 1 >= args.size())
                    throw std::invalid_argument("--config needs a path");
                load_config_file(cfg, args[i + 1]);
            }
        }
        if (!cfg.seed_given) {
            if (const char* env = std::getenv("LGT_SEED")) {
                cfg.seed = std::strtoull(env, nullptr, 10);
                cfg.seed_given = true;
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return kExitValidation;
    }

    CLI::App app{"Bayesian exponential-smoothing forecasting with global trends"};
    app.require_subcommand(1);
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "input dataset CSV");
        sub->add_option("--output-dir", cfg.output_dir, "directory for output files");
        sub->add_option("--model", cfg.model, "auto | lgt | sgt | ets-aadn | ets-hw");
        sub->add_option("--backend", cfg.backend, "mwg | gibbs (non-seasonal only)");
        sub->add_option("--chains", cfg.chains, "MCMC chains");
        sub->add_option("--iters", cfg.iters, "iterations per chain");
        sub->add_option("--burn", cfg.burn, "burn-in iterations");
        sub->add_option("--thin", cfg.thin, "keep every k-th draw");
        sub->add_option("--paths", cfg.paths, "simulated forecast paths");
        sub->add_option("--seed", cfg.seed, "master RNG seed (or env LGT_SEED)");
        sub->add_option("--jobs", cfg.jobs, "worker threads");
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--quantiles", cfg.quantiles, "comma-separated levels in (0,1)");
    };

    auto* fit = app.add_subcommand("fit", "sample the posterior, write draws + diagnostics");
    auto* forecast = app.add_subcommand("forecast", "write forecast quantiles CSV");
    forecast->add_option("--draws", cfg.draws_dir, "reuse draws written by fit");
    auto* evaluate = app.add_subcommand("evaluate", "hold out each horizon and score");
    for (auto* sub : {fit, forecast, evaluate}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return kExitOk;
        }
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (fit->parsed()) return cmd_fit(cfg);
        if (forecast->parsed()) return cmd_forecast(cfg);
        if (evaluate->parsed()) return cmd_evaluate(cfg);
        std::cerr << "error: usage: no command given\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace lgt::cli
