#include "lgt/dist.hpp"
#include "lgt/mcmc.hpp"

#include "support/helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace lgt;
using namespace lgt::mcmc;

TEST_CASE("grid_sample frequencies and edge cases") {
    Rng rng(51);
    SUBCASE("equal weights are symmetric") {
        const std::vector<double> grid = {1.0, 2.0};
        const std::vector<double> w = {0.3, 0.3};
        int first = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            if (grid_sample(rng, grid, w) == 1.0) ++first;
        CHECK(std::fabs(first / static_cast<double>(n) - 0.5) < 0.01);
    }
    SUBCASE("minus infinity weight never drawn") {
        const std::vector<double> grid = {7.0, 8.0};
        const std::vector<double> w = {0.0, -std::numeric_limits<double>::infinity()};
        for (int i = 0; i < 1000; ++i) CHECK(grid_sample(rng, grid, w) == 7.0);
    }
    SUBCASE("log 3 weight ratio gives 1:3 odds") {
        const std::vector<double> grid = {0.0, 1.0};
        const std::vector<double> w = {0.0, std::log(3.0)};
        int second = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            if (grid_sample(rng, grid, w) == 1.0) ++second;
        CHECK(std::fabs(second / static_cast<double>(n) - 0.75) < 0.01);
    }
    SUBCASE("all -inf is an error") {
        const std::vector<double> grid = {1.0};
        const std::vector<double> w = {-std::numeric_limits<double>::infinity()};
        CHECK_THROWS(grid_sample(rng, grid, w));
    }
    SUBCASE("huge weights are stabilised") {
        const std::vector<double> grid = {1.0, 2.0};
        const std::vector<double> w = {5000.0, 5000.0 + std::log(3.0)};
        int second = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            if (grid_sample(rng, grid, w) == 2.0) ++second;
        CHECK(std::fabs(second / static_cast<double>(n) - 0.75) < 0.01);
    }
}

TEST_CASE("adaptive rwm kernel leaves a product normal invariant") {
    // Detailed-balance spot check: long frozen-kernel run over N(0,1)^2,
    // thinned to near-independence, chi-square against exact cell
    // probabilities on a 5x5 quantile grid.
    auto log_target = [](const std::vector<double>& x) {
        return -0.5 * (x[0] * x[0] + x[1] * x[1]);
    };
    RwmOptions opts;
    AdaptiveRwmChain chain(log_target, {0.1, -0.2}, {2.4, 2.4}, opts, Rng(61));
    for (int i = 0; i < 2000; ++i) chain.sweep();  // adapt, then freeze
    chain.freeze_adaptation();

    const std::vector<double> edges = {-0.8416212335729143, -0.2533471031357997,
                                       0.2533471031357997, 0.8416212335729143};
    auto cell = [&](double v) {
        int c = 0;
        while (c < 4 && v > edges[c]) ++c;
        return c;
    };
    std::map<int, int> counts;
    const int kept = 30000, thin = 40;
    for (int i = 0; i < kept; ++i) {
        for (int t = 0; t < thin; ++t) chain.sweep();
        counts[5 * cell(chain.state()[0]) + cell(chain.state()[1])]++;
    }
    const double expected = kept / 25.0;
    double chi2 = 0.0;
    for (int c = 0; c < 25; ++c) {
        const double diff = counts[c] - expected;
        chi2 += diff * diff / expected;
    }
    // 1% critical value of chi-square with 24 degrees of freedom.
    CHECK(chi2 < 42.98);
}

TEST_CASE("fit_mwg bookkeeping and determinism") {
    const auto ts = testsup::trending_series("M", 30, 1, 6, 70);
    SamplerConfig cfg;
    cfg.n_chains = 3;
    cfg.n_iter = 400;
    cfg.n_burn = 150;
    cfg.thin = 7;
    cfg.seed = 99;

    const auto draws = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg);
    SUBCASE("draw count is exactly chains * floor((iters-burn)/thin)") {
        CHECK(draws.size() == static_cast<size_t>(3 * ((400 - 150) / 7)));
    }
    SUBCASE("identical seeds reproduce identical draws") {
        const auto again = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg);
        REQUIRE(again.size() == draws.size());
        for (size_t i = 0; i < draws.size(); ++i) {
            CHECK(draws.lgt[i].alpha == again.lgt[i].alpha);
            CHECK(draws.lgt[i].gamma == again.lgt[i].gamma);
            CHECK(draws.lgt[i].sigma == again.lgt[i].sigma);
        }
    }
    SUBCASE("every draw satisfies the parameter boxes") {
        const PriorConfig priors = PriorConfig{}.resolved_for(ts);
        for (const auto& p : draws.lgt) CHECK(lgt_in_boxes(p, priors));
    }
    SUBCASE("different seed moves the draws") {
        SamplerConfig cfg2 = cfg;
        cfg2.seed = 100;
        const auto other = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg2);
        bool any_diff = false;
        for (size_t i = 0; i < draws.size(); ++i)
            any_diff |= draws.lgt[i].alpha != other.lgt[i].alpha;
        CHECK(any_diff);
    }
}

TEST_CASE("fit_mwg on sgt keeps the seasonal constraint") {
    const auto ts = testsup::trending_series("MS", 24, 4, 8, 71);
    SamplerConfig cfg;
    cfg.n_chains = 2;
    cfg.n_iter = 300;
    cfg.n_burn = 100;
    cfg.thin = 5;
    cfg.seed = 7;
    const auto draws = fit_mwg(ts, ModelKind::sgt, PriorConfig{}, cfg);
    REQUIRE(draws.size() > 0);
    for (const auto& p : draws.sgt) {
        double total = 0.0;
        for (double s : p.s_init) total += s;
        CHECK(std::fabs(total / 4.0 - 1.0) <= 1e-12);
    }
}

TEST_CASE("constant series posterior keeps gamma near zero") {
    TimeSeries ts;
    ts.id = "C";
    ts.category = "yearly";
    ts.frequency = 1;
    ts.horizon = 3;
    // Antithetic jitter after a clean first point: zero net drift and no
    // offset between the pinned initial level y_1 and the series mean,
    // so the data carry no trend signal at all.
    ts.values.push_back(100.0);
    Rng jitter(5);
    for (int t = 0; t < 40; ++t) {
        const double e = 0.1 * (jitter.uniform01() - 0.5);
        ts.values.push_back(100.0 + e);
        ts.values.push_back(100.0 - e);
    }

    SamplerConfig cfg;
    cfg.n_chains = 4;
    cfg.n_iter = 5000;
    cfg.n_burn = 2500;
    cfg.thin = 2;
    cfg.seed = 12;
    // A tight rho box keeps gamma likelihood-identified: with rho free,
    // the gamma|rho ridge widens ~50x toward rho = -0.5 and the median
    // would need two orders of magnitude more effective draws than a
    // desk-scale test affords.
    PriorConfig priors;
    priors.rho_lo = 0.45;
    priors.rho_hi = 0.55;
    const auto draws = fit_mwg(ts, ModelKind::lgt, priors, cfg);
    std::vector<double> gammas;
    for (const auto& p : draws.lgt) gammas.push_back(p.gamma);
    const PriorConfig resolved = priors.resolved_for(ts);
    CHECK(std::fabs(testsup::median(gammas)) < 0.02 * resolved.gamma_scale);
}

TEST_CASE("rhat and ess behave like the textbook oracles") {
    Rng rng(81);
    SUBCASE("iid chains give rhat near 1 and ess near the draw count") {
        std::vector<std::vector<double>> chains(4, std::vector<double>(2000));
        for (auto& c : chains)
            for (auto& v : c) v = dist::sample_normal(rng, 0.0, 1.0);
        CHECK(split_rhat(chains) == doctest::Approx(1.0).epsilon(0.01));
        const double ess = effective_sample_size(chains);
        CHECK(std::fabs(ess - 8000.0) / 8000.0 < 0.10);
    }
    SUBCASE("disjoint chains blow rhat past 3") {
        std::vector<std::vector<double>> chains(2, std::vector<double>(500));
        for (int c = 0; c < 2; ++c)
            for (auto& v : chains[c])
                v = dist::sample_normal(rng, c == 0 ? -10.0 : 10.0, 1.0);
        CHECK(split_rhat(chains) > 3.0);
    }
    SUBCASE("autocorrelated chains lose effective draws") {
        std::vector<std::vector<double>> chains(2, std::vector<double>(4000));
        for (auto& c : chains) {
            double x = 0.0;
            for (auto& v : c) {
                x = 0.9 * x + std::sqrt(1 - 0.81) * dist::sample_normal(rng, 0.0, 1.0);
                v = x;
            }
        }
        const double ess = effective_sample_size(chains);
        // AR(1) with phi=0.9 has tau = (1+phi)/(1-phi) = 19.
        CHECK(ess < 8000.0 / 10.0);
        CHECK(ess > 8000.0 / 40.0);
    }
}

TEST_CASE("diagnostics demands enough draws and chains") {
    const auto ts = testsup::trending_series("M", 24, 1, 6, 90);
    SamplerConfig cfg;
    cfg.n_chains = 1;
    cfg.n_iter = 300;
    cfg.n_burn = 100;
    cfg.thin = 1;
    cfg.seed = 3;
    const auto one_chain = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg);
    CHECK_THROWS(diagnostics(one_chain));

    cfg.n_chains = 2;
    cfg.n_iter = 150;
    const auto short_chains = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg);
    CHECK_THROWS(diagnostics(short_chains));

    cfg.n_iter = 400;
    cfg.n_burn = 200;
    const auto ok = fit_mwg(ts, ModelKind::lgt, PriorConfig{}, cfg);
    const auto diag = diagnostics(ok);
    CHECK(diag.size() == 10);  // full heteroscedastic parameter set
    for (const auto& d : diag) {
        CHECK(std::isfinite(d.mean));
        CHECK(d.ess > 0.0);
    }
}
