#include "lgt/ets.hpp"

#include "support/helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace lgt;
using namespace lgt::ets;

TEST_CASE("aadn filter oracle cases") {
    SUBCASE("alpha=1 tracks the data exactly") {
        EtsParams p;
        p.alpha = 1;
        p.beta = 0;
        p.phi = 1;
        p.b1 = 0;
        std::vector<double> y = {10, 13, 9, 17, 12};
        p.l1 = y[0];
        const auto r = aadn_filter(y, p);
        for (size_t i = 0; i + 1 < y.size(); ++i)
            CHECK(r.predictions[i] == doctest::Approx(y[i]));
    }
    SUBCASE("alpha=0 runs the deterministic trend 11,12,13") {
        EtsParams p;
        p.alpha = 0;
        p.beta = 0.37;  // arbitrary
        p.phi = 1;
        p.l1 = 10;
        p.b1 = 1;
        std::vector<double> y = {10, 0, 0, 0, 0};  // data ignored at alpha=0
        const auto r = aadn_filter(y, p);
        CHECK(r.predictions[0] == doctest::Approx(11.0));
        CHECK(r.predictions[1] == doctest::Approx(12.0));
        CHECK(r.predictions[2] == doctest::Approx(13.0));
    }
    SUBCASE("phi=0 kills the trend") {
        EtsParams p;
        p.alpha = 0.4;
        p.beta = 0.2;
        p.phi = 0;
        p.l1 = 10;
        p.b1 = 5;
        std::vector<double> y = {10, 11, 12, 13};
        const auto r = aadn_filter(y, p);
        double l = p.l1;
        for (size_t i = 0; i + 1 < y.size(); ++i) {
            CHECK(r.predictions[i] == doctest::Approx(l));
            l = p.alpha * y[i + 1] + (1 - p.alpha) * l;
        }
    }
}

TEST_CASE("aadn forecast damping") {
    EtsState st;
    st.level = 10;
    st.trend = 1;
    EtsParams p;
    SUBCASE("undamped is linear") {
        p.phi = 1;
        CHECK(aadn_forecast(st, p, 3) == std::vector<double>{11, 12, 13});
    }
    SUBCASE("phi=0 is flat") {
        p.phi = 0;
        CHECK(aadn_forecast(st, p, 3) == std::vector<double>{10, 10, 10});
    }
    SUBCASE("phi=0.5 is the geometric sum") {
        p.phi = 0.5;
        const auto f = aadn_forecast(st, p, 3);
        CHECK(f[0] == doctest::Approx(10.5));
        CHECK(f[1] == doctest::Approx(10.75));
        CHECK(f[2] == doctest::Approx(10.875));
    }
    SUBCASE("phi=1 forecasts are exactly linear in the step") {
        p.phi = 1;
        const auto f = aadn_forecast(st, p, 10);
        for (int k = 0; k < 10; ++k)
            CHECK(f[k] == doctest::Approx(10.0 + (k + 1) * 1.0));
    }
}

TEST_CASE("holt-winters multiplicative filter") {
    SUBCASE("unit factors reduce to aadn") {
        EtsParams p;
        p.alpha = 0.35;
        p.beta = 0.15;
        p.phi = 0.9;
        p.zeta = 0.0;
        p.l1 = 12;
        p.b1 = 0.7;
        p.s_init = {1, 1, 1, 1};
        const auto ts = testsup::trending_series("E", 20, 4, 8, 31);
        const auto hw = hw_mult_filter(ts.values, p);
        const auto aa = aadn_filter(ts.values, p);
        CHECK(hw.loglik == doctest::Approx(aa.loglik).epsilon(1e-12));
        for (size_t i = 0; i < hw.predictions.size(); ++i)
            CHECK(hw.predictions[i] == doctest::Approx(aa.predictions[i]).epsilon(1e-12));
    }
    SUBCASE("frozen alternating factors forecast 20, 5, ...") {
        EtsParams p;
        p.alpha = 0;
        p.beta = 0;
        p.zeta = 0;
        p.phi = 1;
        p.l1 = 10;
        p.b1 = 0;
        p.s_init = {2.0, 0.5};
        std::vector<double> y = {20, 5, 20, 5, 20};  // n odd
        const auto r = hw_mult_filter(y, p);
        const auto f = hw_mult_forecast(r.state, p, 4);
        CHECK(f[0] == doctest::Approx(20.0));
        CHECK(f[1] == doctest::Approx(5.0));
        CHECK(f[2] == doctest::Approx(20.0));
        CHECK(f[3] == doctest::Approx(5.0));
    }
    SUBCASE("zeta=0 keeps the factors at their initials") {
        EtsParams p;
        p.alpha = 0.4;
        p.beta = 0.1;
        p.zeta = 0;
        p.phi = 0.95;
        p.l1 = 30;
        p.b1 = 1;
        p.s_init = {1.3, 0.7, 1.1, 0.9};
        const auto ts = testsup::trending_series("E", 16, 4, 4, 33);
        const auto r = hw_mult_filter(ts.values, p);
        // last cycle of factors equals the initials rotated onto the tail
        for (int j = 0; j < 4; ++j) {
            bool found = false;
            for (double s0 : p.s_init)
                if (std::fabs(r.state.seasonal[j] - s0) < 1e-12) found = true;
            CHECK(found);
        }
    }
    SUBCASE("seasonal-neutral division property") {
        EtsParams p;
        p.alpha = 0.35;
        p.beta = 0.15;
        p.phi = 0.9;
        p.zeta = 0.0;
        p.l1 = 12;
        p.b1 = 0.7;
        p.s_init = {1, 1, 1, 1};
        const auto ts = testsup::trending_series("E", 20, 4, 8, 34);
        const auto hw = hw_mult_filter(ts.values, p);
        const auto aa = aadn_filter(ts.values, p);
        for (size_t i = 0; i < hw.predictions.size(); ++i)
            CHECK(hw.predictions[i] / 1.0 == doctest::Approx(aa.predictions[i]));
    }
}

TEST_CASE("mle fit recovers clean structure") {
    SUBCASE("noiseless line extends within 1% at h=6") {
        TimeSeries ts;
        ts.id = "line";
        ts.frequency = 1;
        ts.horizon = 6;
        for (int t = 1; t <= 40; ++t) ts.values.push_back(5.0 + 2.0 * t);
        const auto split = split_last_h(ts);
        const auto p = mle_fit_ets(split.train, false);
        const auto filt = aadn_filter(split.train.values, p);
        const auto fc = aadn_forecast(filt.state, p, 6);
        for (int k = 0; k < 6; ++k) {
            const double truth = split.test[k];
            CHECK(std::fabs(fc[k] - truth) / truth < 0.01);
        }
    }
    SUBCASE("constant series forecasts the constant") {
        TimeSeries ts;
        ts.id = "const";
        ts.frequency = 1;
        ts.horizon = 3;
        ts.values.assign(20, 7.0);
        const auto p = mle_fit_ets(ts, false);
        const auto filt = aadn_filter(ts.values, p);
        const auto fc = aadn_forecast(filt.state, p, 3);
        for (double f : fc) CHECK(f == doctest::Approx(7.0).epsilon(1e-6));
    }
    SUBCASE("refit is deterministic") {
        const auto ts = testsup::trending_series("D", 30, 1, 6, 35);
        const auto p1 = mle_fit_ets(ts, false);
        const auto p2 = mle_fit_ets(ts, false);
        CHECK(p1.alpha == p2.alpha);
        CHECK(p1.beta == p2.beta);
        CHECK(p1.phi == p2.phi);
        CHECK(p1.l1 == p2.l1);
        CHECK(p1.b1 == p2.b1);
    }
    SUBCASE("fitted parameters stay inside their boxes") {
        for (int i = 0; i < 10; ++i) {
            const auto ts = testsup::trending_series("B", 28, i % 2 ? 4 : 1, 4, 40 + i);
            const bool seasonal = i % 2 == 1;
            const auto p = mle_fit_ets(ts, seasonal);
            CHECK(p.alpha > 0.0);
            CHECK(p.alpha < 1.0);
            CHECK(p.beta > 0.0);
            CHECK(p.beta < 1.0);
            CHECK(p.phi >= 0.80);
            CHECK(p.phi <= 0.98);
            if (seasonal) {
                CHECK(p.zeta > 0.0);
                CHECK(p.zeta < 1.0);
                for (double s : p.s_init) CHECK(s > 0.0);
            }
        }
    }
    SUBCASE("seasonal fit captures a strong stable pattern") {
        TimeSeries ts;
        ts.id = "seas";
        ts.frequency = 4;
        ts.horizon = 4;
        const double fac[4] = {1.4, 0.7, 1.2, 0.7};
        for (int t = 0; t < 32; ++t)
            ts.values.push_back((50.0 + 1.5 * t) * fac[t % 4]);
        const auto split = split_last_h(ts);
        const auto p = mle_fit_ets(split.train, true);
        const auto filt = hw_mult_filter(split.train.values, p);
        const auto fc = hw_mult_forecast(filt.state, p, 4);
        for (int k = 0; k < 4; ++k)
            CHECK(std::fabs(fc[k] - split.test[k]) / split.test[k] < 0.05);
    }
}

TEST_CASE("ets interval simulation") {
    EtsParams p;
    p.alpha = 0.3;
    p.beta = 0.1;
    p.phi = 0.95;
    p.sigma = 1.0;
    EtsState st;
    st.level = 50;
    st.trend = 0.5;

    SUBCASE("tiny sigma collapses onto the point forecasts") {
        EtsParams q = p;
        q.sigma = 1e-9;
        const auto dist = ets_simulate_intervals(st, q, false, 5, 500, 1);
        const auto fc = aadn_forecast(st, q, 5);
        for (int k = 0; k < 5; ++k)
            for (size_t j = 0; j < dist.levels.size(); ++j)
                CHECK(dist.quantiles[k][j] == doctest::Approx(fc[k]).epsilon(1e-6));
    }
    SUBCASE("quantiles are monotone at every step") {
        const auto dist = ets_simulate_intervals(st, p, false, 6, 2000, 2);
        for (int k = 0; k < 6; ++k)
            for (size_t j = 1; j < dist.levels.size(); ++j)
                CHECK(dist.quantiles[k][j] >= dist.quantiles[k][j - 1]);
    }
    SUBCASE("constant model one-step 90% width matches the gaussian") {
        EtsParams q = p;
        q.alpha = 0;
        q.beta = 0;
        q.phi = 0;
        q.sigma = 1.0;
        const auto dist = ets_simulate_intervals(st, q, false, 1, 100000, 3);
        const auto p5 = dist.level_track(0.05), p95 = dist.level_track(0.95);
        const double width = p95[0] - p5[0];
        CHECK(std::fabs(width - 2 * 1.6449) / (2 * 1.6449) < 0.05);
    }
    SUBCASE("path count precondition") {
        CHECK_THROWS(ets_simulate_intervals(st, p, false, 5, 50, 1));
    }
}
