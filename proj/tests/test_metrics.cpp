#include "lgt/metrics.hpp"
#include "lgt/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lgt;
using namespace lgt::eval;

TEST_CASE("smape hand values") {
    CHECK(smape(std::vector<double>{3, 4, 5}, std::vector<double>{3, 4, 5}) == 0.0);
    CHECK(smape(std::vector<double>{100}, std::vector<double>{50})
          == doctest::Approx(200.0 * 50.0 / 150.0).epsilon(1e-14));
    CHECK(smape(std::vector<double>{1, 3}, std::vector<double>{2, 2})
          == doctest::Approx(100.0 * (1.0 / 3.0 + 1.0 / 5.0)).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(smape(std::vector<double>{0.0}, std::vector<double>{0.0}),
                         doctest::Contains("step 1"), std::invalid_argument);
}

TEST_CASE("mase hand values") {
    const std::vector<double> in1 = {1, 2, 3, 4};
    CHECK(mase(std::vector<double>{5}, std::vector<double>{5}, in1, 1) == 0.0);
    CHECK(mase(std::vector<double>{5}, std::vector<double>{4}, in1, 1)
          == doctest::Approx(1.0));
    CHECK(mase(std::vector<double>{6}, std::vector<double>{5}, in1, 2)
          == doctest::Approx(0.5));
    CHECK_THROWS(mase(std::vector<double>{5}, std::vector<double>{4},
                      std::vector<double>{2, 2, 2, 2}, 1));
}

TEST_CASE("msis hand values") {
    const std::vector<double> in1 = {1, 2, 3, 4};  // scale 1 at s=1
    SUBCASE("degenerate interval at the truth scores zero") {
        IntervalForecast iv{{5}, {5}, 0.1};
        CHECK(msis(std::vector<double>{5}, iv, in1, 1) == 0.0);
    }
    SUBCASE("covered interval scores its width") {
        IntervalForecast iv{{0}, {10}, 0.1};
        CHECK(msis(std::vector<double>{5}, iv, in1, 1) == doctest::Approx(10.0));
    }
    SUBCASE("upper miss adds the 2/alpha penalty") {
        IntervalForecast iv{{0}, {10}, 0.1};
        CHECK(msis(std::vector<double>{12}, iv, in1, 1) == doctest::Approx(50.0));
    }
    SUBCASE("crossed bounds are rejected") {
        IntervalForecast iv{{10}, {0}, 0.1};
        CHECK_THROWS(msis(std::vector<double>{5}, iv, in1, 1));
    }
}

TEST_CASE("coverage fractions") {
    const std::vector<double> y = {1, 10};
    const std::vector<double> p1 = {0, 0}, p5 = {5, 5}, p95 = {20, 20}, p99 = {30, 30};
    const auto c = coverage_stats(y, p1, p5, p95, p99);
    CHECK(c.below_p1 == 0.0);
    CHECK(c.below_p5 == 0.5);
    CHECK(c.below_p95 == 1.0);
    CHECK(c.below_p99 == 1.0);
}

TEST_CASE("metric properties on randomized cases") {
    Rng rng(2024);
    for (int rep = 0; rep < 10000; ++rep) {
        const int h = 1 + static_cast<int>(rng.uniform01() * 8);
        const int n = h + 5 + static_cast<int>(rng.uniform01() * 20);
        const int s = 1 + static_cast<int>(rng.uniform01() * 3);
        std::vector<double> y(h), f(h), in(n);
        for (auto& v : y) v = rng.uniform(0.5, 100);
        for (auto& v : f) v = rng.uniform(0.5, 100);
        for (auto& v : in) v = rng.uniform(0.5, 100);
        const double c = rng.uniform(0.1, 10.0);

        // smape symmetry and bounds
        const double s1 = smape(y, f);
        CHECK(s1 == doctest::Approx(smape(f, y)).epsilon(1e-12));
        CHECK(s1 >= 0.0);
        CHECK(s1 <= 200.0);

        // scale freeness of mase and msis
        std::vector<double> yc = y, fc = f, inc = in;
        for (auto& v : yc) v *= c;
        for (auto& v : fc) v *= c;
        for (auto& v : inc) v *= c;
        if (n > s) {
            const double m1 = mase(y, f, in, s);
            const double m2 = mase(yc, fc, inc, s);
            CHECK(m1 == doctest::Approx(m2).epsilon(1e-12));

            IntervalForecast iv;
            iv.alpha = 0.1;
            for (int k = 0; k < h; ++k) {
                const double a = rng.uniform(0.5, 100), b = rng.uniform(0.5, 100);
                iv.lower.push_back(std::min(a, b));
                iv.upper.push_back(std::max(a, b));
            }
            IntervalForecast ivc = iv;
            for (auto& v : ivc.lower) v *= c;
            for (auto& v : ivc.upper) v *= c;
            CHECK(msis(y, iv, in, s) == doctest::Approx(msis(yc, ivc, inc, s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("widening a fully covering interval strictly increases msis") {
    const std::vector<double> in = {3, 5, 4, 6, 5};
    const std::vector<double> y = {5, 6};
    IntervalForecast tight{{4, 5}, {6, 7}, 0.1};
    IntervalForecast wide{{3, 4}, {7, 8}, 0.1};
    CHECK(msis(y, wide, in, 1) > msis(y, tight, in, 1));
}
