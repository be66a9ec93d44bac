#include <doctest.h>

#include <cmath>
#include <random>

#include "deltaspec/models.hpp"
#include "deltaspec/roots.hpp"

using namespace deltaspec;

TEST_CASE("scan finds tan roots and skips the poles") {
    const double sing[] = {M_PI / 2.0, 3.0 * M_PI / 2.0, 5.0 * M_PI / 2.0};
    auto brs = roots::scan_brackets([](double x) { return std::tan(x); }, 0.1, 10.0, 1000, sing);
    REQUIRE(brs.size() == 3);
    const double expect[] = {M_PI, 2.0 * M_PI, 3.0 * M_PI};
    for (int i = 0; i < 3; ++i) {
        CHECK(brs[i].lo < expect[i]);
        CHECK(expect[i] < brs[i].hi);
    }
}

TEST_CASE("scan of the unperturbed box condition") {
    models::BoxDeltaSpec spec{1.0, {{0.5, 0.0}}, Units{}};
    auto f = [&](double k) { return models::box_delta_condition(k, spec); };
    auto brs = roots::scan_brackets(f, 0.1, 16.0, 1000, {});
    REQUIRE(brs.size() == 5);  // k L = pi ... 5 pi
    for (int n = 1; n <= 5; ++n) {
        CHECK(brs[n - 1].lo < n * M_PI);
        CHECK(n * M_PI < brs[n - 1].hi);
    }
}

TEST_CASE("scan of the perturbed well condition matches the unperturbed count") {
    models::FiniteWellDeltaSpec w{1.0, 50.0, 0.1, Units{}};
    const auto unperturbed = models::finite_well_spectrum(w);
    int even_count = 0;
    for (const auto& s : unperturbed)
        if (s.parity == models::Parity::even) ++even_count;
    const auto perturbed = models::finite_well_delta_even_roots(w);
    CHECK(static_cast<int>(perturbed.size()) == even_count);
}

TEST_CASE("refine reaches sqrt(2) to 14 digits") {
    auto f = [](double x) { return x * x - 2.0; };
    auto r = roots::refine(f, {1.0, 2.0, f(1.0), f(2.0)}, 1e-14);
    CHECK(std::fabs(r.x - std::sqrt(2.0)) < 1e-13);
    CHECK(r.x >= r.bracket.lo);
    CHECK(r.x <= r.bracket.hi);
}

TEST_CASE("refine on eigenvalue conditions") {
    SUBCASE("box n = 1 branch at lambda = 0") {
        models::BoxDeltaSpec spec{1.0, {{0.5, 0.0}}, Units{}};
        auto f = [&](double k) { return models::box_delta_condition(k, spec); };
        auto brs = roots::scan_brackets(f, 0.1, 4.0, 400, {});
        REQUIRE(brs.size() == 1);
        auto r = roots::refine(f, brs[0], 1e-13);
        CHECK(r.x == doctest::Approx(M_PI).epsilon(1e-12));
    }
    SUBCASE("oscillator even condition at lambda = 0 starts at hw/2") {
        models::OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
        auto evens = models::sho_even_roots(osc, 1);
        CHECK(evens[0].energy == doctest::Approx(0.5).epsilon(1e-11));
    }
}

TEST_CASE("returned roots are clean and pole-free") {
    const double sing[] = {M_PI / 2.0, 3.0 * M_PI / 2.0, 5.0 * M_PI / 2.0};
    auto f = [](double x) { return std::tan(x); };
    auto rs = roots::find_roots(f, 0.1, 10.0, 2000, sing, 1e-12);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) {
        const double slope = (f(r.x + 1e-7) - f(r.x - 1e-7)) / 2e-7;
        CHECK(std::fabs(r.residual) <= std::max(1e-9, std::fabs(slope) * 1e-10));
        for (double s : sing) CHECK(std::fabs(r.x - s) > 1e-6 * 9.9);
    }
}

TEST_CASE("polynomial scans are complete at 50x sampling") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    int trials_used = 0;
    for (int trial = 0; trial < 40 && trials_used < 15; ++trial) {
        std::vector<double> rts;
        for (int i = 0; i < 5; ++i) rts.push_back(dist(rng));
        std::sort(rts.begin(), rts.end());
        bool too_close = false;
        for (std::size_t i = 1; i < rts.size(); ++i)
            if (rts[i] - rts[i - 1] < 0.05) too_close = true;
        if (too_close) continue;
        ++trials_used;
        auto f = [&](double x) {
            double v = 1.0;
            for (double r : rts) v *= (x - r);
            return v;
        };
        auto found = roots::find_roots(f, -6.0, 6.0, 250, {}, 1e-12);
        REQUIRE(found.size() == rts.size());
        for (std::size_t i = 0; i < rts.size(); ++i)
            CHECK(found[i].x == doctest::Approx(rts[i]).epsilon(1e-9));
    }
    CHECK(trials_used >= 10);
}

TEST_CASE("identical inputs give bitwise-identical results") {
    auto f = [](double x) { return std::cos(3.0 * x) - 0.2 * x; };
    auto a = roots::find_roots(f, -5.0, 5.0, 3000, {}, 1e-13);
    auto b = roots::find_roots(f, -5.0, 5.0, 3000, {}, 1e-13);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].residual == b[i].residual);
        CHECK(a[i].iterations == b[i].iterations);
    }
}

TEST_CASE("scan rejects invalid input") {
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(roots::scan_brackets(f, 1.0, 0.0, 10, {}), std::invalid_argument);
    CHECK_THROWS_AS(roots::scan_brackets(f, 0.0, 1.0, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(roots::refine(f, {0.5, 1.0, 0.5, 1.0}, 1e-12), std::invalid_argument);
}

TEST_CASE("no-convergence is reported") {
    auto f = [](double x) { return x < 0.70000001 ? -1.0 : 1.0; };
    CHECK_THROWS_AS(roots::refine(f, {0.0, 1.0, -1.0, 1.0}, 0.0, 10), NoConvergenceError);
}
