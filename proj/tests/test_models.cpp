#include <doctest.h>

#include <cmath>
#include <random>

#include "deltaspec/models.hpp"
#include "deltaspec/oracle.hpp"

using namespace deltaspec;
using models::BoxDeltaSpec;
using models::FiniteWellDeltaSpec;
using models::HydrogenDeltaSpec;
using models::OscillatorDeltaSpec;
using models::Parity;

TEST_CASE("box condition basics") {
    BoxDeltaSpec zero{1.0, {{0.5, 0.0}}, Units{}};
    for (int n = 1; n <= 4; ++n)
        CHECK(std::fabs(models::box_delta_condition(n * M_PI, zero)) < 1e-12 * n);

    // a node on the delta kills the coupling term for any strength
    for (double lam : {0.1, 1.0, 7.5}) {
        BoxDeltaSpec s{1.0, {{0.5, lam}}, Units{}};
        CHECK(std::fabs(models::box_delta_condition(2.0 * M_PI, s)) < 1e-12 * lam);
    }
}

TEST_CASE("transfer matrix reduces to the closed single-delta condition") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> kd(0.1, 16.0), pd(0.05, 0.95), ld(0.0, 1.5);
    for (int i = 0; i < 100; ++i) {
        BoxDeltaSpec s{1.0, {{pd(rng), ld(rng)}}, Units{}};
        const double k = kd(rng);
        CHECK(std::fabs(models::box_delta_condition(k, s) -
                        models::box_delta_condition_single(k, s)) <= 1e-12);
    }
}

TEST_CASE("box spectrum") {
    SUBCASE("lambda -> 0 limit recovers n^2 pi^2 (units hbar=1, m=1/2, L=1)") {
        BoxDeltaSpec s{1.0, {{0.37, 1e-9}}, Units{}};
        auto sp = models::box_delta_spectrum(s, 3);
        for (int n = 1; n <= 3; ++n)
            CHECK(sp[n - 1].energy ==
                  doctest::Approx(n * n * M_PI * M_PI).epsilon(1e-8));
    }
    SUBCASE("attractive delta lowers the even state, node state exact") {
        BoxDeltaSpec s{1.0, {{0.5, 0.2}}, Units{}};
        auto sp = models::box_delta_spectrum(s, 2);
        CHECK(sp[0].energy < M_PI * M_PI);
        CHECK(sp[1].energy == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-12));
    }
    SUBCASE("mirror symmetry p <-> 1-p") {
        auto a = models::box_delta_spectrum(BoxDeltaSpec{1.0, {{0.3, 0.4}}, Units{}}, 4);
        auto b = models::box_delta_spectrum(BoxDeltaSpec{1.0, {{0.7, 0.4}}, Units{}}, 4);
        for (int i = 0; i < 4; ++i)
            CHECK(a[i].energy == doctest::Approx(b[i].energy).epsilon(1e-10));
    }
    SUBCASE("two mirrored deltas give a mirror-symmetric spectrum") {
        auto a = models::box_delta_spectrum(
            BoxDeltaSpec{1.0, {{0.2, 0.3}, {0.55, 0.7}}, Units{}}, 4);
        auto b = models::box_delta_spectrum(
            BoxDeltaSpec{1.0, {{0.45, 0.7}, {0.8, 0.3}}, Units{}}, 4);
        for (int i = 0; i < 4; ++i)
            CHECK(a[i].energy == doctest::Approx(b[i].energy).epsilon(1e-10));
    }
    SUBCASE("spec validation") {
        CHECK_THROWS_AS(models::validate(BoxDeltaSpec{-1.0, {}, Units{}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(models::validate(BoxDeltaSpec{1.0, {{1.2, 0.1}}, Units{}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(models::validate(BoxDeltaSpec{1.0, {{0.5, 0.1}, {0.3, 0.1}}, Units{}}),
                        std::invalid_argument);
    }
}

TEST_CASE("centered-delta negative-energy state and its critical length") {
    Units u{1.0, 1.0};
    SUBCASE("critical length formula") {
        auto r = models::box_delta_bound_state(BoxDeltaSpec{4.0, {{0.5, 1.0}}, u});
        CHECK(r.critical_length == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("existence on both sides of the threshold (oracle cross-check)") {
        // half-width 2 Lc: exactly one negative-energy state
        BoxDeltaSpec wide{4.0, {{0.5, 1.0}}, u};
        auto r = models::box_delta_bound_state(wide);
        REQUIRE(r.state.has_value());
        CHECK(r.state->energy < 0.0);
        auto grid = oracle::default_grid(wide, 4001);
        auto es = oracle::oracle_spectrum_extrapolated(wide, grid, 2);
        CHECK(es[0] < 0.0);                                   // one negative state
        CHECK(es[1] > 0.0);                                   // only one
        CHECK(es[0] == doctest::Approx(r.state->energy).epsilon(1e-8));

        // half-width Lc/2: no negative-energy state
        BoxDeltaSpec narrow{1.0, {{0.5, 1.0}}, u};
        CHECK(!models::box_delta_bound_state(narrow).state.has_value());
        auto ngrid = oracle::default_grid(narrow, 4001);
        CHECK(oracle::oracle_spectrum_extrapolated(narrow, ngrid, 1)[0] > 0.0);
    }
}

TEST_CASE("finite well unperturbed spectrum") {
    Units u;
    SUBCASE("bound-state count tracks 2 alpha L / pi") {
        // 2 alpha L = 2.5 pi -> exactly 3 bound states
        const double alpha_l = 1.25 * M_PI;
        const double V0 = alpha_l * alpha_l * u.h2m();
        auto states = models::finite_well_spectrum(FiniteWellDeltaSpec{1.0, V0, 0.0, u});
        CHECK(states.size() == 3);
        CHECK(states[0].parity == Parity::even);
        CHECK(states[1].parity == Parity::odd);
        CHECK(states[2].parity == Parity::even);
    }
    SUBCASE("deep-well limit approaches the box levels of width 2L") {
        FiniteWellDeltaSpec w{1.0, 1e6, 0.0, u};
        auto states = models::finite_well_spectrum(w);
        for (int n = 1; n <= 3; ++n) {
            const double box_level = n * n * M_PI * M_PI * u.h2m() / 4.0;
            CHECK(states[n - 1].energy == doctest::Approx(box_level).epsilon(5e-3));
        }
    }
    SUBCASE("grid oracle confirms the levels") {
        FiniteWellDeltaSpec w{1.0, 50.0, 0.0, u};
        auto states = models::finite_well_spectrum(w);
        auto es = oracle::oracle_spectrum_extrapolated(w, oracle::default_grid(w, 4001), 3);
        for (int i = 0; i < 3; ++i)
            CHECK(es[i] == doctest::Approx(states[i].energy).epsilon(1e-9));
    }
}

TEST_CASE("finite well delta condition") {
    Units u;
    FiniteWellDeltaSpec w{1.0, 50.0, 0.0, u};
    SUBCASE("lambda = 0 reduces to the even matching condition") {
        auto states = models::finite_well_spectrum(w);
        for (const auto& s : states) {
            if (s.parity != Parity::even) continue;
            CHECK(std::fabs(models::finite_well_delta_condition(s.energy, w)) < 1e-9);
        }
    }
    SUBCASE("attractive delta shifts the even roots downward") {
        FiniteWellDeltaSpec wp{1.0, 50.0, 0.05, u};
        auto before = models::finite_well_delta_even_roots(w);
        auto after = models::finite_well_delta_even_roots(wp);
        REQUIRE(before.size() == after.size());
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(after[i].energy < before[i].energy);
    }
    SUBCASE("domain errors outside (0, V0)") {
        CHECK_THROWS_AS(models::finite_well_delta_condition(-1.0, w), std::domain_error);
        CHECK_THROWS_AS(models::finite_well_delta_condition(51.0, w), std::domain_error);
    }
    SUBCASE("perturbed roots vs the grid oracle") {
        FiniteWellDeltaSpec wp{1.0, 18.0, 0.05, u};
        auto exact = models::finite_well_delta_spectrum(wp);
        auto es = oracle::oracle_spectrum_extrapolated(wp, oracle::default_grid(wp, 4001), 3);
        for (int i = 0; i < 3; ++i)
            CHECK(es[i] == doctest::Approx(exact[i].energy).epsilon(1e-9));
    }
}

TEST_CASE("oscillator delta condition") {
    OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
    SUBCASE("lambda = 0 even levels at (2n + 1/2) hw") {
        auto evens = models::sho_even_roots(osc, 4);
        for (int n = 0; n < 4; ++n)
            CHECK(std::fabs(evens[n].energy - (2.0 * n + 0.5)) < 1e-9);
    }
    SUBCASE("attractive delta lowers the even states only") {
        OscillatorDeltaSpec pert{1.0, 0.1, Units{1.0, 1.0}};
        auto sp = models::sho_delta_spectrum(pert, 4);
        CHECK(sp[0].energy < 0.5);
        CHECK(sp[0].parity == Parity::even);
        CHECK(sp[1].energy == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(sp[1].parity == Parity::odd);
        CHECK(sp[2].energy < 2.5);
        CHECK(sp[3].energy == doctest::Approx(3.5).epsilon(1e-14));
    }
    SUBCASE("lowest root matches the jump-condition oracle") {
        OscillatorDeltaSpec pert{1.0, 0.1, Units{1.0, 1.0}};
        const double root = models::sho_even_roots(pert, 1)[0].energy;
        auto es = oracle::oracle_spectrum_extrapolated(pert, oracle::default_grid(pert, 2001), 1);
        CHECK(es[0] == doctest::Approx(root).epsilon(1e-9));
    }
    SUBCASE("narrow-gaussian oracle extrapolates to the same root") {
        OscillatorDeltaSpec pert{1.0, 0.1, Units{1.0, 1.0}};
        const double root = models::sho_even_roots(pert, 1)[0].energy;
        const double w = 6e-3;
        auto g1 = oracle::default_grid(pert, 16001, oracle::DeltaMode::narrow_gaussian, w);
        auto g2 = g1;
        g2.width = 0.5 * w;
        const double e1 = oracle::oracle_spectrum_extrapolated(pert, g1, 1)[0];
        const double e2 = oracle::oracle_spectrum_extrapolated(pert, g2, 1)[0];
        CHECK(2.0 * e2 - e1 == doctest::Approx(root).epsilon(5e-6));
    }
}

TEST_CASE("hydrogen delta condition") {
    Units u;
    HydrogenDeltaSpec h{1.0, 0.0, 1.0, u};
    SUBCASE("lambda = 0 roots at integer alpha") {
        auto states = models::hydrogen_delta_spectrum(h, 3);
        for (int j = 1; j <= 3; ++j) {
            CHECK(models::hydrogen_energy_to_alpha(states[j - 1].energy, h) ==
                  doctest::Approx(j).epsilon(1e-10));
            CHECK(std::fabs(models::hydrogen_delta_condition(states[j - 1].energy, h)) < 1e-8);
        }
    }
    SUBCASE("small lambda moves the root continuously") {
        double prev = models::hydrogen_delta_spectrum(h, 1)[0].energy;
        for (double lam : {0.01, 0.02, 0.03}) {
            HydrogenDeltaSpec hp{1.0, lam, 1.0, u};
            const double e = models::hydrogen_delta_spectrum(hp, 1)[0].energy;
            CHECK(std::fabs(e - prev) < 0.05);
            CHECK(e < prev);  // attractive
            prev = e;
        }
    }
    SUBCASE("delta near the origin decouples (psi(0) = 0)") {
        double shift_a[2];
        int idx = 0;
        for (double a : {0.05, 0.025}) {
            HydrogenDeltaSpec hp{a, 0.05, 1.0, u};
            HydrogenDeltaSpec h0{a, 0.0, 1.0, u};
            shift_a[idx++] = std::fabs(models::hydrogen_delta_spectrum(hp, 1)[0].energy -
                                       models::hydrogen_delta_spectrum(h0, 1)[0].energy);
        }
        CHECK(shift_a[0] < 1e-2);
        CHECK(shift_a[1] < 0.5 * shift_a[0]);
    }
    SUBCASE("requires E < 0") {
        CHECK_THROWS_AS(models::hydrogen_delta_condition(0.5, h), std::domain_error);
    }
}

TEST_CASE("explicit units carry through the dimensional formulas") {
    SUBCASE("box levels scale as hbar^2/(2 m L^2)") {
        Units u{2.0, 3.0};
        BoxDeltaSpec s{1.7, {{0.37, 0.0}}, u};
        auto sp = models::box_delta_spectrum(s, 3);
        for (int n = 1; n <= 3; ++n) {
            const double expect = n * n * M_PI * M_PI * u.hbar * u.hbar /
                                  (2.0 * u.mass * s.L * s.L);
            CHECK(sp[n - 1].energy == doctest::Approx(expect).epsilon(1e-11));
        }
    }
    SUBCASE("oscillator levels scale as hbar omega") {
        Units u{1.3, 0.7};
        OscillatorDeltaSpec osc{2.1, 0.0, u};
        auto evens = models::sho_even_roots(osc, 3);
        for (int n = 0; n < 3; ++n)
            CHECK(evens[n].energy ==
                  doctest::Approx((2.0 * n + 0.5) * u.hbar * osc.omega).epsilon(1e-11));
    }
    SUBCASE("hydrogen levels scale as e^4 m / (2 hbar^2 alpha^2)") {
        Units u{1.4, 0.9};
        HydrogenDeltaSpec h{1.0, 0.0, 1.2, u};
        auto sp = models::hydrogen_delta_spectrum(h, 2);
        for (int j = 1; j <= 2; ++j) {
            const double expect =
                -h.e2 * h.e2 * u.mass / (2.0 * u.hbar * u.hbar * j * j);
            CHECK(sp[j - 1].energy == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    SUBCASE("critical length carries hbar^2/(m lambda)") {
        Units u{1.7, 0.4};
        BoxDeltaSpec s{10.0, {{0.5, 0.9}}, u};
        CHECK(models::box_delta_bound_state(s).critical_length ==
              doctest::Approx(u.hbar * u.hbar / (u.mass * 0.9)).epsilon(1e-14));
    }
}

TEST_CASE("branch labels stay put as lambda varies") {
    for (double lam = 0.0; lam < 0.3; lam += 0.05) {
        BoxDeltaSpec s{1.0, {{0.37, lam}}, Units{}};
        auto sp = models::box_delta_spectrum(s, 4);
        for (int i = 1; i < 4; ++i) CHECK(sp[i].energy > sp[i - 1].energy);
        for (int i = 0; i < 4; ++i) CHECK(sp[i].ordinal == i);
    }
}
