#include "deltaspec/validate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#include "deltaspec/models.hpp"
#include "deltaspec/oracle.hpp"
#include "deltaspec/perturb.hpp"
#include "deltaspec/roots.hpp"
#include "deltaspec/series.hpp"
#include "deltaspec/specfun.hpp"

namespace deltaspec::validate {

namespace {

using models::BoxDeltaSpec;
using models::FiniteWellDeltaSpec;
using models::HydrogenDeltaSpec;
using models::OscillatorDeltaSpec;
using models::Parity;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Registry {
    std::vector<CheckResult>* out;
    const std::string* filter;

    void run(const std::string& name, const std::function<bool(std::string&)>& body) {
        if (!filter->empty() && name.rfind(*filter, 0) != 0) return;
        CheckResult r;
        r.name = name;
        try {
            r.pass = body(r.detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out->push_back(r);
    }
};

// ----------------------------------------------------------------- specfun

void specfun_checks(Registry& reg) {
    namespace sf = deltaspec::specfun;

    reg.run("specfun.gamma.values", [](std::string& d) {
        const double r1 = std::fabs(sf::gamma(0.5) - std::sqrt(M_PI)) / std::sqrt(M_PI);
        const double r2 = std::fabs(sf::gamma(5.0) - 24.0) / 24.0;
        const double r3 = std::fabs(sf::gamma(-0.5) + 2.0 * std::sqrt(M_PI)) /
                          (2.0 * std::sqrt(M_PI));
        d = "max rel err " + fmt(std::max({r1, r2, r3}));
        return std::max({r1, r2, r3}) < 1e-12;
    });

    reg.run("specfun.gamma.recurrence", [](std::string& d) {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> dist(-10.0, 30.0);
        double worst = 0.0;
        int used = 0;
        while (used < 1000) {
            const double x = dist(rng);
            if (std::fabs(x - std::rint(x)) < 1e-3 && x < 0.5) continue;
            if (std::fabs(x + 1.0 - std::rint(x + 1.0)) < 1e-3 && x + 1.0 < 0.5) continue;
            ++used;
            const double lhs = sf::gamma(x + 1.0);
            worst = std::max(worst, std::fabs(lhs - x * sf::gamma(x)) / std::fabs(lhs));
        }
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-11;
    });

    reg.run("specfun.gamma.reflection", [](std::string& d) {
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> dist(1e-4, 1.0 - 1e-4);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = dist(rng);
            const double lhs = sf::gamma(x) * sf::gamma(1.0 - x) * util::sinpi(x);
            worst = std::max(worst, std::fabs(lhs - M_PI) / M_PI);
        }
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-10;
    });

    reg.run("specfun.digamma.recurrence", [](std::string& d) {
        std::mt19937 rng(999);
        std::uniform_real_distribution<double> dist(0.01, 40.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = dist(rng);
            worst = std::max(worst,
                             std::fabs(sf::digamma(x + 1.0) - sf::digamma(x) - 1.0 / x));
        }
        d = "worst abs err " + fmt(worst);
        return worst <= 1e-11;
    });

    reg.run("specfun.kummer.derivative", [](std::string& d) {
        const double cases[][3] = {{0.3, 1.7, 2.0}, {-1.2, 0.5, 4.0}, {2.5, 2.0, 9.0}};
        double worst = 0.0;
        for (const auto& c : cases) {
            const double h = 1e-5;
            const double fd =
                (sf::kummer_m(c[0], c[1], c[2] + h) - sf::kummer_m(c[0], c[1], c[2] - h)) /
                (2.0 * h);
            worst = std::max(worst, std::fabs(fd - sf::kummer_m_derivative(c[0], c[1], c[2])));
        }
        d = "worst abs err " + fmt(worst);
        return worst <= 1e-6;
    });

    reg.run("specfun.pcf.ode", [](std::string& d) {
        double worst = 0.0;
        const double h = 1e-4;
        const double as[] = {0.35, -0.8, 1.4, -2.1};
        for (double a : as) {
            for (int i = 0; i < 5; ++i) {
                const double z = 0.6 + 0.5 * i;
                const double rhs_coeff = 0.25 * z * z + a;
                if (std::fabs(rhs_coeff) < 0.05) continue;
                const double y0 = sf::pcf_u(a, z);
                const double ypp =
                    (sf::pcf_u(a, z + h) - 2.0 * y0 + sf::pcf_u(a, z - h)) / (h * h);
                worst = std::max(worst,
                                 std::fabs(ypp - rhs_coeff * y0) / std::fabs(rhs_coeff * y0));
            }
        }
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-5;
    });

    reg.run("specfun.tricomi.asymptotic", [](std::string& d) {
        const double v = sf::tricomi_u_b2(0.5, 30.0) * std::pow(30.0, 0.5);
        d = "U z^a at z=30: " + fmt(v);
        return std::fabs(v - 1.0) < 0.05;
    });

    reg.run("specfun.tricomi.wronskian", [](std::string& d) {
        double worst = 0.0;
        const double as[] = {-0.35, 0.6, -1.5, 1.25};
        const double zs[] = {0.5, 2.0, 8.0};
        for (double a : as) {
            for (double z : zs) {
                const double m = sf::kummer_m(a, 2.0, z);
                const double u = sf::tricomi_u_int(a, 2, z);
                const double mp = sf::kummer_m_derivative(a, 2.0, z);
                const double up = sf::tricomi_u_int_derivative(a, 2, z);
                const double lhs = m * up - mp * u;
                const double rhs = -sf::gamma_reciprocal(a) * std::exp(z) / (z * z);
                worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(rhs));
            }
        }
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-8;
    });
}

// ------------------------------------------------------------------- roots

void roots_checks(Registry& reg) {
    reg.run("roots.tan_scan", [](std::string& d) {
        const double sing[] = {M_PI / 2.0, 3.0 * M_PI / 2.0, 5.0 * M_PI / 2.0};
        auto brs = roots::scan_brackets([](double x) { return std::tan(x); }, 0.1, 10.0, 1000,
                                        sing);
        if (brs.size() != 3) {
            d = "bracket count " + fmt(static_cast<double>(brs.size()));
            return false;
        }
        const double expect[] = {M_PI, 2.0 * M_PI, 3.0 * M_PI};
        for (int i = 0; i < 3; ++i)
            if (!(brs[i].lo < expect[i] && expect[i] < brs[i].hi)) return false;
        d = "3 brackets at pi, 2pi, 3pi";
        return true;
    });

    reg.run("roots.polynomial_completeness", [](std::string& d) {
        std::mt19937 rng(4242);
        std::uniform_real_distribution<double> dist(-5.0, 5.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> rts;
            for (int i = 0; i < 5; ++i) rts.push_back(dist(rng));
            std::sort(rts.begin(), rts.end());
            bool close = false;
            for (std::size_t i = 1; i < rts.size(); ++i)
                if (rts[i] - rts[i - 1] < 0.05) close = true;
            if (close) continue;
            auto f = [&](double x) {
                double v = 1.0;
                for (double r : rts) v *= (x - r);
                return v;
            };
            auto found = roots::find_roots(f, -6.0, 6.0, 50 * 5, {}, 1e-12);
            if (found.size() != rts.size()) {
                d = "missed roots in trial " + fmt(trial);
                return false;
            }
        }
        d = "all roots found at 50x sampling";
        return true;
    });

    reg.run("roots.determinism", [](std::string& d) {
        auto f = [](double x) { return std::cos(3.0 * x) - 0.2 * x; };
        auto a = roots::find_roots(f, -5.0, 5.0, 3000, {}, 1e-13);
        auto b = roots::find_roots(f, -5.0, 5.0, 3000, {}, 1e-13);
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].x != b[i].x || a[i].residual != b[i].residual) return false;
        d = "bitwise identical across runs";
        return true;
    });

    reg.run("roots.refine_sqrt2", [](std::string& d) {
        auto f = [](double x) { return x * x - 2.0; };
        auto r = roots::refine(f, {1.0, 2.0, f(1.0), f(2.0)}, 1e-14);
        const double err = std::fabs(r.x - std::sqrt(2.0));
        d = "abs err " + fmt(err);
        return err < 1e-13;
    });
}

// ------------------------------------------------------------------ models

BoxDeltaSpec box_spec(double L, std::vector<models::DeltaSpike> deltas, Units u = {}) {
    BoxDeltaSpec s;
    s.L = L;
    s.deltas = std::move(deltas);
    s.units = u;
    return s;
}

void models_checks(Registry& reg) {
    reg.run("models.box.unperturbed", [](std::string& d) {
        auto spec = box_spec(1.0, {{0.5, 0.0}});
        auto roots = models::box_delta_spectrum(spec, 5);
        double worst = 0.0;
        for (int n = 1; n <= 5; ++n)
            worst = std::max(worst, std::fabs(roots[n - 1].scan_value - n * M_PI));
        d = "worst |k - n pi| " + fmt(worst);
        return worst <= 1e-10;
    });

    reg.run("models.box.eq9_equivalence", [](std::string& d) {
        std::mt19937 rng(31415);
        std::uniform_real_distribution<double> kd(0.1, 16.0), pd(0.05, 0.95), ld(0.0, 1.5);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto spec = box_spec(1.0, {{pd(rng), ld(rng)}});
            const double k = kd(rng);
            worst = std::max(worst, std::fabs(models::box_delta_condition(k, spec) -
                                              models::box_delta_condition_single(k, spec)));
        }
        d = "worst abs diff " + fmt(worst);
        return worst <= 1e-12;
    });

    reg.run("models.box.node_protection", [](std::string& d) {
        double worst = 0.0;
        for (double lam : {0.2, 1.0}) {
            auto spec = box_spec(1.0, {{0.5, lam}});
            const double e2 = models::box_delta_spectrum(spec, 2)[1].energy;
            worst = std::max(worst, std::fabs(e2 - 4.0 * M_PI * M_PI) / (4.0 * M_PI * M_PI));
        }
        d = "worst rel shift of the node state " + fmt(worst);
        return worst <= 1e-10;
    });

    reg.run("models.box.mirror_symmetry", [](std::string& d) {
        double worst = 0.0;
        {
            auto a = models::box_delta_spectrum(box_spec(1.0, {{0.3, 0.4}}), 4);
            auto b = models::box_delta_spectrum(box_spec(1.0, {{0.7, 0.4}}), 4);
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::fabs(a[i].energy - b[i].energy) / b[i].energy);
        }
        {
            auto a = models::box_delta_spectrum(box_spec(1.0, {{0.2, 0.3}, {0.55, 0.7}}), 4);
            auto b = models::box_delta_spectrum(box_spec(1.0, {{0.45, 0.7}, {0.8, 0.3}}), 4);
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::fabs(a[i].energy - b[i].energy) / b[i].energy);
        }
        d = "worst rel mismatch " + fmt(worst);
        return worst <= 1e-10;
    });

    reg.run("models.box.lambda_continuity", [](std::string& d) {
        const double dl = 1e-3;
        double worst_ratio = 0.0;
        for (double lam = 0.0; lam < 0.5; lam += 0.1) {
            auto e1 = models::box_delta_spectrum(box_spec(1.0, {{0.37, lam}}), 3);
            auto e2 = models::box_delta_spectrum(box_spec(1.0, {{0.37, lam + dl}}), 3);
            for (int i = 0; i < 3; ++i)
                worst_ratio = std::max(worst_ratio, std::fabs(e2[i].energy - e1[i].energy) / dl);
        }
        d = "max |dE/dlambda| " + fmt(worst_ratio);
        return worst_ratio < 10.0;  // bounded slope, no branch jumps
    });

    reg.run("models.well.count", [](std::string& d) {
        Units u;  // hbar = 1, m = 1/2
        int checked = 0;
        for (int i = 0; i < 50; ++i) {
            const double V0 = 2.0 + 1.37 * i;
            FiniteWellDeltaSpec w{1.0, V0, 0.0, u};
            const double two_alpha_l = 2.0 * std::sqrt(V0 / u.h2m()) * w.L;
            const double frac = two_alpha_l / M_PI;
            if (std::fabs(frac - std::rint(frac)) < 0.02) continue;  // threshold coincidence
            ++checked;
            const auto states = models::finite_well_spectrum(w);
            const int expect = static_cast<int>(std::ceil(frac));
            if (static_cast<int>(states.size()) != expect) {
                d = "V0 " + fmt(V0) + ": " + fmt(states.size()) + " vs " + fmt(expect);
                return false;
            }
        }
        d = fmt(checked) + " depths match ceil(2 alpha L / pi)";
        return true;
    });

    reg.run("models.well.lambda0_reduction", [](std::string& d) {
        FiniteWellDeltaSpec w{1.0, 50.0, 0.0, Units{}};
        auto even_pert = models::finite_well_delta_even_roots(w);
        auto all = models::finite_well_spectrum(w);
        std::vector<double> even_ref;
        for (const auto& s : all)
            if (s.parity == Parity::even) even_ref.push_back(s.energy);
        if (even_pert.size() != even_ref.size()) return false;
        double worst = 0.0;
        for (std::size_t i = 0; i < even_ref.size(); ++i)
            worst = std::max(worst, std::fabs(even_pert[i].energy - even_ref[i]) / even_ref[i]);
        d = "worst rel mismatch " + fmt(worst);
        return worst <= 1e-10;
    });

    reg.run("models.sho.lambda0_levels", [](std::string& d) {
        OscillatorDeltaSpec osc{1.0, 0.0};
        auto evens = models::sho_even_roots(osc, 4);
        double worst = 0.0;
        for (int n = 0; n < 4; ++n)
            worst = std::max(worst, std::fabs(evens[n].energy - (2.0 * n + 0.5)));
        d = "worst abs err " + fmt(worst);
        return worst <= 1e-9;
    });

    reg.run("models.sho.attractive_shift", [](std::string& d) {
        OscillatorDeltaSpec osc{1.0, 0.1};
        const double e0 = models::sho_even_roots(osc, 1)[0].energy;
        d = "lowest even root " + fmt(e0);
        return e0 < 0.5;
    });

    reg.run("models.hydrogen.lambda0", [](std::string& d) {
        HydrogenDeltaSpec h{1.0, 0.0, 1.0, Units{}};
        auto states = models::hydrogen_delta_spectrum(h, 3);
        double worst = 0.0;
        for (int j = 1; j <= 3; ++j)
            worst = std::max(worst,
                             std::fabs(models::hydrogen_energy_to_alpha(states[j - 1].energy, h) -
                                       j));
        d = "worst |alpha - j| " + fmt(worst);
        return worst <= 1e-9;
    });

    reg.run("models.hydrogen.continuity", [](std::string& d) {
        HydrogenDeltaSpec h{1.0, 0.0, 1.0, Units{}};
        double prev = models::hydrogen_delta_spectrum(h, 1)[0].energy;
        double max_slope = 0.0;
        for (double lam = 0.01; lam <= 0.05 + 1e-12; lam += 0.01) {
            h.lambda = lam;
            const double e = models::hydrogen_delta_spectrum(h, 1)[0].energy;
            max_slope = std::max(max_slope, std::fabs(e - prev) / 0.01);
            prev = e;
        }
        d = "max |dE/dlambda| " + fmt(max_slope);
        return max_slope < 10.0 && max_slope > 1e-4;
    });

    reg.run("models.hydrogen.origin_decoupling", [](std::string& d) {
        // ground shift vanishes as a -> 0+ (psi has a node at the origin)
        double shifts[2];
        int i = 0;
        for (double a : {0.05, 0.025}) {
            HydrogenDeltaSpec h{a, 0.05, 1.0, Units{}};
            HydrogenDeltaSpec h0{a, 0.0, 1.0, Units{}};
            shifts[i++] = std::fabs(models::hydrogen_delta_spectrum(h, 1)[0].energy -
                                    models::hydrogen_delta_spectrum(h0, 1)[0].energy);
        }
        d = "shift(a=0.05) " + fmt(shifts[0]) + ", shift(a=0.025) " + fmt(shifts[1]);
        return shifts[1] < 0.5 * shifts[0] && shifts[0] < 1e-2;
    });

    reg.run("models.box.bound_state", [](std::string& d) {
        Units u{1.0, 1.0};
        const double lam = 1.0;
        const double lc = 1.0;  // hbar^2/(m lambda)
        auto wide = models::box_delta_bound_state(box_spec(2.0 * (2.0 * lc), {{0.5, lam}}, u));
        auto narrow = models::box_delta_bound_state(box_spec(2.0 * (0.5 * lc), {{0.5, lam}}, u));
        if (std::fabs(wide.critical_length - lc) > 1e-12) return false;
        d = "E(2Lc) " + (wide.state ? fmt(wide.state->energy) : "none") +
            ", narrow has state: " + (narrow.state ? "yes" : "no");
        return wide.state.has_value() && wide.state->energy < 0.0 && !narrow.state.has_value();
    });
}

// ----------------------------------------------------------------- perturb

void perturb_checks(Registry& reg) {
    reg.run("perturb.box.crossroute", [](std::string& d) {
        double worst_scaled = 0.0;
        for (int n : {1, 3, 5}) {
            for (double p : {0.5, 1.0 / 3.0, 0.25}) {
                const auto closed = perturb::box_pt_closed(n, p, 1.0, Units{});
                for (long lm : {1000L, 10000L, 100000L}) {
                    const auto sum = perturb::box_e2_sum(n, p, 1.0, Units{}, lm);
                    const double diff = std::fabs(sum.E2 - closed.E2);
                    worst_scaled = std::max(worst_scaled, diff * static_cast<double>(lm));
                }
            }
        }
        d = "max l_max-scaled diff (fitted C) " + fmt(worst_scaled);
        return worst_scaled < 2.0;  // diff <= C / l_max with modest C
    });

    reg.run("perturb.box.extraction_consistency", [](std::string& d) {
        const std::pair<int, double> cases[] = {{1, 0.5},  {1, 0.25}, {1, 1.0 / 3.0},
                                                {2, 0.25}, {2, 0.4},  {3, 0.5},
                                                {3, 0.2},  {4, 0.3},  {5, 0.25},
                                                {5, 0.45}};
        double worst = 0.0;
        for (const auto& [n, p] : cases) {
            const auto closed = perturb::box_pt_closed(n, p, 1.0, Units{});
            const auto ext = perturb::numeric_pt_extract(box_spec(1.0, {{p, 1.0}}), n - 1,
                                                         {5e-3, true});
            worst = std::max({worst, std::fabs(closed.E1 - ext.E1),
                              std::fabs(closed.E2 - ext.E2)});
        }
        d = "worst |closed - extracted| " + fmt(worst);
        return worst <= 1e-6;
    });

    reg.run("perturb.box.remainder_order", [](std::string& d) {
        // |E(lambda) - E0 - lambda E1 - lambda^2 E2| should scale like lambda^3,
        // with the coefficients taken from the extraction route (ground truth)
        const auto ext =
            perturb::numeric_pt_extract(box_spec(1.0, {{0.5, 1.0}}), 0, {5e-3, true});
        std::vector<double> lx, ly;
        for (double lam = 1e-3; lam <= 0.1 * (1.0 + 1e-9); lam *= std::sqrt(10.0)) {
            auto spec = box_spec(1.0, {{0.5, lam}});
            const double e = models::box_delta_spectrum(spec, 1)[0].energy;
            const double rem = std::fabs(e - ext.E0 - lam * ext.E1 - lam * lam * ext.E2);
            lx.push_back(std::log(lam));
            ly.push_back(std::log(rem));
        }
        const double slope = util::fit_slope(lx, ly);
        d = "log-log slope " + fmt(slope) + " (extracted E1 " + fmt(ext.E1) + ", E2 " +
            fmt(ext.E2) + ")";
        return std::fabs(slope - 3.0) <= 0.2;
    });

    reg.run("perturb.parity_selection", [](std::string& d) {
        const auto closed = perturb::box_pt_closed(2, 0.5, 1.0, Units{});
        const auto ext =
            perturb::numeric_pt_extract(box_spec(1.0, {{0.5, 1.0}}), 1, {5e-3, true});
        const double worst = std::max({std::fabs(closed.E1), std::fabs(closed.E2),
                                       std::fabs(ext.E1), std::fabs(ext.E2)});
        d = "max |E1|,|E2| on the node state " + fmt(worst);
        return worst <= 1e-7;
    });

    reg.run("perturb.sho.prefactor_ratio", [](std::string& d) {
        OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
        const auto ext = perturb::numeric_pt_extract(osc, 0, {5e-3, true});
        const auto printed = perturb::sho_pt_closed(0, osc);
        const double matrix_element = -std::sqrt(osc.units.mass * osc.omega /
                                                 (M_PI * osc.units.hbar));
        const double ratio = printed.E1 / ext.E1;
        d = "printed/extracted E1 ratio " + fmt(ratio) + " (sqrt(pi) = " +
            fmt(std::sqrt(M_PI)) + "); extracted vs matrix element rel diff " +
            fmt(std::fabs(ext.E1 - matrix_element) / std::fabs(matrix_element)) +
            "; printed E2 vs extracted rel diff " +
            fmt(std::fabs(printed.E2 - ext.E2) / std::fabs(ext.E2));
        return std::fabs(ratio - std::sqrt(M_PI)) < 1e-4 &&
               std::fabs(ext.E1 - matrix_element) < 1e-6 &&
               std::fabs(printed.E2 - ext.E2) < 1e-6;
    });

    reg.run("perturb.sho.e2_sum", [](std::string& d) {
        const auto bracket = perturb::sho_bracket_sum(0, 1000000);
        const double target = -2.0 * std::log(2.0);
        OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
        const auto e2 = perturb::sho_e2_sum(0, osc, 1000000);
        const double full_target = -std::log(2.0) / M_PI;
        d = "bracket " + fmt(bracket.corrected) + " vs -2ln2 " + fmt(target) +
            "; E2 " + fmt(e2.E2) + " vs " + fmt(full_target);
        return std::fabs(bracket.corrected - target) < 1e-5 &&
               std::fabs(e2.E2 - full_target) < 1e-5;
    });

    reg.run("perturb.well.sign_structure", [](std::string& d) {
        Units u;
        int tested = 0;
        for (int i = 0; i < 10; ++i) {
            const double V0 = 11.0 + 4.5 * i;  // >= 3 bound states throughout
            FiniteWellDeltaSpec w{1.0, V0, 0.0, u};
            auto states = models::finite_well_spectrum(w);
            if (states.size() < 3) return false;
            // top even state
            int target = -1;
            for (int s = static_cast<int>(states.size()) - 1; s >= 0; --s)
                if (states[s].parity == Parity::even) {
                    target = s;
                    break;
                }
            const double bound = perturb::well_bound_part_e2(w, target);
            ++tested;
            if (!(bound > 0.0)) {
                d = "bound part not positive at V0 " + fmt(V0);
                return false;
            }
        }
        d = fmt(tested) + " depths: bound part > 0";
        return true;
    });

    reg.run("perturb.well.total_negative", [](std::string& d) {
        Units u;
        double worst = -1e300;
        for (double V0 : {18.0, 30.0, 50.0}) {
            FiniteWellDeltaSpec w{1.0, V0, 0.0, u};
            auto states = models::finite_well_spectrum(w);
            int target = -1, even_index = -1, count_even = 0;
            for (std::size_t s = 0; s < states.size(); ++s)
                if (states[s].parity == Parity::even) {
                    target = static_cast<int>(s);
                    even_index = count_even++;
                }
            (void)target;
            const auto ext = perturb::numeric_pt_extract(w, even_index, {2e-3, false});
            worst = std::max(worst, ext.E2);
            if (!(ext.E2 < 0.0)) {
                d = "extracted E2 " + fmt(ext.E2) + " at V0 " + fmt(V0);
                return false;
            }
        }
        d = "top-even extracted E2 < 0 (max " + fmt(worst) + ")";
        return true;
    });

    reg.run("perturb.well.normalization_forms", [](std::string& d) {
        // quadrature normalization is authoritative; the printed closed form
        // (with its cos^2(kL/2kappa) tail term) is recorded for comparison only
        Units u;
        FiniteWellDeltaSpec w{1.0, 18.0, 0.0, u};
        auto states = models::finite_well_spectrum(w);
        std::ostringstream os;
        bool quad_ok = true;
        const int even_targets[] = {0, 2};
        const double signs[] = {1.0, -1.0};
        for (int t = 0; t < 2; ++t) {
            const auto& s = states[even_targets[t]];
            const double k = std::sqrt(s.energy / u.h2m());
            const double kappa = std::sqrt((w.V0 - s.energy) / u.h2m());
            const double a_quad = perturb::well_normalized_psi0(w, s);
            const double tail = std::cos(k * w.L) * std::cos(k * w.L) / kappa;
            const double a_closed =
                1.0 / std::sqrt(w.L + std::sin(2.0 * k * w.L) / (2.0 * k) + tail);
            const double printed_tail = std::pow(std::cos(k * w.L / (2.0 * kappa)), 2);
            const double a_printed =
                std::sqrt(2.0) / std::sqrt(w.L + signs[t] * std::sin(2.0 * k * w.L) /
                                                     (2.0 * k) +
                                           printed_tail);
            if (std::fabs(a_quad - a_closed) > 1e-7 * a_closed) quad_ok = false;
            os << "state " << even_targets[t] + 1 << ": quadrature " << fmt(a_quad)
               << ", evanescent-tail closed form " << fmt(a_closed)
               << ", printed form " << fmt(a_printed) << " (ratio " << fmt(a_printed / a_quad)
               << "); ";
        }
        d = os.str() + "printed form recorded, not used";
        return quad_ok;
    });

    reg.run("perturb.well.continuum_subtraction", [](std::string& d) {
        Units u;
        FiniteWellDeltaSpec w{1.0, 18.0, 0.0, u};  // three bound states
        auto states = models::finite_well_spectrum(w);
        int target = -1, even_index = -1, count_even = 0;
        for (std::size_t s = 0; s < states.size(); ++s)
            if (states[s].parity == Parity::even) {
                target = static_cast<int>(s);
                even_index = count_even++;
            }
        const double bound = perturb::well_bound_part_e2(w, target);
        const auto ext = perturb::numeric_pt_extract(w, even_index, {2e-3, false});
        const double subtraction = ext.E2 - bound;
        const double box_reg = perturb::well_box_regularized_continuum_e2(w, target, 80.0);
        const double rel = std::fabs(box_reg - subtraction) / std::fabs(subtraction);
        d = "subtraction " + fmt(subtraction) + ", box-regularized " + fmt(box_reg) +
            ", rel diff " + fmt(rel);
        return rel <= 0.05 && bound > 0.0 && ext.E2 < 0.0;
    });
}

// ------------------------------------------------------------------ series

void series_checks(Registry& reg) {
    reg.run("series.telescoping", [](std::string& d) {
        double worst_c = 0.0, worst_limit = 0.0;
        for (int n : {1, 3, 5, 7}) {
            auto run = series::odd_reciprocal_sum(n, 100000);
            const double target = *run.target;
            for (long N : {1000L, 10000L, 100000L}) {
                const double diff = std::fabs(run.partial_sums[N - 1] - target);
                worst_c = std::max(worst_c, diff * static_cast<double>(N));
            }
            // 1/N-extrapolated limit of the run
            const double limit =
                2.0 * run.partial_sums[100000 - 1] - run.partial_sums[50000 - 1];
            worst_limit = std::max(worst_limit, std::fabs(limit - target));
        }
        d = "fitted C " + fmt(worst_c) + ", extrapolated-limit err " + fmt(worst_limit);
        return worst_c < 2.0 && worst_limit <= 1e-7;
    });

    reg.run("series.unrestricted", [](std::string& d) {
        auto r1 = series::unrestricted_sum(1, 10000);
        auto r2 = series::unrestricted_sum(2, 10000);
        const double e1 = std::fabs(r1.partial_sums.back() + 0.25);
        const double e2 = std::fabs(r2.partial_sums.back() + 1.0 / 16.0);
        d = "errors " + fmt(e1) + ", " + fmt(e2) + " (tail bound 1/N = 1e-4)";
        return e1 < 1.01e-4 && e2 < 1.01e-4;
    });

    reg.run("series.sumrule_point", [](std::string& d) {
        auto run = series::sum_rule_series(1, 0.5, 0.25, 1.0, 100000);
        const double lhs = run.partial_sums.back();
        const double expected = -std::sqrt(0.5) * (M_PI - 2.0) / 8.0;
        d = "LHS " + fmt(lhs) + "; equals -(sqrt2/2)(pi-2)/8 = " + fmt(expected) +
            "; printed-target match err " + fmt(std::fabs(lhs - *run.target));
        return std::fabs(lhs - expected) < 1e-6;
    });

    reg.run("series.sumrule_variant", [](std::string& d) {
        // discriminating point: cos(4npi p) and cos(2npi p) differ at p = 1/4
        auto run = series::sum_rule_series(1, 0.25, 0.125, 1.0, 200000);
        const double lhs = run.partial_sums.back();
        const double e_printed = std::fabs(lhs - *run.target);
        const double e_alt = std::fabs(lhs - *run.target_alt);
        std::string verdict = "neither";
        if (e_printed < 1e-4) verdict = "printed cos(4np pi)";
        else if (e_alt < 1e-4) verdict = "alternate cos(2np pi)";
        d = "LHS " + fmt(lhs) + ", printed err " + fmt(e_printed) + ", alt err " +
            fmt(e_alt) + "; supported: " + verdict;
        return true;  // adjudication record; both outcomes are valid data
    });

    reg.run("series.sawtooth_bracketing", [](std::string& d) {
        auto run = series::pi_series(1001, false);
        const double limit = (M_PI - 2.0) / 8.0;
        for (std::size_t j = 1; j + 1 < run.run.partial_sums.size(); ++j) {
            const double a = run.run.partial_sums[j];
            const double b = run.run.partial_sums[j + 1];
            if (!((limit >= std::min(a, b)) && (limit <= std::max(a, b)))) {
                d = "limit escapes bracket at j " + fmt(static_cast<double>(j + 1));
                return false;
            }
        }
        d = "limit bracketed by successive sums up to j = 1000";
        return true;
    });

    reg.run("series.averaging_dominance", [](std::string& d) {
        auto run = series::pi_series(1000, true);
        const double limit = (M_PI - 2.0) / 8.0;
        for (std::size_t i = 0; i < run.run.averaged.size(); ++i) {
            const double avg_err = std::fabs(run.run.averaged[i] - limit);
            const double raw_err = std::fabs(run.run.partial_sums[i + 1] - limit);
            if (avg_err > raw_err) {
                d = "averaging loses at j " + fmt(static_cast<double>(i + 2));
                return false;
            }
        }
        d = "averaged error <= raw error for all j >= 2";
        return true;
    });

    reg.run("series.grouping_equivalence", [](std::string& d) {
        auto run = series::pi_series(1000, false);
        util::KahanSum raw;
        for (long k = 1; k <= 1000; ++k) {
            raw.add(series::pi_series_raw_term(2 * k - 1) + series::pi_series_raw_term(2 * k));
            if (raw.value() != run.run.partial_sums[k - 1]) {
                d = "bitwise mismatch at k " + fmt(static_cast<double>(k));
                return false;
            }
        }
        d = "pairwise raw sums bitwise equal S(k), k <= 1000";
        return true;
    });

    reg.run("series.determinism_threads", [](std::string& d) {
        const char* saved = std::getenv("DELTA_SPECTRA_THREADS");
        std::string saved_value = saved ? saved : "";
        setenv("DELTA_SPECTRA_THREADS", "1", 1);
        auto a = series::pi_series(200000, true);
        setenv("DELTA_SPECTRA_THREADS", "4", 1);
        auto b = series::pi_series(200000, true);
        if (saved)
            setenv("DELTA_SPECTRA_THREADS", saved_value.c_str(), 1);
        else
            unsetenv("DELTA_SPECTRA_THREADS");
        if (a.run.partial_sums.size() != b.run.partial_sums.size()) return false;
        for (std::size_t i = 0; i < a.run.partial_sums.size(); ++i)
            if (a.run.partial_sums[i] != b.run.partial_sums[i]) {
                d = "partial sums differ at index " + fmt(static_cast<double>(i));
                return false;
            }
        d = "bitwise identical for 1 and 4 threads";
        return true;
    });

    reg.run("series.sho_constant", [](std::string& d) {
        std::ostringstream os;
        bool all_c1 = true;
        for (int n : {0, 1, 2}) {
            auto run = series::sho_series(n, 400000);
            const double value = run.partial_sums.back() + run.tail_correction;
            const double e1 = std::fabs(value - *run.target);
            const double e2 = std::fabs(value - *run.target_alt);
            const char* pick = (e1 < e2) ? "1/pi" : "1/pi^2";
            if (e1 >= e2) all_c1 = false;
            os << "n=" << n << ": sum " << fmt(value) << ", |err 1/pi| " << fmt(e1)
               << ", |err 1/pi^2| " << fmt(e2) << ", supports " << pick << "; ";
        }
        d = os.str();
        return all_c1;
    });

    reg.run("series.pi_digits", [](std::string& d) {
        auto run = series::pi_series(100000, true);
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.16Lf", run.pi_avg_ext(100000));
        // exact sum is 3.14159265358979373846...; correct rounding ends in 7.
        // The published table's trailing 8 fails exact-arithmetic verification
        // (recorded here as a misprint; no arithmetic reproduces it).
        d = std::string("averaged estimate ") + buf +
            " (exact 3.14159265358979373846...; published trailing digit 8 is a misprint)";
        return std::string(buf) == "3.1415926535897937";
    });
}

// ------------------------------------------------------------------ golden

std::string fixed_dp(double v, int dp) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", dp, v);
    return buf;
}

void golden_checks(Registry& reg) {
    reg.run("golden.table1", [](std::string& d) {
        auto n1 = series::odd_reciprocal_sum(1, 100000);
        auto n5 = series::odd_reciprocal_sum(5, 100000);
        const bool ok = fixed_dp(n1.partial_sums[9], 4) == "0.2273" &&
                        fixed_dp(n1.partial_sums[49], 4) == "0.2451" &&
                        fixed_dp(n1.partial_sums[99], 4) == "0.2475" &&
                        fixed_dp(n1.partial_sums[999], 4) == "0.2498" &&
                        fixed_dp(n1.partial_sums[9999], 6) == "0.249975" &&
                        fixed_dp(n1.partial_sums[99999], 7) == "0.2499975" &&
                        fixed_dp(n5.partial_sums[9], 3) == "-0.013" &&
                        fixed_dp(n5.partial_sums[49], 4) == "0.0051" &&
                        fixed_dp(n5.partial_sums[99], 4) == "0.0075" &&
                        fixed_dp(n5.partial_sums[999], 5) == "0.00975" &&
                        fixed_dp(n5.partial_sums[9999], 6) == "0.009975" &&
                        fixed_dp(n5.partial_sums[99999], 7) == "0.0099975";
        d = ok ? "12/12 published cells" : "cell mismatch";
        return ok;
    });

    reg.run("golden.table2", [](std::string& d) {
        auto run = series::pi_series(20, true);
        const bool ok =
            fixed_dp(run.pi_raw[0], 2) == "3.33" && fixed_dp(run.pi_raw[1], 2) == "3.07" &&
            fixed_dp(run.pi_avg[0], 2) == "3.20" && fixed_dp(run.pi_raw[2], 2) == "3.18" &&
            fixed_dp(run.pi_raw[3], 2) == "3.12" && fixed_dp(run.pi_avg[2], 3) == "3.149" &&
            fixed_dp(run.pi_raw[4], 2) == "3.16" && fixed_dp(run.pi_raw[5], 2) == "3.13" &&
            fixed_dp(run.pi_avg[4], 3) == "3.144" && fixed_dp(run.pi_raw[6], 2) == "3.15" &&
            fixed_dp(run.pi_raw[7], 2) == "3.13" && fixed_dp(run.pi_avg[6], 3) == "3.143" &&
            fixed_dp(run.pi_raw[8], 3) == "3.147" && fixed_dp(run.pi_raw[9], 3) == "3.137" &&
            fixed_dp(run.pi_avg[8], 3) == "3.142" && fixed_dp(run.pi_raw[18], 4) == "3.1429" &&
            fixed_dp(run.pi_raw[19], 4) == "3.1404" && fixed_dp(run.pi_avg[18], 4) == "3.1417";
        d = ok ? "18/18 published cells" : "cell mismatch";
        return ok;
    });

    reg.run("golden.table3", [](std::string& d) {
        auto run = series::pi_series(100000, true);
        char deep[48];
        std::snprintf(deep, sizeof(deep), "%.16Lf", run.pi_avg_ext(100000));
        const bool ok = fixed_dp(run.pi_avg_ext(10), 3) == "3.142" &&
                        fixed_dp(run.pi_avg_ext(100), 6) == "3.141593" &&
                        fixed_dp(run.pi_avg_ext(1000), 9) == "3.141592654" &&
                        fixed_dp(run.pi_avg_ext(10000), 11) == "3.14159265359" &&
                        std::string(deep) == "3.1415926535897937";
        d = std::string("deep row ") + deep + " (exact-sum rounding; published trailing 8 is a misprint)";
        return ok;
    });
}

// ------------------------------------------------------------------ oracle

void oracle_checks(Registry& reg) {
    reg.run("oracle.textbook_spectra", [](std::string& d) {
        auto box = box_spec(1.0, {{0.5, 0.0}});
        auto grid = oracle::default_grid(box, 1601);
        auto es = oracle::oracle_spectrum_extrapolated(box, grid, 3);
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n)
            worst = std::max(worst, std::fabs(es[n - 1] - n * n * M_PI * M_PI) /
                                        (n * n * M_PI * M_PI));
        OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
        auto ogrid = oracle::default_grid(osc, 1601);
        auto oe = oracle::oracle_spectrum_extrapolated(osc, ogrid, 3);
        for (int n = 0; n < 3; ++n)
            worst = std::max(worst, std::fabs(oe[n] - (n + 0.5)) / (n + 0.5));
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-8;
    });

    reg.run("oracle.concordance", [](std::string& d) {
        std::ostringstream os;
        double worst = 0.0;
        {
            auto box = box_spec(1.0, {{0.5, 0.2}});
            auto exact = models::box_delta_spectrum(box, 3);
            auto es = oracle::oracle_spectrum_extrapolated(box, oracle::default_grid(box, 2001), 3);
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::fabs(es[i] - exact[i].energy));
            os << "box " << fmt(worst);
        }
        {
            FiniteWellDeltaSpec w{1.0, 18.0, 0.05, Units{}};
            auto exact = models::finite_well_delta_spectrum(w);
            auto es = oracle::oracle_spectrum_extrapolated(w, oracle::default_grid(w, 4001), 3);
            double local = 0.0;
            for (int i = 0; i < 3; ++i) local = std::max(local, std::fabs(es[i] - exact[i].energy));
            worst = std::max(worst, local);
            os << ", well " << fmt(local);
        }
        {
            OscillatorDeltaSpec osc{1.0, 0.1, Units{1.0, 1.0}};
            auto exact = models::sho_delta_spectrum(osc, 3);
            auto es = oracle::oracle_spectrum_extrapolated(osc, oracle::default_grid(osc, 2001), 3);
            double local = 0.0;
            for (int i = 0; i < 3; ++i) local = std::max(local, std::fabs(es[i] - exact[i].energy));
            worst = std::max(worst, local);
            os << ", sho " << fmt(local);
        }
        {
            HydrogenDeltaSpec h{1.0, 0.05, 1.0, Units{}};
            auto exact = models::hydrogen_delta_spectrum(h, 3);
            auto es = oracle::oracle_spectrum_extrapolated(h, oracle::default_grid(h, 6001), 3);
            double local = 0.0;
            for (int i = 0; i < 3; ++i) local = std::max(local, std::fabs(es[i] - exact[i].energy));
            worst = std::max(worst, local);
            os << ", hyd " << fmt(local);
        }
        d = "worst abs err " + fmt(worst) + " (" + os.str() + ")";
        return worst <= 1e-8;
    });

    reg.run("oracle.convergence_order", [](std::string& d) {
        auto box = box_spec(1.0, {{0.5, 1.0}});
        auto g1 = oracle::default_grid(box, 251);
        auto g2 = g1, g4 = g1;
        g2.points = 2 * (g1.points - 1) + 1;
        g4.points = 2 * (g2.points - 1) + 1;
        const double e1 = oracle::oracle_spectrum(box, g1, 1)[0];
        const double e2 = oracle::oracle_spectrum(box, g2, 1)[0];
        const double e4 = oracle::oracle_spectrum(box, g4, 1)[0];
        const double order = std::log2(std::fabs(e1 - e2) / std::fabs(e2 - e4));
        d = "measured order " + fmt(order);
        return order >= 1.8 && order <= 2.2;
    });

    reg.run("oracle.gaussian_extrapolation", [](std::string& d) {
        auto box = box_spec(1.0, {{0.5, 0.2}});
        const double w = 1e-3;
        auto gw = oracle::default_grid(box, 20001, oracle::DeltaMode::narrow_gaussian, w);
        auto gw2 = gw;
        gw2.width = 0.5 * w;
        const double ew = oracle::oracle_spectrum_extrapolated(box, gw, 1)[0];
        const double ew2 = oracle::oracle_spectrum_extrapolated(box, gw2, 1)[0];
        const double extr = 2.0 * ew2 - ew;
        const double ref =
            oracle::oracle_spectrum_extrapolated(box, oracle::default_grid(box, 4001), 1)[0];
        d = "width-extrapolated " + fmt(extr) + " vs jump " + fmt(ref) + ", diff " +
            fmt(std::fabs(extr - ref));
        return std::fabs(extr - ref) <= 1e-6;
    });

    reg.run("oracle.orthonormality", [](std::string& d) {
        auto box = box_spec(1.0, {{0.5, 0.2}});
        auto st = oracle::fd_states(box, oracle::default_grid(box, 4001), 4);
        const double h = st.x[1] - st.x[0];
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                util::KahanSum ip;
                for (std::size_t g = 0; g < st.x.size(); ++g)
                    ip.add(st.vectors[i][g] * st.vectors[j][g]);
                worst = std::max(worst, std::fabs(ip.value() * h - (i == j ? 1.0 : 0.0)));
            }
        }
        d = "worst |<i|j> - delta_ij| " + fmt(worst);
        return worst <= 1e-9;
    });

    reg.run("oracle.matrix_elements", [](std::string& d) {
        auto box = box_spec(1.0, {{0.5, 0.0}});
        auto grid = oracle::default_grid(box, 4001);
        const double m11 = oracle::matrix_element_delta(box, 0, 0, 0.5, grid);
        const double m12 = oracle::matrix_element_delta(box, 0, 1, 0.5, grid);
        OscillatorDeltaSpec osc{1.0, 0.0, Units{1.0, 1.0}};
        auto og = oracle::default_grid(osc, 4001);
        const double g00 = oracle::matrix_element_delta(osc, 0, 0, 0.0, og);
        const double expect = std::sqrt(1.0 / M_PI);
        const double worst = std::max({std::fabs(m11 - 2.0), std::fabs(m12),
                                       std::fabs(g00 - expect)});
        d = "box <1|d|1> " + fmt(m11) + ", <1|d|2> " + fmt(m12) + ", sho ground " + fmt(g00);
        return worst <= 1e-6;
    });
}

// ---------------------------------------------------------------- problems

void problem_checks(Registry& reg) {
    reg.run("problem1.critical_length", [](std::string& d) {
        const std::pair<double, double> cases[] = {{1.0, 1.0}, {0.5, 0.8}, {2.0, 0.3}};
        double worst = 0.0;
        for (const auto& [m, lam] : cases) {
            Units u{1.0, m};
            const double lc = u.hbar * u.hbar / (m * lam);
            // bisect the half-width on numerically detected existence
            double lo = 0.25 * lc, hi = 4.0 * lc;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                auto r = models::box_delta_bound_state(box_spec(2.0 * mid, {{0.5, lam}}, u));
                if (r.state.has_value())
                    hi = mid;
                else
                    lo = mid;
            }
            const double detected = 0.5 * (lo + hi);
            worst = std::max(worst, std::fabs(detected - lc) / lc);
        }
        d = "worst rel err of detected critical length " + fmt(worst);
        return worst <= 1e-6;
    });

    reg.run("problem3.two_delta", [](std::string& d) {
        auto spec = box_spec(1.0, {{0.25, 0.3}, {0.75, 0.3}});
        const auto ext = perturb::numeric_pt_extract(spec, 0, {5e-3, true});
        // mirrored two-delta spectrum must coincide with itself (symmetric array)
        auto sp = models::box_delta_spectrum(spec, 4);
        double worst_sym = 0.0;
        auto mirrored = box_spec(1.0, {{0.25, 0.3}, {0.75, 0.3}});
        auto sp2 = models::box_delta_spectrum(mirrored, 4);
        for (int i = 0; i < 4; ++i)
            worst_sym = std::max(worst_sym, std::fabs(sp[i].energy - sp2[i].energy));
        d = "ground extracted E2 " + fmt(ext.E2) + "; symmetric-spectrum diff " + fmt(worst_sym);
        return ext.E2 < 0.0 && worst_sym <= 1e-10;
    });
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
    std::vector<CheckResult> results;
    Registry reg{&results, &opts.only};
    perturb::set_lambda_sign_fault(opts.inject_lambda_sign_fault);
    specfun_checks(reg);
    roots_checks(reg);
    models_checks(reg);
    perturb_checks(reg);
    series_checks(reg);
    golden_checks(reg);
    oracle_checks(reg);
    problem_checks(reg);
    perturb::set_lambda_sign_fault(false);
    return results;
}

}  // namespace deltaspec::validate
