#include "deltaspec/models.hpp"

#include <algorithm>
#include <cmath>

#include "deltaspec/specfun.hpp"

namespace deltaspec::models {

using util::sinpi;
using util::tanpi;

namespace {

std::vector<EigenRoot> label_ascending(std::vector<roots::RootResult> rs,
                                       const std::function<double(double)>& to_energy,
                                       Parity parity = Parity::none) {
    std::vector<EigenRoot> out;
    out.reserve(rs.size());
    int ordinal = 0;
    for (const auto& r : rs) {
        EigenRoot e;
        e.energy = to_energy(r.x);
        e.scan_value = r.x;
        e.residual = r.residual;
        e.ordinal = ordinal++;
        e.parity = parity;
        e.bracket = r.bracket;
        e.iterations = r.iterations;
        out.push_back(e);
    }
    return out;
}

}  // namespace

// --------------------------------------------------------------------- box

void validate(const BoxDeltaSpec& s) {
    validate_units(s.units);
    if (!(s.L > 0.0)) throw std::invalid_argument("box: L must be positive");
    double prev = 0.0;
    for (const auto& d : s.deltas) {
        if (!(d.p > 0.0 && d.p < 1.0))
            throw std::invalid_argument("box: delta positions must satisfy 0 < p < 1");
        if (!(d.p > prev))
            throw std::invalid_argument("box: delta positions must be strictly increasing");
        prev = d.p;
    }
}

double box_delta_condition(double k, const BoxDeltaSpec& spec) {
    const double g_scale = 2.0 * spec.units.mass / (spec.units.hbar * spec.units.hbar);
    // psi = a sin kx + b cos kx on each segment, psi(0) = 0
    double a = 1.0, b = 0.0;
    for (const auto& d : spec.deltas) {
        const double x = d.p * spec.L;
        const double sn = std::sin(k * x);
        const double cs = std::cos(k * x);
        const double value = a * sn + b * cs;
        const double deriv = k * (a * cs - b * sn);
        const double deriv_after = deriv - g_scale * d.lambda * value;
        a = sn * value + cs * deriv_after / k;
        b = cs * value - sn * deriv_after / k;
    }
    return k * (a * std::sin(k * spec.L) + b * std::cos(k * spec.L));
}

double box_delta_condition_single(double k, const BoxDeltaSpec& spec) {
    if (spec.deltas.size() != 1)
        throw std::invalid_argument("box_delta_condition_single: exactly one delta required");
    const double g = 2.0 * spec.units.mass * spec.deltas[0].lambda /
                     (spec.units.hbar * spec.units.hbar);
    const double p = spec.deltas[0].p;
    return k * std::sin(k * spec.L) -
           g * std::sin(k * p * spec.L) * std::sin(k * (1.0 - p) * spec.L);
}

std::vector<EigenRoot> box_delta_spectrum(const BoxDeltaSpec& spec, int count) {
    validate(spec);
    if (count < 1) throw std::invalid_argument("box_delta_spectrum: count must be >= 1");
    auto f = [&](double k) { return box_delta_condition(k, spec); };
    const double unit = M_PI / spec.L;
    double k_hi = (count + 1.5) * unit;
    const double k_lo = 1e-9 * unit;
    for (int attempt = 0; attempt < 6; ++attempt) {
        // keep the sampling density fixed as the window grows
        const int n_samples = std::max(2000, static_cast<int>(std::ceil(600.0 * k_hi / unit)));
        auto rs = roots::find_roots(f, k_lo, k_hi, n_samples, {}, 1e-13);
        if (static_cast<int>(rs.size()) >= count) {
            rs.resize(count);
            return label_ascending(std::move(rs), [&](double k) {
                return spec.units.h2m() * k * k;
            });
        }
        k_hi += 2.0 * unit;
    }
    throw NoConvergenceError("box_delta_spectrum: could not locate requested states");
}

BoundStateResult box_delta_bound_state(const BoxDeltaSpec& spec) {
    validate(spec);
    if (spec.deltas.size() != 1 || std::fabs(spec.deltas[0].p - 0.5) > 1e-12)
        throw std::invalid_argument("box_delta_bound_state: needs a single centered delta");
    const double lambda = spec.deltas[0].lambda;
    if (!(lambda > 0.0))
        throw std::invalid_argument("box_delta_bound_state: attractive delta required");
    const Units u = spec.units;
    const double half = 0.5 * spec.L;
    const double critical = u.hbar * u.hbar / (u.mass * lambda);

    // matching condition in kappa (E = -hbar^2 kappa^2 / 2m):
    //   f(kappa) = tanh(kappa * half) - kappa * critical
    // f is concave with f(0) = 0; a positive root exists iff half > critical.
    auto f = [&](double kappa) { return std::tanh(kappa * half) - kappa * critical; };
    const double kappa_cap = 1.5 / critical;  // root is below 1/critical always
    const double kappa_floor = 1e-13 / half;

    BoundStateResult result;
    result.critical_length = critical;

    // log-spaced scan: the positivity window shrinks toward 0 as L -> Lc+
    const int n = 600;
    const double ratio = std::pow(kappa_cap / kappa_floor, 1.0 / (n - 1));
    double prev_x = kappa_floor;
    double prev_f = f(prev_x);
    for (int i = 1; i < n; ++i) {
        const double x = kappa_floor * std::pow(ratio, i);
        const double fx = f(x);
        if (prev_f > 0.0 && fx < 0.0) {
            auto rr = roots::refine(f, {prev_x, x, prev_f, fx}, 1e-14 * kappa_cap);
            EigenRoot e;
            e.energy = -u.h2m() * rr.x * rr.x;
            e.scan_value = rr.x;
            e.residual = rr.residual;
            e.ordinal = 0;
            e.parity = Parity::even;
            e.bracket = rr.bracket;
            e.iterations = rr.iterations;
            result.state = e;
            break;
        }
        prev_x = x;
        prev_f = fx;
    }
    return result;
}

// --------------------------------------------------------------- finite well

void validate(const FiniteWellDeltaSpec& s) {
    validate_units(s.units);
    if (!(s.L > 0.0)) throw std::invalid_argument("well: L must be positive");
    if (!(s.V0 > 0.0)) throw std::invalid_argument("well: V0 must be positive");
}

namespace {

struct WellScales {
    double h2m;      // hbar^2 / 2m
    double alpha_l;  // alpha L = sqrt(2 m V0) L / hbar
};

WellScales well_scales(const FiniteWellDeltaSpec& s) {
    const double h2m = s.units.h2m();
    return {h2m, std::sqrt(s.V0 / h2m) * s.L};
}

// pole-free forms of the lambda = 0 matching conditions in u = kL
double well_even_condition(double u, double alpha_l) {
    const double kl = std::sqrt(std::max(0.0, alpha_l * alpha_l - u * u));
    return u * std::sin(u) - kl * std::cos(u);
}

double well_odd_condition(double u, double alpha_l) {
    const double kl = std::sqrt(std::max(0.0, alpha_l * alpha_l - u * u));
    return u * std::cos(u) + kl * std::sin(u);
}

}  // namespace

std::vector<EigenRoot> finite_well_spectrum(const FiniteWellDeltaSpec& spec) {
    validate(spec);
    const auto sc = well_scales(spec);
    // roots arrive roughly every pi in u = kL; keep the sampling density fixed
    const int samples = std::max(4000, static_cast<int>(std::ceil(40.0 * sc.alpha_l)));
    auto even = roots::find_roots([&](double u) { return well_even_condition(u, sc.alpha_l); },
                                  1e-9, sc.alpha_l * (1.0 - 1e-12), samples, {}, 1e-13);
    auto odd = roots::find_roots([&](double u) { return well_odd_condition(u, sc.alpha_l); },
                                 1e-9, sc.alpha_l * (1.0 - 1e-12), samples, {}, 1e-13);
    auto to_energy = [&](double u) {
        const double k = u / spec.L;
        return sc.h2m * k * k;
    };
    std::vector<EigenRoot> all;
    for (const auto& r : even) {
        EigenRoot e;
        e.energy = to_energy(r.x);
        e.scan_value = r.x;
        e.residual = r.residual;
        e.parity = Parity::even;
        e.bracket = r.bracket;
        e.iterations = r.iterations;
        all.push_back(e);
    }
    for (const auto& r : odd) {
        EigenRoot e;
        e.energy = to_energy(r.x);
        e.scan_value = r.x;
        e.residual = r.residual;
        e.parity = Parity::odd;
        e.bracket = r.bracket;
        e.iterations = r.iterations;
        all.push_back(e);
    }
    std::sort(all.begin(), all.end(),
              [](const EigenRoot& a, const EigenRoot& b) { return a.energy < b.energy; });
    for (std::size_t i = 0; i < all.size(); ++i) all[i].ordinal = static_cast<int>(i);
    return all;
}

double finite_well_delta_condition(double E, const FiniteWellDeltaSpec& spec) {
    if (!(E > 0.0 && E < spec.V0))
        throw std::domain_error("finite_well_delta_condition: requires 0 < E < V0");
    const Units u = spec.units;
    const double t = std::tan(std::sqrt(2.0 * u.mass * E) * spec.L / u.hbar);
    const double lhs = E * t - std::sqrt(E * (spec.V0 - E));
    const double rhs = -spec.lambda * std::sqrt(u.mass) / (std::sqrt(2.0) * u.hbar) *
                       (std::sqrt(spec.V0 - E) * t + std::sqrt(E));
    return lhs - rhs;
}

std::vector<double> finite_well_condition_singularities(const FiniteWellDeltaSpec& spec) {
    // tan(kL) poles at kL = (2j+1) pi/2
    std::vector<double> poles;
    const double h2m = spec.units.h2m();
    for (int j = 0;; ++j) {
        const double kl = (2 * j + 1) * M_PI / 2.0;
        const double E = h2m * kl * kl / (spec.L * spec.L);
        if (E >= spec.V0) break;
        poles.push_back(E);
    }
    return poles;
}

std::vector<EigenRoot> finite_well_delta_even_roots(const FiniteWellDeltaSpec& spec) {
    validate(spec);
    auto poles = finite_well_condition_singularities(spec);
    auto f = [&](double E) { return finite_well_delta_condition(E, spec); };
    const double eps = 1e-10 * spec.V0;
    const int samples =
        std::max(6000, static_cast<int>(std::ceil(80.0 * well_scales(spec).alpha_l)));
    auto rs = roots::find_roots(f, eps, spec.V0 - eps, samples, poles, 1e-13 * spec.V0);
    return label_ascending(std::move(rs), [](double E) { return E; }, Parity::even);
}

std::vector<EigenRoot> finite_well_delta_spectrum(const FiniteWellDeltaSpec& spec) {
    auto even = finite_well_delta_even_roots(spec);
    auto all = finite_well_spectrum(spec);  // for the unshifted odd states
    std::vector<EigenRoot> merged = std::move(even);
    for (const auto& s : all)
        if (s.parity == Parity::odd) merged.push_back(s);
    std::sort(merged.begin(), merged.end(),
              [](const EigenRoot& a, const EigenRoot& b) { return a.energy < b.energy; });
    for (std::size_t i = 0; i < merged.size(); ++i) merged[i].ordinal = static_cast<int>(i);
    return merged;
}

double finite_well_wavefunction(const FiniteWellDeltaSpec& spec, const EigenRoot& state,
                                double x) {
    const double h2m = spec.units.h2m();
    const double k = std::sqrt(state.energy / h2m);
    const double kappa = std::sqrt((spec.V0 - state.energy) / h2m);
    const double ax = std::fabs(x);
    if (state.parity == Parity::even) {
        if (ax <= spec.L) return std::cos(k * x);
        return std::cos(k * spec.L) * std::exp(-kappa * (ax - spec.L));
    }
    if (ax <= spec.L) return std::sin(k * x);
    const double sign = x >= 0.0 ? 1.0 : -1.0;
    return sign * std::sin(k * spec.L) * std::exp(-kappa * (ax - spec.L));
}

// ----------------------------------------------------------------- oscillator

void validate(const OscillatorDeltaSpec& s) {
    validate_units(s.units);
    if (!(s.omega > 0.0)) throw std::invalid_argument("oscillator: omega must be positive");
}

double oscillator_xi(const OscillatorDeltaSpec& spec) {
    return std::sqrt(spec.units.hbar / (2.0 * spec.units.mass * spec.omega));
}

double sho_delta_condition(double E, const OscillatorDeltaSpec& spec) {
    const Units u = spec.units;
    const double a = -E / (u.hbar * spec.omega);
    const double ratio = specfun::gamma(0.75 - 0.5 * a) / specfun::gamma(0.25 - 0.5 * a);
    const double tan_term = tanpi(0.25 + 0.5 * a);
    const double rhs = u.mass * spec.lambda * oscillator_xi(spec) / (u.hbar * u.hbar);
    return std::sqrt(2.0) * ratio * tan_term - rhs;
}

std::vector<double> sho_condition_singularities(const OscillatorDeltaSpec& spec, double Emin,
                                                double Emax) {
    std::vector<double> s;
    const double hw = spec.units.hbar * spec.omega;
    // tan poles at the odd levels E = (2j + 3/2) hbar omega
    for (int j = 0;; ++j) {
        const double E = (2.0 * j + 1.5) * hw;
        if (E > Emax) break;
        if (E > Emin) s.push_back(E);
    }
    // Gamma-factor poles on the negative axis, E = -(1/2 + j) hbar omega
    for (int j = 0;; ++j) {
        const double E = -(0.5 + j) * hw;
        if (E < Emin) break;
        if (E < Emax) s.push_back(E);
    }
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<EigenRoot> sho_even_roots(const OscillatorDeltaSpec& spec, int count) {
    validate(spec);
    if (count < 1) throw std::invalid_argument("sho_even_roots: count must be >= 1");
    const Units u = spec.units;
    const double hw = u.hbar * spec.omega;
    // the ground root sinks below 0.5 hw for attractive lambda; keep headroom
    const double free_delta_depth =
        u.mass * spec.lambda * spec.lambda / (2.0 * u.hbar * u.hbar);
    const double Emin = -2.0 * free_delta_depth - hw;
    const double Emax = (2.0 * count + 1.0) * hw;
    auto f = [&](double E) { return sho_delta_condition(E, spec); };
    auto sing = sho_condition_singularities(spec, Emin, Emax);
    auto rs = roots::find_roots(f, Emin, Emax, std::max(4000, 800 * count), sing, 1e-13 * hw);
    if (static_cast<int>(rs.size()) < count)
        throw NoConvergenceError("sho_even_roots: could not locate requested states");
    rs.resize(count);
    return label_ascending(std::move(rs), [](double E) { return E; }, Parity::even);
}

std::vector<EigenRoot> sho_delta_spectrum(const OscillatorDeltaSpec& spec, int count) {
    validate(spec);
    const double hw = spec.units.hbar * spec.omega;
    const int n_even = count / 2 + 1;
    auto merged = sho_even_roots(spec, n_even);
    for (int n = 0; n < count / 2 + 1; ++n) {
        EigenRoot e;
        e.energy = (2.0 * n + 1.5) * hw;  // antisymmetric states are unshifted
        e.scan_value = e.energy;
        e.parity = Parity::odd;
        merged.push_back(e);
    }
    std::sort(merged.begin(), merged.end(),
              [](const EigenRoot& a, const EigenRoot& b) { return a.energy < b.energy; });
    merged.resize(count);
    for (std::size_t i = 0; i < merged.size(); ++i) merged[i].ordinal = static_cast<int>(i);
    return merged;
}

// ------------------------------------------------------------------ hydrogen

void validate(const HydrogenDeltaSpec& s) {
    validate_units(s.units);
    if (!(s.a > 0.0)) throw std::invalid_argument("hydrogen: a must be positive");
    if (!(s.e2 > 0.0)) throw std::invalid_argument("hydrogen: e2 must be positive");
}

double hydrogen_alpha_to_energy(double alpha, const HydrogenDeltaSpec& spec) {
    const Units u = spec.units;
    const double k = spec.e2 * u.mass / (u.hbar * u.hbar * alpha);
    return -u.h2m() * k * k;
}

double hydrogen_energy_to_alpha(double E, const HydrogenDeltaSpec& spec) {
    const Units u = spec.units;
    const double k = std::sqrt(-E / u.h2m());
    return spec.e2 * u.mass / (u.hbar * u.hbar * k);
}

double hydrogen_delta_condition(double E, const HydrogenDeltaSpec& spec) {
    if (!(E < 0.0)) throw std::domain_error("hydrogen_delta_condition: requires E < 0");
    const Units u = spec.units;
    const double k = std::sqrt(-E / u.h2m());
    const double alpha = spec.e2 * u.mass / (u.hbar * u.hbar * k);
    const double a = 1.0 - alpha;
    const double z = 2.0 * k * spec.a;

    const double m_val = specfun::kummer_m(a, 2.0, z);
    const double u_val = specfun::tricomi_u_int(a, 2, z);
    // d/d rho = 2 d/dz
    const double m_rho = 2.0 * specfun::kummer_m_derivative(a, 2.0, z);
    const double u_rho = 2.0 * specfun::tricomi_u_int_derivative(a, 2, z);
    const double coupling = 2.0 * u.mass * spec.lambda / (u.hbar * u.hbar * k);
    return m_rho * u_val - m_val * u_rho - coupling * m_val * u_val;
}

std::vector<EigenRoot> hydrogen_delta_spectrum(const HydrogenDeltaSpec& spec, int count) {
    validate(spec);
    if (count < 1) throw std::invalid_argument("hydrogen_delta_spectrum: count must be >= 1");
    auto f = [&](double alpha) {
        return hydrogen_delta_condition(hydrogen_alpha_to_energy(alpha, spec), spec);
    };
    const double lo = 0.05;
    const double hi = count + 0.75;
    auto rs = roots::find_roots(f, lo, hi, std::max(3000, 1200 * count), {}, 1e-13);
    if (static_cast<int>(rs.size()) < count)
        throw NoConvergenceError("hydrogen_delta_spectrum: could not locate requested states");
    rs.resize(count);
    return label_ascending(std::move(rs),
                           [&](double alpha) { return hydrogen_alpha_to_energy(alpha, spec); });
}

}  // namespace deltaspec::models
