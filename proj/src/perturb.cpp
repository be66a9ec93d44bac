#include "deltaspec/perturb.hpp"

#include <atomic>
#include <cmath>

#include "deltaspec/specfun.hpp"

namespace deltaspec::perturb {

using models::EigenRoot;
using models::Parity;
using util::KahanSum;

// ------------------------------------------------------------------ box

PTCoefficients box_pt_closed(int n, double p, double L, Units units) {
    if (n < 1) throw std::invalid_argument("box_pt_closed: n >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("box_pt_closed: 0 < p < 1");
    const double hbar2 = units.hbar * units.hbar;
    const double s = util::sinpi(n * p);
    const double c = util::cospi(n * p);
    PTCoefficients out;
    out.provenance = Provenance::closed_form;
    out.E0 = n * n * M_PI * M_PI * hbar2 / (2.0 * units.mass * L * L);
    out.E1 = -(2.0 / L) * s * s;
    // sin^4 [1 + 2 pi n (1-2p) cot] expanded so the node limit is exact
    out.E2 = -(2.0 * units.mass / (n * n * hbar2 * M_PI * M_PI)) *
             (s * s * s * s + 2.0 * M_PI * n * (1.0 - 2.0 * p) * s * s * s * c);
    return out;
}

PTCoefficients box_e2_sum(int n, double p, double L, Units units, long l_max) {
    if (l_max <= n) throw std::invalid_argument("box_e2_sum: l_max must exceed n");
    const double hbar2 = units.hbar * units.hbar;
    const double sn = util::sinpi(n * p);
    const double pref = 8.0 * units.mass / (hbar2 * M_PI * M_PI) * sn * sn;

    std::vector<double> terms(static_cast<std::size_t>(l_max));
    util::parallel_fill(terms, [&](std::size_t idx) {
        const long l = static_cast<long>(idx) + 1;
        if (l == n) return 0.0;
        const double sl = util::sinpi(l * p);
        return sl * sl / (static_cast<double>(n) * n - static_cast<double>(l) * l);
    });
    KahanSum sum;
    for (double t : terms) sum.add(t);

    PTCoefficients out;
    out.provenance = Provenance::sum_over_states;
    out.l_max = l_max;
    out.E0 = n * n * M_PI * M_PI * hbar2 / (2.0 * units.mass * L * L);
    out.E1 = -(2.0 / L) * sn * sn;
    out.E2 = pref * sum.value();
    out.tail_estimate = std::fabs(pref) / static_cast<double>(l_max);
    return out;
}

double box_psi1_closed(int n, double p, double x, double L, Units units) {
    if (!(x >= 0.0 && x <= p * L + 1e-12))
        throw std::domain_error("box_psi1_closed: valid only on 0 <= x <= pL");
    const double hbar2 = units.hbar * units.hbar;
    const double k0 = n * M_PI / L;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double s = util::sinpi(n * p);
    const double k1 = sign * 2.0 * units.mass / (k0 * L * hbar2) * s * s;
    const double amp = std::sqrt(2.0 / L);
    return amp * std::sin(n * M_PI * x / L) * (k1 / (2.0 * k0)) * sign *
               util::cospi(4.0 * n * p) +
           amp * k1 * x * std::cos(n * M_PI * x / L);
}

double box_psi1_sum(int n, double p, double x, double L, Units units, long l_max) {
    const double hbar2 = units.hbar * units.hbar;
    const double e_unit = M_PI * M_PI * hbar2 / (2.0 * units.mass * L * L);  // E = e_unit n^2
    const double sn = util::sinpi(n * p);
    const double amp = std::sqrt(2.0 / L);
    std::vector<double> terms(static_cast<std::size_t>(l_max));
    util::parallel_fill(terms, [&](std::size_t idx) {
        const long l = static_cast<long>(idx) + 1;
        if (l == n) return 0.0;
        const double sl = util::sinpi(l * p);
        const double num = sn * sl * std::sin(l * M_PI * x / L);
        return num / (e_unit * (static_cast<double>(n) * n - static_cast<double>(l) * l));
    });
    KahanSum sum;
    for (double t : terms) sum.add(t);
    return -amp * (2.0 / L) * sum.value();
}

WavefunctionShift box_psi1(int n, double p, std::vector<double> grid, double L, Units units,
                           Psi1Form form, long l_max) {
    WavefunctionShift out;
    out.n = n;
    out.form = form;
    out.l_max = (form == Psi1Form::sum_form) ? l_max : 0;
    out.grid = std::move(grid);
    out.values.reserve(out.grid.size());
    for (double x : out.grid) {
        out.values.push_back(form == Psi1Form::closed_form
                                 ? box_psi1_closed(n, p, x, L, units)
                                 : box_psi1_sum(n, p, x, L, units, l_max));
    }
    return out;
}

// ------------------------------------------------------------- oscillator

PTCoefficients sho_pt_closed(int n, const models::OscillatorDeltaSpec& spec, Parity parity) {
    if (n < 0) throw std::invalid_argument("sho_pt_closed: n >= 0");
    const Units u = spec.units;
    PTCoefficients out;
    out.provenance = Provenance::closed_form;
    if (parity == Parity::odd) {
        out.E0 = (2.0 * n + 1.5) * u.hbar * spec.omega;
        return out;  // antisymmetric states do not feel the delta
    }
    const double ratio = specfun::gamma(n + 0.5) / specfun::gamma(n + 1.0);
    out.E0 = (2.0 * n + 0.5) * u.hbar * spec.omega;
    out.E1 = -std::sqrt(u.mass * spec.omega / u.hbar) / std::sqrt(M_PI) * ratio;
    out.E2 = -u.mass / (2.0 * M_PI * M_PI * u.hbar * u.hbar) * ratio * ratio *
             (specfun::digamma(n + 1.0) - specfun::digamma(n + 0.5));
    return out;
}

ShoBracketSum sho_bracket_sum(int n, long l_max) {
    if (l_max <= n) throw std::invalid_argument("sho_bracket_sum: l_max must exceed n");
    // b_l = (2l)! / (4^l (l!)^2), by ratio recurrence b_l = b_{l-1} (2l-1)/(2l)
    std::vector<double> b(static_cast<std::size_t>(l_max) + 1);
    b[0] = 1.0;
    for (long l = 1; l <= l_max; ++l) b[l] = b[l - 1] * (2.0 * l - 1.0) / (2.0 * l);
    KahanSum sum;
    const double bn = b[n];
    for (long l = 0; l <= l_max; ++l) {
        if (l == n) continue;
        sum.add(bn * b[l] / static_cast<double>(n - l));
    }
    // tail: b_l ~ (1/sqrt(pi l))(1 - 1/(8l) + ...), 1/(n-l) = -(1/l)(1 + n/l + ...)
    auto zeta_tail = [&](double s) {
        const double L = static_cast<double>(l_max);
        return std::pow(L, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(L, -s) +
               s / 12.0 * std::pow(L, -s - 1.0);
    };
    const double s32 = zeta_tail(1.5);
    const double s52 = zeta_tail(2.5);
    const double s72 = zeta_tail(3.5);
    const double nn = static_cast<double>(n);
    const double tail = -bn / std::sqrt(M_PI) *
                        (s32 + (nn - 0.125) * s52 + (nn * nn - nn / 8.0 + 1.0 / 128.0) * s72);
    ShoBracketSum out;
    out.raw = sum.value();
    out.tail = tail;
    out.corrected = out.raw + tail;
    return out;
}

PTCoefficients sho_e2_sum(int n, const models::OscillatorDeltaSpec& spec, long l_max) {
    const Units u = spec.units;
    const auto bracket = sho_bracket_sum(n, l_max);
    PTCoefficients out;
    out.provenance = Provenance::sum_over_states;
    out.l_max = l_max;
    out.E0 = (2.0 * n + 0.5) * u.hbar * spec.omega;
    out.E1 = sho_pt_closed(n, spec).E1;
    const double pref = u.mass / (2.0 * M_PI * u.hbar * u.hbar);
    out.E2 = pref * bracket.corrected;
    out.tail_estimate = std::fabs(pref * bracket.tail);
    return out;
}

// ------------------------------------------------------- numeric extraction

namespace {
std::atomic<bool> g_lambda_fault{false};
}

void set_lambda_sign_fault(bool enabled) { g_lambda_fault.store(enabled); }
bool lambda_sign_fault() { return g_lambda_fault.load(); }

PTCoefficients extract_from_energy(const std::function<double(double)>& energy_of_lambda,
                                   ExtractOptions opts) {
    const double flip = g_lambda_fault.load() ? -1.0 : 1.0;
    auto E = [&](double lam) { return energy_of_lambda(flip * lam); };
    const double s = opts.step;
    PTCoefficients out;
    out.provenance = Provenance::numeric_extraction;
    out.step = s;
    const double e0 = E(0.0);
    out.E0 = e0;
    if (opts.symmetric) {
        const double ep1 = E(s), em1 = E(-s);
        const double ep2 = E(0.5 * s), em2 = E(-0.5 * s);
        const double d1 = (ep1 - em1) / (2.0 * s);
        const double d2 = (ep2 - em2) / s;
        out.E1 = (4.0 * d2 - d1) / 3.0;
        const double h1 = (ep1 - 2.0 * e0 + em1) / (s * s);
        const double h2 = (ep2 - 2.0 * e0 + em2) / (0.25 * s * s);
        out.E2 = 0.5 * (4.0 * h2 - h1) / 3.0;
    } else {
        // forward stencils on {0, s/2, s, 2s}, one Richardson stage each
        const double e_half = E(0.5 * s), e1 = E(s), e2 = E(2.0 * s);
        const double d1 = (-3.0 * e0 + 4.0 * e1 - e2) / (2.0 * s);
        const double d2 = (-3.0 * e0 + 4.0 * e_half - e1) / s;
        out.E1 = (4.0 * d2 - d1) / 3.0;  // eliminates the O(s^2) term
        const double h1 = (e2 - 2.0 * e1 + e0) / (2.0 * s * s);
        const double h2 = (e1 - 2.0 * e_half + e0) / (0.5 * s * s);
        out.E2 = 2.0 * h2 - h1;  // eliminates the O(s) term
    }
    return out;
}

namespace {

// guards that the tracked branch did not hop ordinals between stencil points
void check_branch(double e_ref, double e_new, double lam_step, double scale) {
    if (std::fabs(e_new - e_ref) > 50.0 * (std::fabs(lam_step) + 1e-14) * scale)
        throw BranchJumpError("numeric_pt_extract: state ordering changed across steps");
}

}  // namespace

PTCoefficients numeric_pt_extract(const models::BoxDeltaSpec& spec, int ordinal,
                                  ExtractOptions opts) {
    if (spec.deltas.empty())
        throw std::invalid_argument("numeric_pt_extract: box spec carries no delta");
    // relative weights: lambda acts as the strength of the first delta, the
    // others keep their spec'd ratios (equal-strength arrays stay equal)
    std::vector<double> weights(spec.deltas.size(), 1.0);
    double ref = 0.0;
    for (const auto& d : spec.deltas)
        if (d.lambda != 0.0) {
            ref = d.lambda;
            break;
        }
    if (ref != 0.0)
        for (std::size_t i = 0; i < weights.size(); ++i)
            weights[i] = spec.deltas[i].lambda / ref;

    const double e_scale = spec.units.h2m() * M_PI * M_PI / (spec.L * spec.L);
    const double e0 =
        models::box_delta_spectrum([&] {
            models::BoxDeltaSpec s = spec;
            for (auto& d : s.deltas) d.lambda = 0.0;
            return s;
        }(), ordinal + 1)[ordinal].energy;
    auto energy = [&, e0](double lam) {
        models::BoxDeltaSpec s = spec;
        for (std::size_t i = 0; i < s.deltas.size(); ++i) s.deltas[i].lambda = lam * weights[i];
        const double e = models::box_delta_spectrum(s, ordinal + 1)[ordinal].energy;
        check_branch(e0, e, lam, e_scale);
        return e;
    };
    return extract_from_energy(energy, opts);
}

PTCoefficients numeric_pt_extract(const models::OscillatorDeltaSpec& spec, int even_ordinal,
                                  ExtractOptions opts) {
    const double hw = spec.units.hbar * spec.omega;
    auto at = [&](double lam) {
        models::OscillatorDeltaSpec s = spec;
        s.lambda = lam;
        return models::sho_even_roots(s, even_ordinal + 1)[even_ordinal].energy;
    };
    const double e0 = at(0.0);
    auto energy = [&, e0](double lam) {
        const double e = at(lam);
        check_branch(e0, e, lam, hw);
        return e;
    };
    return extract_from_energy(energy, opts);
}

PTCoefficients numeric_pt_extract(const models::FiniteWellDeltaSpec& spec, int even_ordinal,
                                  ExtractOptions opts) {
    opts.symmetric = false;  // only the lambda >= 0 branch is tracked
    auto energy = [&](double lam) {
        models::FiniteWellDeltaSpec s = spec;
        s.lambda = lam;
        auto evens = models::finite_well_delta_even_roots(s);
        if (static_cast<int>(evens.size()) <= even_ordinal)
            throw InsufficientStatesError("numeric_pt_extract: even state left the well");
        return evens[even_ordinal].energy;
    };
    return extract_from_energy(energy, opts);
}

PTCoefficients numeric_pt_extract(const models::HydrogenDeltaSpec& spec, int ordinal,
                                  ExtractOptions opts) {
    auto at = [&](double lam) {
        models::HydrogenDeltaSpec s = spec;
        s.lambda = lam;
        return models::hydrogen_delta_spectrum(s, ordinal + 1)[ordinal].energy;
    };
    const double e0 = at(0.0);
    auto energy = [&, e0](double lam) {
        const double e = at(lam);
        check_branch(e0, e, lam, std::fabs(e0) + 1.0);
        return e;
    };
    return extract_from_energy(energy, opts);
}

// --------------------------------------------- well bound vs continuum

double well_normalized_psi0(const models::FiniteWellDeltaSpec& spec, const EigenRoot& state) {
    if (state.parity != Parity::even) return 0.0;
    const double h2m = spec.units.h2m();
    const double kappa = std::sqrt((spec.V0 - state.energy) / h2m);
    // quadrature over [-X, X] with the evanescent tail resolved
    const double X = spec.L + 40.0 / kappa;
    auto f = [&](double x) {
        const double v = models::finite_well_wavefunction(spec, state, x);
        return v * v;
    };
    const double norm = util::integrate_uniform(f, -X, X, 40000);
    return 1.0 / std::sqrt(norm);  // psi(0) = A cos(0) = A
}

double well_bound_part_e2(const models::FiniteWellDeltaSpec& spec, int target_ordinal) {
    auto states = models::finite_well_spectrum(spec);
    if (target_ordinal < 0 || target_ordinal >= static_cast<int>(states.size()))
        throw InsufficientStatesError("well_bound_part_e2: target state index out of range");
    const auto& target = states[target_ordinal];
    if (target.parity != Parity::even)
        throw std::invalid_argument("well_bound_part_e2: target state must be even");
    int n_even = 0;
    for (const auto& s : states)
        if (s.parity == Parity::even) ++n_even;
    if (n_even < 2)
        throw InsufficientStatesError("well_bound_part_e2: need two even bound states");

    const double psi_n0 = well_normalized_psi0(spec, target);
    KahanSum sum;
    for (const auto& s : states) {
        if (s.ordinal == target.ordinal) continue;
        if (s.parity != Parity::even) continue;  // psi_odd(0) = 0
        const double psi_l0 = well_normalized_psi0(spec, s);
        sum.add(psi_n0 * psi_n0 * psi_l0 * psi_l0 / (target.energy - s.energy));
    }
    return sum.value();
}

double well_box_regularized_continuum_e2(const models::FiniteWellDeltaSpec& spec,
                                         int target_ordinal, double R_over_L) {
    const double h2m = spec.units.h2m();
    const double L = spec.L;
    const double R = R_over_L * L;
    auto states = models::finite_well_spectrum(spec);
    if (target_ordinal < 0 || target_ordinal >= static_cast<int>(states.size()))
        throw InsufficientStatesError("well_box_regularized_continuum_e2: bad target index");
    const auto& target = states[target_ordinal];
    const double psi_n0 = well_normalized_psi0(spec, target);
    const double En = target.energy;

    // even quasi-continuum states of the walled well: inside cos(kx),
    // outside C sin(q (R - x)); matching k tan kL = q cot(q(R-L)).
    // Scan in q to resolve the sin(q(R-L)) oscillation.
    auto residual_q = [&](double q) {
        const double E = spec.V0 + h2m * q * q;
        const double k = std::sqrt(E / h2m);
        return k * std::sin(k * L) * std::sin(q * (R - L)) -
               q * std::cos(q * (R - L)) * std::cos(k * L);
    };
    KahanSum sum;
    const double dq_state = M_PI / (R - L);
    double q_lo = 1e-6 * dq_state;
    double block = 40.0 * dq_state;
    const double block_cap = 4000.0 * dq_state;
    double accum_scale = 0.0;
    for (int blocks = 0; blocks < 400; ++blocks) {
        const double q_hi = q_lo + block;
        const int samples = static_cast<int>(std::ceil((q_hi - q_lo) / dq_state * 12.0));
        auto rs = roots::find_roots(residual_q, q_lo, q_hi, samples, {}, 1e-12);
        double block_sum = 0.0;
        for (const auto& r : rs) {
            const double q = r.x;
            const double E = spec.V0 + h2m * q * q;
            const double k = std::sqrt(E / h2m);
            // normalize: inside A cos kx, outside B sin(q(R-|x|)), A = 1
            const double B = std::cos(k * L) / std::sin(q * (R - L));
            const double inside = L + std::sin(2.0 * k * L) / (2.0 * k);
            const double outside =
                B * B * ((R - L) - std::sin(2.0 * q * (R - L)) / (2.0 * q));
            const double norm2 = inside + outside;
            const double psi0_sq = 1.0 / norm2;  // psi(0)^2 after normalization
            block_sum += psi_n0 * psi_n0 * psi0_sq / (En - E);
        }
        sum.add(block_sum);
        accum_scale = std::max(accum_scale, std::fabs(sum.value()));
        if (blocks > 3 && std::fabs(block_sum) < 2e-4 * accum_scale) break;
        q_lo = q_hi;
        block = std::min(block * 1.5, block_cap);
    }
    return sum.value();
}

}  // namespace deltaspec::perturb
