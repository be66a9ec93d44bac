#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "deltaspec/roots.hpp"
#include "deltaspec/util.hpp"

namespace deltaspec::models {

enum class Parity { even, odd, none };

struct EigenRoot {
    double energy = 0.0;      // eigenvalue in energy units
    double scan_value = 0.0;  // value of the scan variable at the root (k, E or alpha)
    double residual = 0.0;
    int ordinal = 0;          // stable ascending label, 0-based
    Parity parity = Parity::none;
    roots::Bracket bracket;
    int iterations = 0;
};

struct DeltaSpike {
    double p = 0.5;       // fractional position in (0, 1)
    double lambda = 0.0;  // strength (energy x length); attractive for lambda > 0
};

// ---------------------------------------------------------------------------
// Hard-wall box on [0, L] with attractive deltas at x = p_i L.
struct BoxDeltaSpec {
    double L = 1.0;
    std::vector<DeltaSpike> deltas;
    Units units;
};

void validate(const BoxDeltaSpec&);

// Transfer-matrix residual: propagate (sin, cos) coefficients through the
// continuity + derivative-jump condition at every delta; residual is
// k * psi(L), zero exactly at the eigen-wavenumbers.
double box_delta_condition(double k, const BoxDeltaSpec& spec);

// Closed single-delta form k sin kL - (2 m lambda / hbar^2) sin(kpL) sin(k(1-p)L),
// kept separate so the transfer-matrix route can be checked against it.
double box_delta_condition_single(double k, const BoxDeltaSpec& spec);

std::vector<EigenRoot> box_delta_spectrum(const BoxDeltaSpec& spec, int count);

struct BoundStateResult {
    std::optional<EigenRoot> state;  // negative-energy root, when it exists
    double critical_length = 0.0;    // hbar^2 / (m lambda), in half-width units
};

// Negative-energy state of a single centered delta in a box of width spec.L
// (half-width spec.L / 2). The root is detected by scanning the hyperbolic
// matching condition tanh(kappa L/2) = kappa hbar^2/(m lambda); it exists
// exactly when the half-width exceeds the critical length.
BoundStateResult box_delta_bound_state(const BoxDeltaSpec& spec);

// ---------------------------------------------------------------------------
// Finite square well: V = 0 for |x| < L, V = V0 outside, delta at the origin.
struct FiniteWellDeltaSpec {
    double L = 1.0;  // half-width
    double V0 = 10.0;
    double lambda = 0.0;
    Units units;
};

void validate(const FiniteWellDeltaSpec&);

// Unperturbed bound states (lambda ignored), alternating parity, all of them.
std::vector<EigenRoot> finite_well_spectrum(const FiniteWellDeltaSpec& spec);

// Even-sector matching condition with the delta switched on:
//   E tan(sqrt(2mE) L / hbar) - sqrt(E (V0 - E))
//     = -lambda sqrt(m)/(sqrt(2) hbar) [ sqrt(V0-E) tan(sqrt(2mE) L/hbar) + sqrt(E) ]
// (attractive delta; reduces to tan kL = kappa/k at lambda = 0).
// Domain error outside (0, V0).
double finite_well_delta_condition(double E, const FiniteWellDeltaSpec& spec);

// Poles of the tan factor inside (0, V0), for scan exclusion.
std::vector<double> finite_well_condition_singularities(const FiniteWellDeltaSpec& spec);

// Perturbed spectrum: even roots of the delta condition merged with the
// (unshifted) odd states.
std::vector<EigenRoot> finite_well_delta_spectrum(const FiniteWellDeltaSpec& spec);

// Even-sector roots only, ordinal = position among even states.
std::vector<EigenRoot> finite_well_delta_even_roots(const FiniteWellDeltaSpec& spec);

// Piecewise bound-state wavefunction, unnormalized (inside amplitude 1).
// Only meaningful for the unperturbed well states.
double finite_well_wavefunction(const FiniteWellDeltaSpec& spec, const EigenRoot& state,
                                double x);

// ---------------------------------------------------------------------------
// Harmonic oscillator with a delta at the origin.
struct OscillatorDeltaSpec {
    double omega = 1.0;
    double lambda = 0.0;
    Units units{1.0, 1.0};  // oscillator convention: hbar = m = 1
};

void validate(const OscillatorDeltaSpec&);

double oscillator_xi(const OscillatorDeltaSpec& spec);  // sqrt(hbar / (2 m omega))

// Even-sector eigenvalue condition through the parabolic-cylinder index
// a = -E/(hbar omega):
//   sqrt(2) Gamma(3/4 - a/2)/Gamma(1/4 - a/2) tan(pi/4 + pi a/2) = m lambda xi / hbar^2.
// Zeros are the even eigenvalues; odd levels are unshifted by a delta at the
// origin and are injected analytically by the spectrum routine.
double sho_delta_condition(double E, const OscillatorDeltaSpec& spec);

// tan poles (and Gamma poles for E < 0) inside [Emin, Emax], ascending.
std::vector<double> sho_condition_singularities(const OscillatorDeltaSpec& spec, double Emin,
                                                double Emax);

std::vector<EigenRoot> sho_even_roots(const OscillatorDeltaSpec& spec, int count);
std::vector<EigenRoot> sho_delta_spectrum(const OscillatorDeltaSpec& spec, int count);

// ---------------------------------------------------------------------------
// One-dimensional hydrogen on the half-line with a delta at x = a > 0.
struct HydrogenDeltaSpec {
    double a = 1.0;
    double lambda = 0.0;
    double e2 = 1.0;  // Coulomb coupling e^2
    Units units;
};

void validate(const HydrogenDeltaSpec&);

// Matching condition at rho = k a for E < 0, k = sqrt(2m|E|)/hbar,
// alpha = e^2 m / (hbar^2 k), with M = M(1-alpha, 2, 2 rho), U = U(1-alpha, 2, 2 rho):
//   M' U - M U' - (2 m lambda / (hbar^2 k)) M U = 0,
// primes with respect to rho (contiguous-derivative identities).
double hydrogen_delta_condition(double E, const HydrogenDeltaSpec& spec);

double hydrogen_alpha_to_energy(double alpha, const HydrogenDeltaSpec& spec);
double hydrogen_energy_to_alpha(double E, const HydrogenDeltaSpec& spec);

// Lowest `count` bound states, scanned in the alpha variable (roots sit near
// positive integers at lambda = 0).
std::vector<EigenRoot> hydrogen_delta_spectrum(const HydrogenDeltaSpec& spec, int count);

// ---------------------------------------------------------------------------
using AnyModel =
    std::variant<BoxDeltaSpec, FiniteWellDeltaSpec, OscillatorDeltaSpec, HydrogenDeltaSpec>;

}  // namespace deltaspec::models
