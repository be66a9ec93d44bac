#pragma once

#include <functional>
#include <vector>

#include "deltaspec/models.hpp"

namespace deltaspec::oracle {

enum class DeltaMode { jump_condition, narrow_gaussian };

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int points = 1001;  // grid points including both walls, >= 3
    DeltaMode mode = DeltaMode::jump_condition;
    double width = 0.0;  // narrow_gaussian only; must be >= 2 spacings
};

void validate(const GridSpec&, const models::AnyModel&);

// Default domain for a model: walls for the box, enlarged box for the well
// (20 L each side), +-8 xi minimum for the oscillator, decay-resolved
// half-line for hydrogen.
GridSpec default_grid(const models::AnyModel& model, int points = 2001,
                      DeltaMode mode = DeltaMode::jump_condition, double width = 0.0);

// Snaps the point count upward so every delta position lands on a grid node.
GridSpec aligned(GridSpec grid, const models::AnyModel& model);

// Lowest k_states eigenvalues of the discretized problem.
//  - jump_condition: Numerov shooting; the derivative jump
//    psi'(x+) - psi'(x-) = -(2 m lambda / hbar^2) psi is applied exactly at
//    the delta node. Second-order convergent in the spacing.
//  - narrow_gaussian: second-order finite differences with the delta smeared
//    into a normalized Gaussian column, Sturm-sequence bisection.
// Throws NoConvergenceError when the requested states cannot be isolated.
std::vector<double> oracle_spectrum(const models::AnyModel& model, const GridSpec& grid,
                                    int k_states);

// Richardson-extrapolated eigenvalues over grids {N, 2N, 4N} (order-2 base,
// two elimination stages).
std::vector<double> oracle_spectrum_extrapolated(const models::AnyModel& model,
                                                 const GridSpec& base, int k_states);

// Quadrature-normalized unperturbed eigenfunction product psi_i(x0) psi_j(x0)
// from finite-difference eigenvectors (models evaluated with all deltas off).
double matrix_element_delta(const models::AnyModel& model, int i, int j, double x0,
                            const GridSpec& grid);

// Lowest k quadrature-normalized eigenvectors on the grid (finite-difference
// route, lambda as given). Exposed for the orthonormality checks.
struct GridStates {
    std::vector<double> x;                     // interior nodes
    std::vector<double> energies;              // ascending
    std::vector<std::vector<double>> vectors;  // normalized on the grid
};
GridStates fd_states(const models::AnyModel& model, const GridSpec& grid, int k_states);

}  // namespace deltaspec::oracle
