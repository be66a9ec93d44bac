#pragma once

#include <functional>
#include <span>
#include <vector>

#include "deltaspec/util.hpp"

namespace deltaspec::roots {

using Fn = std::function<double(double)>;

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    Bracket bracket;
};

struct ScanOptions {
    // Half-width of the zone around each registered singularity that samples
    // are pushed out of. Negative = 1e-6 of the scan width.
    double exclusion_radius = -1.0;
};

// Samples f uniformly over [lo, hi] and returns a bracket for every sign
// change between adjacent samples whose interval does not straddle a
// registered singularity. Samples falling inside a singularity's exclusion
// zone are moved to its edge. `singularities` must be sorted ascending.
std::vector<Bracket> scan_brackets(const Fn& f, double lo, double hi, int n_samples,
                                   std::span<const double> singularities,
                                   ScanOptions opts = {});

// Safeguarded secant/bisection refinement. The sign change is preserved at
// every step; stops once the bracket width is below tol. Deterministic.
RootResult refine(const Fn& f, Bracket bracket, double tol = 1e-12, int max_iter = 200);

// scan + refine, results ascending.
std::vector<RootResult> find_roots(const Fn& f, double lo, double hi, int n_samples,
                                   std::span<const double> singularities, double tol = 1e-12,
                                   ScanOptions opts = {});

}  // namespace deltaspec::roots
