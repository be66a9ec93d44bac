#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltaspec/util.hpp"

namespace deltaspec::series {

enum class Acceleration { none, adjacent_average };

struct SeriesRun {
    std::string id;
    std::string term_convention;       // index rule of the generator
    std::map<std::string, double> params;
    std::vector<double> partial_sums;  // compensated, fixed ascending term order
    std::vector<double> averaged;      // adjacent averages, when requested
    std::optional<double> target;      // closed-form limit, when known
    std::optional<double> target_alt;  // alternate candidate for disputed constants
    Acceleration acceleration = Acceleration::none;
    double tail_correction = 0.0;      // additive correction for the final sum
};

// sum over odd l != n of 1/(l^2 - n^2); closed form 1/(4 n^2).
SeriesRun odd_reciprocal_sum(int n, long terms);

// sum over l = 0, 1, 2, ... (l != n) of 1/(l^2 - n^2); closed form -1/(4 n^2).
SeriesRun unrestricted_sum(int n, long terms);

// sum over odd l != n of sin(l p pi) sin(l pi x / L) / (l^2 - n^2).
// Stored targets: the closed form with cos(4 n p pi) and the cos(2 n p pi)
// alternate. Valid for 0 <= p <= 1, 0 <= x <= pL.
SeriesRun sum_rule_series(int n, double p, double x, double L, long terms);

// Grouped sawtooth series sum_k (-1)^{k+1}/(4k) [1/(4k-2) + 1/(4k+2)] -> (pi-2)/8.
// Each group is built as the pairwise sum of the underlying +-1/(l^2-1) terms,
// so the grouping equivalence with the raw series is exact.
struct PiSeriesRun {
    SeriesRun run;                  // partial sums S(j)
    std::vector<double> pi_raw;     // 8 S(j) + 2
    std::vector<double> pi_avg;     // 8 avg(j) + 2 (j >= 2), when accelerated
    // compensated sums carried at extended precision; the deep averaged rows
    // resolve below one double ulp of pi
    std::vector<long double> partial_sums_ext;
    long double pi_avg_ext(long j) const;  // 1-based, j >= 2
};
PiSeriesRun pi_series(long j, bool accelerate);

// term i (1-based) of the ungrouped sawtooth series: sign / (l_i^2 - 1) with
// l_i = 2i + 1 and sign pattern + + - - + + ...
double pi_series_raw_term(long i);

// bracket series sum_{l != n} 4^{-(n+l)} (2l)!(2n)!/((l!)^2 (n!)^2 (n-l)) with
// sqrt(l)-tail correction; both candidate closed forms attached
// (-(1/pi^c) [Gamma(n+1/2)/Gamma(n+1)]^2 [psi(n+1) - psi(n+1/2)], c = 1, 2).
SeriesRun sho_series(int n, long l_max);

// adjacent averages: out[j] = (in[j] + in[j+1]) / 2, length reduced by one.
std::vector<double> accelerate_avg(std::span<const double> sums);

}  // namespace deltaspec::series
