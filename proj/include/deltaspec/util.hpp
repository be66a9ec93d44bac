#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace deltaspec {

// Thrown when a special function is evaluated exactly on a pole.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an adaptive series fails to stabilize within its term budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative solver exceeds its iteration limit.
struct NoConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Units {
    double hbar = 1.0;
    double mass = 0.5;  // defaults give hbar^2/(2 m) = 1

    double h2m() const { return hbar * hbar / (2.0 * mass); }
};

inline void validate_units(const Units& u) {
    if (!(u.hbar > 0.0) || !(u.mass > 0.0))
        throw std::invalid_argument("units: hbar and mass must be positive");
}

namespace util {

// Neumaier-compensated accumulator. All partial sums in this project go
// through one of these so results are reproducible digit for digit.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

    // the compensated pair combined at extended precision; resolves sums a
    // little below one double ulp
    long double value_extended() const {
        return static_cast<long double>(sum_) + static_cast<long double>(comp_);
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sin(pi x), cos(pi x), accurate near the zeros of either factor.
inline double sinpi(double x) {
    double r = std::remainder(x, 2.0);  // exact, in [-1, 1]
    double a = std::fabs(r);
    double s = (a <= 0.5) ? std::sin(M_PI * a) : std::sin(M_PI * (1.0 - a));
    return r < 0.0 ? -s : s;
}

inline double cospi(double x) {
    double r = std::fabs(std::remainder(x, 2.0));  // [0, 1]
    if (r <= 0.25) return std::cos(M_PI * r);
    if (r < 0.75) return std::sin(M_PI * (0.5 - r));
    return -std::cos(M_PI * (1.0 - r));
}

inline double tanpi(double x) { return sinpi(x) / cospi(x); }

// cot(pi x), relative-accurate next to the poles at integer x.
inline double cotpi(double x) { return cospi(x) / sinpi(x); }

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::rint(x);
}

// Composite trapezoid with one Richardson step (i.e. Simpson) on a uniform grid.
// n intervals, n even.
double integrate_uniform(const std::function<double(double)>& f, double a, double b, int n);

// Simpson rule over tabulated samples with uniform spacing h (odd sample count
// preferred; a trapezoid patch covers a trailing even interval).
double integrate_samples(std::span<const double> y, double h);

// Thread budget from DELTA_SPECTRA_THREADS (0 or unset = hardware concurrency).
int thread_budget();

// Fills out[i] = gen(i) for i in [0, out.size()), chunked in index order across
// the thread budget. Values do not depend on the number of threads.
void parallel_fill(std::span<double> out, const std::function<double(std::size_t)>& gen);

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace util
}  // namespace deltaspec
