#include "deltaspec/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace deltaspec::roots {

namespace {

bool opposite_signs(double a, double b) {
    return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

}  // namespace

std::vector<Bracket> scan_brackets(const Fn& f, double lo, double hi, int n_samples,
                                   std::span<const double> singularities, ScanOptions opts) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("scan_brackets: invalid range");
    if (n_samples < 2) throw std::invalid_argument("scan_brackets: need at least 2 samples");
    const double radius =
        opts.exclusion_radius >= 0.0 ? opts.exclusion_radius : 1e-6 * (hi - lo);

    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n_samples) + 2 * singularities.size());
    const double step = (hi - lo) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        double x = (i == n_samples - 1) ? hi : lo + i * step;
        // push samples out of exclusion zones
        for (double s : singularities) {
            if (std::fabs(x - s) < radius) x = (x < s) ? s - radius : s + radius;
        }
        if (x < lo || x > hi) continue;
        xs.push_back(x);
    }
    // zone edges become samples so roots hugging a pole are still seen
    for (double s : singularities) {
        if (s - radius > lo && s - radius < hi) xs.push_back(s - radius);
        if (s + radius > lo && s + radius < hi) xs.push_back(s + radius);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Bracket> out;
    double prev_x = xs.empty() ? 0.0 : xs.front();
    double prev_f = xs.empty() ? 0.0 : f(prev_x);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double x = xs[i];
        const double fx = f(x);
        bool blocked = false;
        for (double s : singularities) {
            if (s > prev_x && s < x) {
                blocked = true;
                break;
            }
        }
        if (!blocked && opposite_signs(prev_f, fx)) out.push_back({prev_x, x, prev_f, fx});
        prev_x = x;
        prev_f = fx;
    }
    return out;
}

RootResult refine(const Fn& f, Bracket bracket, double tol, int max_iter) {
    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    if (!opposite_signs(fa, fb)) {
        if (fa == 0.0) return {a, 0.0, 0, bracket};
        if (fb == 0.0) return {b, 0.0, 0, bracket};
        throw std::invalid_argument("refine: bracket does not straddle a sign change");
    }
    int it = 0;
    double x = a, fx = fa;
    // never demand a bracket tighter than the local double spacing
    const double ulp_floor =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b));
    tol = std::max(tol, ulp_floor);
    while (b - a > tol && it < max_iter) {
        ++it;
        // secant proposal, clamped away from the bracket edges
        double xs = b - fb * (b - a) / (fb - fa);
        const double guard = 0.01 * (b - a);
        if (!(xs > a + guard && xs < b - guard)) xs = 0.5 * (a + b);
        x = xs;
        fx = f(x);
        if (fx == 0.0) return {x, 0.0, it, bracket};
        if (opposite_signs(fa, fx)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    if (b - a > tol)
        throw NoConvergenceError("refine: no convergence within iteration limit");
    // report the endpoint with the smaller residual
    if (std::fabs(fa) <= std::fabs(fb)) {
        x = a;
        fx = fa;
    } else {
        x = b;
        fx = fb;
    }
    return {x, fx, it, bracket};
}

std::vector<RootResult> find_roots(const Fn& f, double lo, double hi, int n_samples,
                                   std::span<const double> singularities, double tol,
                                   ScanOptions opts) {
    std::vector<RootResult> out;
    for (const Bracket& b : scan_brackets(f, lo, hi, n_samples, singularities, opts))
        out.push_back(refine(f, b, tol));
    std::sort(out.begin(), out.end(),
              [](const RootResult& l, const RootResult& r) { return l.x < r.x; });
    return out;
}

}  // namespace deltaspec::roots
