#include "deltaspec/util.hpp"

#include <algorithm>
#include <future>

namespace deltaspec::util {

double integrate_uniform(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("integrate_uniform: need at least 2 intervals");
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    KahanSum coarse, fine;
    // trapezoid at spacing 2h and h, then Richardson: (4 T_h - T_2h) / 3
    for (int i = 0; i <= n; ++i) {
        const double x = a + i * h;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        fine.add(w * f(x));
        if (i % 2 == 0) coarse.add(((i == 0 || i == n) ? 0.5 : 1.0) * f(x));
    }
    const double t_h = fine.value() * h;
    const double t_2h = coarse.value() * 2.0 * h;
    return (4.0 * t_h - t_2h) / 3.0;
}

double integrate_samples(std::span<const double> y, double h) {
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("integrate_samples: need at least 3 samples");
    KahanSum s;
    std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;  // last index covered by Simpson
    s.add(y[0]);
    for (std::size_t i = 1; i < last; ++i) s.add((i % 2 == 1 ? 4.0 : 2.0) * y[i]);
    s.add(y[last]);
    double total = s.value() * h / 3.0;
    if (n % 2 == 0) total += 0.5 * h * (y[n - 2] + y[n - 1]);
    return total;
}

int thread_budget() {
    const char* env = std::getenv("DELTA_SPECTRA_THREADS");
    long v = 0;
    if (env && *env) {
        char* end = nullptr;
        v = std::strtol(env, &end, 10);
        if (end == env || v < 0) v = 0;
    }
    if (v == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        v = hc == 0 ? 1 : static_cast<long>(hc);
    }
    return static_cast<int>(std::max(1L, v));
}

void parallel_fill(std::span<double> out, const std::function<double(std::size_t)>& gen) {
    const std::size_t n = out.size();
    const int budget = thread_budget();
    if (budget <= 1 || n < 65536) {
        for (std::size_t i = 0; i < n; ++i) out[i] = gen(i);
        return;
    }
    const std::size_t chunks = static_cast<std::size_t>(budget);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::future<void>> work;
    for (std::size_t c = 0; c * step < n; ++c) {
        const std::size_t lo = c * step;
        const std::size_t hi = std::min(n, lo + step);
        work.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = gen(i);
        }));
    }
    for (auto& w : work) w.get();
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need two equally sized samples");
    const double n = static_cast<double>(x.size());
    KahanSum sx, sy, sxx, sxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
        sxx.add(x[i] * x[i]);
        sxy.add(x[i] * y[i]);
    }
    const double denom = n * sxx.value() - sx.value() * sx.value();
    return (n * sxy.value() - sx.value() * sy.value()) / denom;
}

}  // namespace deltaspec::util
