#include "deltaspec/series.hpp"

#include <cmath>

#include "deltaspec/perturb.hpp"
#include "deltaspec/specfun.hpp"

namespace deltaspec::series {

using util::KahanSum;

namespace {

std::vector<double> prefix_sums(std::span<const double> terms) {
    std::vector<double> sums;
    sums.reserve(terms.size());
    KahanSum acc;
    for (double t : terms) {
        acc.add(t);
        sums.push_back(acc.value());
    }
    return sums;
}

}  // namespace

SeriesRun odd_reciprocal_sum(int n, long terms) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("odd_reciprocal_sum: n must be odd");
    if (terms < 1) throw std::invalid_argument("odd_reciprocal_sum: terms >= 1");
    std::vector<double> t(static_cast<std::size_t>(terms));
    util::parallel_fill(t, [&](std::size_t i) {
        long l = 2 * static_cast<long>(i) + 1;
        if (l >= n) l += 2;  // skip l = n
        return 1.0 / (static_cast<double>(l) * l - static_cast<double>(n) * n);
    });
    SeriesRun run;
    run.id = "odd-reciprocal";
    run.term_convention = "odd l ascending, skipping l = n";
    run.params = {{"n", static_cast<double>(n)}};
    run.partial_sums = prefix_sums(t);
    run.target = 1.0 / (4.0 * n * n);
    return run;
}

SeriesRun unrestricted_sum(int n, long terms) {
    if (n < 1) throw std::invalid_argument("unrestricted_sum: n >= 1");
    if (terms < 1) throw std::invalid_argument("unrestricted_sum: terms >= 1");
    std::vector<double> t(static_cast<std::size_t>(terms));
    util::parallel_fill(t, [&](std::size_t i) {
        long l = static_cast<long>(i);
        if (l >= n) ++l;  // skip l = n
        return 1.0 / (static_cast<double>(l) * l - static_cast<double>(n) * n);
    });
    SeriesRun run;
    run.id = "unrestricted";
    run.term_convention = "l = 0, 1, 2, ... skipping l = n";
    run.params = {{"n", static_cast<double>(n)}};
    run.partial_sums = prefix_sums(t);
    run.target = -1.0 / (4.0 * n * n);
    return run;
}

SeriesRun sum_rule_series(int n, double p, double x, double L, long terms) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("sum_rule_series: n must be odd");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sum_rule_series: 0 <= p <= 1");
    if (!(x >= 0.0 && x <= p * L + 1e-12))
        throw std::domain_error("sum_rule_series: valid for 0 <= x <= pL");
    std::vector<double> t(static_cast<std::size_t>(terms));
    util::parallel_fill(t, [&](std::size_t i) {
        long l = 2 * static_cast<long>(i) + 1;
        if (l >= n) l += 2;
        return util::sinpi(l * p) * std::sin(l * M_PI * x / L) /
               (static_cast<double>(l) * l - static_cast<double>(n) * n);
    });
    SeriesRun run;
    run.id = "sum-rule";
    run.term_convention = "odd l ascending, skipping l = n";
    run.params = {{"n", static_cast<double>(n)}, {"p", p}, {"x", x}, {"L", L}};
    run.partial_sums = prefix_sums(t);
    const double common = util::sinpi(n * p) / (4.0 * n * n);
    const double sin_nx = std::sin(n * M_PI * x / L);
    const double cos_nx = std::cos(n * M_PI * x / L);
    const double linear = M_PI * x / (2.0 * n * L) * util::sinpi(n * p) * cos_nx;
    run.target = common * util::cospi(4.0 * n * p) * sin_nx - linear;
    run.target_alt = common * util::cospi(2.0 * n * p) * sin_nx - linear;
    return run;
}

double pi_series_raw_term(long i) {
    if (i < 1) throw std::invalid_argument("pi_series_raw_term: 1-based index");
    const long l = 2 * i + 1;
    const long k = (i + 1) / 2;  // group index
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign / (static_cast<double>(l) * l - 1.0);
}

long double PiSeriesRun::pi_avg_ext(long j) const {
    if (j < 2 || j > static_cast<long>(partial_sums_ext.size()))
        throw std::invalid_argument("pi_avg_ext: j out of range");
    return 8.0L * 0.5L * (partial_sums_ext[j - 1] + partial_sums_ext[j - 2]) + 2.0L;
}

PiSeriesRun pi_series(long j, bool accelerate) {
    if (j < 1) throw std::invalid_argument("pi_series: j >= 1");
    std::vector<double> groups(static_cast<std::size_t>(j));
    util::parallel_fill(groups, [&](std::size_t idx) {
        const long k = static_cast<long>(idx) + 1;
        // group k = raw terms 2k-1 and 2k, summed pairwise
        return pi_series_raw_term(2 * k - 1) + pi_series_raw_term(2 * k);
    });
    PiSeriesRun out;
    out.run.id = "pi-sawtooth";
    out.run.term_convention = "sign groups k = 1, 2, ... (raw odd-l pairs 4k-1, 4k+1)";
    out.run.params = {{"j", static_cast<double>(j)}};
    out.run.target = (M_PI - 2.0) / 8.0;
    out.run.acceleration = accelerate ? Acceleration::adjacent_average : Acceleration::none;
    out.run.partial_sums.reserve(groups.size());
    out.partial_sums_ext.reserve(groups.size());
    util::KahanSum acc;
    for (double g : groups) {
        acc.add(g);
        out.run.partial_sums.push_back(acc.value());
        out.partial_sums_ext.push_back(acc.value_extended());
    }
    out.pi_raw.reserve(out.run.partial_sums.size());
    for (double s : out.run.partial_sums) out.pi_raw.push_back(8.0 * s + 2.0);
    if (accelerate && j >= 2) {
        out.run.averaged = accelerate_avg(out.run.partial_sums);
        out.pi_avg.reserve(out.run.averaged.size());
        for (double s : out.run.averaged) out.pi_avg.push_back(8.0 * s + 2.0);
    }
    return out;
}

SeriesRun sho_series(int n, long l_max) {
    if (n < 0) throw std::invalid_argument("sho_series: n >= 0");
    if (l_max <= n) throw std::invalid_argument("sho_series: l_max must exceed n");
    // terms over l = 0..l_max skipping n, ascending
    std::vector<double> b(static_cast<std::size_t>(l_max) + 1);
    b[0] = 1.0;
    for (long l = 1; l <= l_max; ++l) b[l] = b[l - 1] * (2.0 * l - 1.0) / (2.0 * l);
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(l_max));
    for (long l = 0; l <= l_max; ++l) {
        if (l == n) continue;
        t.push_back(b[n] * b[l] / static_cast<double>(n - l));
    }
    SeriesRun run;
    run.id = "sho-bracket";
    run.term_convention = "l = 0, 1, 2, ... skipping l = n";
    run.params = {{"n", static_cast<double>(n)}, {"l_max", static_cast<double>(l_max)}};
    run.partial_sums = prefix_sums(t);
    run.tail_correction = perturb::sho_bracket_sum(n, l_max).tail;
    const double ratio = specfun::gamma(n + 0.5) / specfun::gamma(n + 1.0);
    const double psi_diff = specfun::digamma(n + 1.0) - specfun::digamma(n + 0.5);
    run.target = -ratio * ratio * psi_diff / M_PI;             // 1/pi candidate
    run.target_alt = -ratio * ratio * psi_diff / (M_PI * M_PI);  // 1/pi^2 candidate
    return run;
}

std::vector<double> accelerate_avg(std::span<const double> sums) {
    if (sums.size() < 2) throw std::invalid_argument("accelerate_avg: need >= 2 sums");
    std::vector<double> out;
    out.reserve(sums.size() - 1);
    for (std::size_t i = 0; i + 1 < sums.size(); ++i)
        out.push_back(0.5 * (sums[i] + sums[i + 1]));
    return out;
}

}  // namespace deltaspec::series
