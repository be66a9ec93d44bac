#include "deltaspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace deltaspec::oracle {

namespace {

using models::AnyModel;
using models::BoxDeltaSpec;
using models::FiniteWellDeltaSpec;
using models::HydrogenDeltaSpec;
using models::OscillatorDeltaSpec;

struct Problem {
    double lo, hi;
    Units units;
    std::function<double(double)> potential;              // without the deltas
    std::vector<std::pair<double, double>> spikes;        // (position, lambda)
    double e_floor;                                       // safe lower search bound
};

Problem build_problem(const AnyModel& model) {
    Problem pb;
    if (const auto* box = std::get_if<BoxDeltaSpec>(&model)) {
        models::validate(*box);
        pb.units = box->units;
        pb.lo = 0.0;
        pb.hi = box->L;
        pb.potential = [](double) { return 0.0; };
        for (const auto& d : box->deltas) pb.spikes.emplace_back(d.p * box->L, d.lambda);
    } else if (const auto* well = std::get_if<FiniteWellDeltaSpec>(&model)) {
        models::validate(*well);
        pb.units = well->units;
        pb.lo = -20.0 * well->L;
        pb.hi = 20.0 * well->L;
        const double L = well->L, V0 = well->V0;
        // midpoint value on the step node keeps the discretization second order
        pb.potential = [L, V0](double x) {
            const double ax = std::fabs(x);
            if (std::fabs(ax - L) <= 1e-9 * L) return 0.5 * V0;
            return ax < L ? 0.0 : V0;
        };
        if (well->lambda != 0.0) pb.spikes.emplace_back(0.0, well->lambda);
    } else if (const auto* osc = std::get_if<OscillatorDeltaSpec>(&model)) {
        models::validate(*osc);
        pb.units = osc->units;
        const double half = 11.5 * models::oscillator_xi(*osc);
        pb.lo = -half;
        pb.hi = half;
        const double m = osc->units.mass, w = osc->omega;
        pb.potential = [m, w](double x) { return 0.5 * m * w * w * x * x; };
        if (osc->lambda != 0.0) pb.spikes.emplace_back(0.0, osc->lambda);
    } else {
        const auto& hyd = std::get<HydrogenDeltaSpec>(model);
        models::validate(hyd);
        pb.units = hyd.units;
        pb.lo = 0.0;
        const double k3 = hyd.e2 * hyd.units.mass / (hyd.units.hbar * hyd.units.hbar) / 3.0;
        // a multiple of the delta position, so the spike always lands on a node
        pb.hi = hyd.a * std::ceil(std::max(40.0 / k3, 20.0 * hyd.a) / hyd.a);
        const double e2 = hyd.e2;
        pb.potential = [e2](double x) { return -e2 / std::fabs(x); };
        if (hyd.lambda != 0.0) pb.spikes.emplace_back(hyd.a, hyd.lambda);
    }
    double depth = 0.0;
    for (const auto& [pos, lam] : pb.spikes)
        depth += pb.units.mass * lam * lam / (pb.units.hbar * pb.units.hbar);
    pb.e_floor = -2.0 * depth - 1.0;
    return pb;
}

}  // namespace

void validate(const GridSpec& g, const AnyModel& model) {
    if (!(g.lo < g.hi)) throw std::invalid_argument("grid: lo must be below hi");
    if (g.points < 3) throw std::invalid_argument("grid: need at least 3 points");
    const double h = (g.hi - g.lo) / (g.points - 1);
    if (g.mode == DeltaMode::narrow_gaussian && !(g.width >= 2.0 * h))
        throw std::invalid_argument("grid: gaussian width must span at least 2 spacings");
    const Problem pb = build_problem(model);
    if (g.lo > pb.lo + 1e-12 || g.hi < pb.hi - 1e-12)
        throw std::invalid_argument("grid: domain does not enclose the relevant region");
}

GridSpec default_grid(const AnyModel& model, int points, DeltaMode mode, double width) {
    const Problem pb = build_problem(model);
    GridSpec g;
    g.lo = pb.lo;
    g.hi = pb.hi;
    g.points = points;
    g.mode = mode;
    g.width = width;
    return aligned(g, model);
}

GridSpec aligned(GridSpec grid, const AnyModel& model) {
    const Problem pb = build_problem(model);
    // find a small common denominator for the fractional spike positions and
    // for the well edges, then snap the interval count to a multiple of it
    long denom = 1;
    auto add_fraction = [&](double frac) {
        for (long q = 1; q <= 8192; ++q) {
            const double scaled = frac * q;
            if (std::fabs(scaled - std::rint(scaled)) < 1e-9) {
                denom = std::lcm(denom, q);
                return;
            }
        }
        throw std::invalid_argument("grid alignment: position is not a small fraction of the domain");
    };
    for (const auto& [pos, lam] : pb.spikes) add_fraction((pos - grid.lo) / (grid.hi - grid.lo));
    if (std::holds_alternative<FiniteWellDeltaSpec>(model)) {
        const auto& w = std::get<FiniteWellDeltaSpec>(model);
        add_fraction((w.L - grid.lo) / (grid.hi - grid.lo));
        add_fraction((-w.L - grid.lo) / (grid.hi - grid.lo));
    }
    if (denom > 200000)
        throw std::invalid_argument(
            "grid alignment: feature positions have no common spacing of workable size");
    long intervals = grid.points - 1;
    intervals = ((intervals + denom - 1) / denom) * denom;
    grid.points = static_cast<int>(intervals + 1);
    return grid;
}

// --------------------------------------------------------------------------
// finite differences: tridiagonal H, Sturm bisection, inverse iteration

namespace {

struct Tridiag {
    std::vector<double> diag;
    double off;  // constant off-diagonal
    std::vector<double> x;
    double h;
};

Tridiag build_matrix(const Problem& pb, const GridSpec& g) {
    const int n = g.points - 2;  // interior nodes
    const double h = (g.hi - g.lo) / (g.points - 1);
    Tridiag t;
    t.h = h;
    t.off = -pb.units.h2m() / (h * h);
    t.diag.resize(n);
    t.x.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = g.lo + (i + 1) * h;
        t.x[i] = x;
        t.diag[i] = 2.0 * pb.units.h2m() / (h * h) + pb.potential(x);
    }
    for (const auto& [pos, lam] : pb.spikes) {
        if (g.mode == DeltaMode::jump_condition) {
            const int j = static_cast<int>(std::rint((pos - g.lo) / h)) - 1;
            if (j < 0 || j >= n || std::fabs(t.x[j] - pos) > 1e-9 * (g.hi - g.lo))
                throw std::invalid_argument("oracle: delta is not on a grid node");
            t.diag[j] -= lam / h;  // exact discrete derivative jump
        } else {
            const double w = g.width;
            const double norm = 1.0 / (w * std::sqrt(2.0 * M_PI));
            for (int i = 0; i < n; ++i) {
                const double u = (t.x[i] - pos) / w;
                t.diag[i] -= lam * norm * std::exp(-0.5 * u * u);
            }
        }
    }
    return t;
}

// number of eigenvalues of the tridiagonal matrix strictly below x
int sturm_count(const Tridiag& t, double x) {
    const double off2 = t.off * t.off;
    int count = 0;
    double q = t.diag[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t.diag.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = t.diag[i] - x - off2 / q;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> sturm_eigenvalues(const Tridiag& t, int k_states) {
    double lo = t.diag[0], hi = t.diag[0];
    for (double d : t.diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::fabs(t.off) + 1.0;
    hi += 2.0 * std::fabs(t.off) + 1.0;
    std::vector<double> out;
    out.reserve(k_states);
    for (int k = 0; k < k_states; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && (b - a) > 1e-15 * (std::fabs(a) + std::fabs(b) + 1.0);
             ++it) {
            const double m = 0.5 * (a + b);
            if (sturm_count(t, m) >= k + 1)
                b = m;
            else
                a = m;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// inverse iteration for the eigenvector at eigenvalue ev
std::vector<double> inverse_iteration(const Tridiag& t, double ev, int state_index) {
    const int n = static_cast<int>(t.diag.size());
    const double shift = ev * (1.0 + 1e-12) + 1e-300;
    std::vector<double> v(n);
    // deterministic seed with the free-box nodal structure of the target state
    for (int i = 0; i < n; ++i)
        v[i] = std::sin((state_index + 1) * M_PI * (i + 1.0) / (n + 1.0));
    std::vector<double> c(n), d(n);
    for (int pass = 0; pass < 3; ++pass) {
        // Thomas solve (T - shift) w = v
        double beta = t.diag[0] - shift;
        if (std::fabs(beta) < 1e-280) beta = 1e-280;
        d[0] = v[0] / beta;
        for (int i = 1; i < n; ++i) {
            c[i - 1] = t.off / beta;
            beta = t.diag[i] - shift - t.off * c[i - 1];
            if (std::fabs(beta) < 1e-280) beta = 1e-280;
            d[i] = (v[i] - t.off * d[i - 1]) / beta;
        }
        for (int i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
        double norm = 0.0;
        for (double w : d) norm += w * w;
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) v[i] = d[i] / norm;
    }
    // fix the overall sign: first sizable component positive
    for (double w : v) {
        if (std::fabs(w) > 1e-8) {
            if (w < 0.0)
                for (double& q : v) q = -q;
            break;
        }
    }
    return v;
}

// --------------------------------------------------------------------------
// Numerov shooting with the exact derivative jump at delta nodes

struct ShootResult {
    double end_value;  // psi at the far wall, sup-normalized
    int nodes;         // interior sign changes
};

ShootResult numerov_shoot(const Problem& pb, const GridSpec& g, double E) {
    // Summed (increment) form of Numerov on w = (1 - h^2 f/12) psi:
    //   step_i = h^2 f_i psi_i (+ the exact -h gamma psi_i derivative jump at
    //   a delta node); delta += step; w += delta. Accumulating increments
    //   keeps the energy dependence of each step at full relative precision,
    //   which the textbook three-term form loses at fine spacings.
    const int n = g.points;
    const double h = (g.hi - g.lo) / (n - 1);
    const double pref = 1.0 / pb.units.h2m();  // psi'' = pref (V - E) psi
    std::vector<int> spike_at(n, -1);
    for (std::size_t s = 0; s < pb.spikes.size(); ++s) {
        const int j = static_cast<int>(std::rint((pb.spikes[s].first - g.lo) / h));
        if (j <= 0 || j >= n - 1 ||
            std::fabs(g.lo + j * h - pb.spikes[s].first) > 1e-9 * (g.hi - g.lo))
            throw std::invalid_argument("oracle: delta is not on an interior grid node");
        spike_at[j] = static_cast<int>(s);
    }
    const double h2 = h * h;
    auto f_at = [&](int i) { return pref * (pb.potential(g.lo + i * h) - E); };

    int nodes = 0;
    double psi_cur = h;                                // psi_0 = 0 at the wall
    double w_cur = (1.0 - h2 * f_at(1) / 12.0) * psi_cur;
    double delta = w_cur;                              // w_1 - w_0, w_0 = 0
    double scale_max = std::fabs(psi_cur);
    for (int i = 1; i < n - 1; ++i) {
        double step = h2 * f_at(i) * psi_cur;
        if (spike_at[i] >= 0) {
            const double gamma = 2.0 * pb.units.mass * pb.spikes[spike_at[i]].second /
                                 (pb.units.hbar * pb.units.hbar);
            step -= h * gamma * psi_cur;
        }
        delta += step;
        const double w_next = w_cur + delta;
        const double psi_next = w_next / (1.0 - h2 * f_at(i + 1) / 12.0);
        if ((psi_next < 0.0 && psi_cur > 0.0) || (psi_next > 0.0 && psi_cur < 0.0)) ++nodes;
        psi_cur = psi_next;
        w_cur = w_next;
        scale_max = std::max(scale_max, std::fabs(psi_cur));
        if (scale_max > 1e200) {
            psi_cur /= scale_max;
            w_cur /= scale_max;
            delta /= scale_max;
            scale_max = std::fabs(psi_cur);
        }
    }
    return {psi_cur / std::max(scale_max, 1e-300), nodes};
}

std::vector<double> shooting_eigenvalues(const Problem& pb, const GridSpec& g, int k_states) {
    auto nodes_at = [&](double E) { return numerov_shoot(pb, g, E).nodes; };
    auto endval = [&](double E) { return numerov_shoot(pb, g, E).end_value; };

    double e_lo = pb.e_floor;
    double vmin = std::numeric_limits<double>::max();
    const double h = (g.hi - g.lo) / (g.points - 1);
    for (int i = 1; i < g.points - 1; ++i) vmin = std::min(vmin, pb.potential(g.lo + i * h));
    e_lo = std::min(e_lo, vmin) - 1.0;

    double e_hi = e_lo + 1.0;
    for (int guard = 0; nodes_at(e_hi) < k_states + 1; ++guard) {
        if (guard > 200) throw NoConvergenceError("oracle: cannot bound the spectrum above");
        e_hi = e_lo + 2.0 * (e_hi - e_lo);
    }

    std::vector<double> out;
    for (int k = 0; k < k_states; ++k) {
        // isolate nodes(E) <= k below and >= k+1 above
        double a = e_lo, b = e_hi;
        for (int it = 0; it < 240; ++it) {
            const double m = 0.5 * (a + b);
            if (nodes_at(m) >= k + 1)
                b = m;
            else
                a = m;
            if (b - a < 1e-13 * (std::fabs(a) + std::fabs(b) + 1.0)) break;
        }
        // the eigenvalue sits at the node-count step; polish on the end value
        double fa = endval(a), fb = endval(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            auto rr = roots::refine([&](double E) { return endval(E); },
                                    {a, b, fa, fb}, 1e-14 * (std::fabs(a) + 1.0), 200);
            out.push_back(rr.x);
        } else {
            out.push_back(0.5 * (a + b));
        }
    }
    return out;
}

}  // namespace

std::vector<double> oracle_spectrum(const AnyModel& model, const GridSpec& grid, int k_states) {
    validate(grid, model);
    const Problem pb = build_problem(model);
    GridSpec g = aligned(grid, model);
    if (g.mode == DeltaMode::jump_condition) return shooting_eigenvalues(pb, g, k_states);
    const Tridiag t = build_matrix(pb, g);
    return sturm_eigenvalues(t, k_states);
}

std::vector<double> oracle_spectrum_extrapolated(const AnyModel& model, const GridSpec& base,
                                                 int k_states) {
    GridSpec g1 = aligned(base, model);
    GridSpec g2 = g1, g4 = g1;
    g2.points = 2 * (g1.points - 1) + 1;
    g4.points = 4 * (g1.points - 1) + 1;
    if (g1.mode == DeltaMode::narrow_gaussian) {
        g2.width = g1.width;
        g4.width = g1.width;
    }
    const auto e1 = oracle_spectrum(model, g1, k_states);
    const auto e2 = oracle_spectrum(model, g2, k_states);
    const auto e4 = oracle_spectrum(model, g4, k_states);
    std::vector<double> out(k_states);
    for (int k = 0; k < k_states; ++k) {
        const double scale = std::fabs(e4[k]) + 1.0;
        if (std::fabs(e4[k] - e2[k]) > 1e-3 * scale)
            throw NoConvergenceError(
                "oracle_spectrum_extrapolated: eigenvalue still shifting between the two "
                "finest grids; refine the base grid");
        // eliminate h^2, then h^3 (step potentials and the Coulomb origin
        // contribute odd orders; smooth problems lose nothing here)
        const double r1 = (4.0 * e2[k] - e1[k]) / 3.0;
        const double r2 = (4.0 * e4[k] - e2[k]) / 3.0;
        out[k] = (8.0 * r2 - r1) / 7.0;
    }
    return out;
}

GridStates fd_states(const AnyModel& model, const GridSpec& grid, int k_states) {
    validate(grid, model);
    const Problem pb = build_problem(model);
    GridSpec g = aligned(grid, model);
    const Tridiag t = build_matrix(pb, g);
    GridStates st;
    st.x = t.x;
    st.energies = sturm_eigenvalues(t, k_states);
    for (int k = 0; k < k_states; ++k) {
        auto v = inverse_iteration(t, st.energies[k], k);
        // trapezoid normalization (walls are zero, so this is h * sum; psi psi'
        // vanishes at the walls, which makes the rule O(h^4) accurate here and
        // keeps the discrete orthogonality of the eigenvectors exact)
        double norm = 0.0;
        for (double w : v) norm += w * w;
        const double scale = 1.0 / std::sqrt(norm * t.h);
        for (double& w : v) w *= scale;
        st.vectors.push_back(std::move(v));
    }
    return st;
}

double matrix_element_delta(const AnyModel& model, int i, int j, double x0,
                            const GridSpec& grid) {
    // unperturbed states: strip the deltas off the model
    AnyModel bare = model;
    std::visit(
        [](auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BoxDeltaSpec>)
                m.deltas.clear();
            else
                m.lambda = 0.0;
        },
        bare);
    const int k_states = std::max(i, j) + 1;
    auto product_on = [&](const GridSpec& g) {
        GridStates st = fd_states(bare, g, k_states);
        const double h = st.x[1] - st.x[0];
        auto value_at = [&](const std::vector<double>& v) {
            const double pos = (x0 - st.x[0]) / h;
            const long idx = std::lrint(pos);
            if (idx < 0 || idx >= static_cast<long>(v.size()))
                throw std::invalid_argument("matrix_element_delta: x0 outside the grid");
            if (std::fabs(pos - idx) < 1e-9) return v[idx];
            // quadratic interpolation around the nearest node
            const long c = std::clamp<long>(idx, 1, static_cast<long>(v.size()) - 2);
            const double s = pos - c;
            return v[c] + 0.5 * s * (v[c + 1] - v[c - 1]) +
                   0.5 * s * s * (v[c + 1] - 2.0 * v[c] + v[c - 1]);
        };
        // states are defined up to sign; fix the product's sign from the
        // wavefunction shapes (first sizable component positive, set in
        // inverse_iteration), consistent across grids
        return value_at(st.vectors[i]) * value_at(st.vectors[j]);
    };
    GridSpec fine = aligned(grid, model);
    GridSpec finer = fine;
    finer.points = 2 * (fine.points - 1) + 1;
    const double v1 = product_on(fine);
    const double v2 = product_on(finer);
    return (4.0 * v2 - v1) / 3.0;  // the eigenvector error is O(h^2)
}

}  // namespace deltaspec::oracle
