#include "wavecraft/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "wavecraft/operators.hpp"

namespace wavecraft {

namespace {

WignerMap wigner_impl(const WaveFunction& state, const std::vector<double>& pgrid,
                      bool parallel) {
    const WaveFunction psi = state.normalized();
    const int n = psi.size();
    const int np = static_cast<int>(pgrid.size());
    const double h = psi.grid.spacing();

    WignerMap map;
    map.p = pgrid;
    map.x.resize(n);
    for (int i = 0; i < n; ++i) map.x[i] = psi.grid.x(i);
    map.w.assign(static_cast<size_t>(n) * np, 0.0);

    // phase[m*n + j] = exp(2 i p_m y_j), y_j = j h
    std::vector<cdouble> phase(static_cast<size_t>(np) * n);
    for (int m = 0; m < np; ++m)
        for (int j = 0; j < n; ++j)
            phase[static_cast<size_t>(m) * n + j] = std::polar(1.0, 2.0 * pgrid[m] * j * h);

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i) {
        const int reach = std::min(i, n - 1 - i);
        std::vector<cdouble> corr(reach + 1);
        for (int j = 0; j <= reach; ++j)
            corr[j] = std::conj(psi.amp[i + j]) * psi.amp[i - j];
        for (int m = 0; m < np; ++m) {
            const cdouble* ph = phase.data() + static_cast<size_t>(m) * n;
            double acc = corr[0].real();
            for (int j = 1; j <= reach; ++j)
                acc += 2.0 * (corr[j].real() * ph[j].real() - corr[j].imag() * ph[j].imag());
            map.w[static_cast<size_t>(i) * np + m] = acc * h / kPi;
        }
    }
    return map;
}

}  // namespace

WignerMap wigner(const WaveFunction& psi) {
    const int n = psi.size();
    const double dp = kPi / (n * psi.grid.spacing());
    std::vector<double> pgrid(n);
    for (int m = 0; m < n; ++m) pgrid[m] = (m - n / 2) * dp;
    return wigner_impl(psi, pgrid, true);
}

WignerMap wigner(const WaveFunction& psi, double p_extent, int p_points) {
    if (p_points < 2 || !(p_extent > 0.0))
        throw std::invalid_argument("wigner: bad momentum lattice");
    if (p_extent > psi.grid.nyquist())
        throw NumericalError("wigner: p_extent beyond the Nyquist band");
    std::vector<double> pgrid(p_points);
    for (int m = 0; m < p_points; ++m)
        pgrid[m] = -p_extent + 2.0 * p_extent * m / (p_points - 1);
    return wigner_impl(psi, pgrid, true);
}

namespace ref {
WignerMap wigner(const WaveFunction& state, double p_extent, int p_points) {
    const WaveFunction psi = state.normalized();
    const int n = psi.size();
    const double h = psi.grid.spacing();
    WignerMap map;
    map.x.resize(n);
    for (int i = 0; i < n; ++i) map.x[i] = psi.grid.x(i);
    map.p.resize(p_points);
    for (int m = 0; m < p_points; ++m)
        map.p[m] = -p_extent + 2.0 * p_extent * m / (p_points - 1);
    map.w.assign(static_cast<size_t>(n) * p_points, 0.0);
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < p_points; ++m) {
            cdouble acc = 0.0;
            for (int j = -n; j <= n; ++j) {
                const int ip = i + j;
                const int im = i - j;
                if (ip < 0 || ip >= n || im < 0 || im >= n) continue;
                acc += std::conj(psi.amp[ip]) * psi.amp[im] *
                       std::exp(cdouble(0.0, 2.0 * map.p[m] * j * h));
            }
            map.w[static_cast<size_t>(i) * p_points + m] = acc.real() * h / kPi;
        }
    return map;
}
}  // namespace ref

int dominant_parity(const WaveFunction& psi) {
    const int n = psi.size();
    cdouble sym = 0.0;
    double tot = 0.0;
    for (int i = 0; i < n; ++i) {
        sym += std::conj(psi.amp[n - 1 - i]) * psi.amp[i];
        tot += std::norm(psi.amp[i]);
    }
    if (tot <= 0.0) return 0;
    const double ratio = sym.real() / tot;
    if (ratio > 0.5) return +1;
    if (ratio < -0.5) return -1;
    return 0;
}

namespace {

struct ScanBest {
    double value = -1.0;
    std::array<double, 2> params{0.0, 0.0};
};

// Deterministic 2-simplex maximizer; stalls when the simplex value spread
// drops below ftol.
struct SimplexResult {
    std::array<double, 2> params;
    double value = -1.0;
    bool converged = false;
};

SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f,
                             std::array<double, 2> start,
                             std::array<double, 2> step, double ftol,
                             int max_iter) {
    struct Vertex {
        std::array<double, 2> p;
        double v;
    };
    auto eval = [&f](const std::array<double, 2>& p) { return f(p[0], p[1]); };
    std::array<Vertex, 3> s;
    s[0] = {start, eval(start)};
    s[1] = {{start[0] + step[0], start[1]}, 0.0};
    s[1].v = eval(s[1].p);
    s[2] = {{start[0], start[1] + step[1]}, 0.0};
    s[2].v = eval(s[2].p);

    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        std::sort(s.begin(), s.end(),
                  [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
        if (std::abs(s[0].v - s[2].v) < ftol) {
            converged = true;
            break;
        }
        const std::array<double, 2> centroid{0.5 * (s[0].p[0] + s[1].p[0]),
                                             0.5 * (s[0].p[1] + s[1].p[1])};
        auto combine = [&centroid, &s](double t) {
            return std::array<double, 2>{centroid[0] + t * (centroid[0] - s[2].p[0]),
                                         centroid[1] + t * (centroid[1] - s[2].p[1])};
        };
        const auto refl = combine(1.0);
        const double fr = eval(refl);
        if (fr > s[0].v) {
            const auto exp_p = combine(2.0);
            const double fe = eval(exp_p);
            s[2] = (fe > fr) ? Vertex{exp_p, fe} : Vertex{refl, fr};
        } else if (fr > s[1].v) {
            s[2] = Vertex{refl, fr};
        } else {
            const auto con = combine(-0.5);
            const double fc = eval(con);
            if (fc > s[2].v) {
                s[2] = Vertex{con, fc};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].p[0] = 0.5 * (s[i].p[0] + s[0].p[0]);
                    s[i].p[1] = 0.5 * (s[i].p[1] + s[0].p[1]);
                    s[i].v = eval(s[i].p);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    return {s[0].p, s[0].v, converged};
}

}  // namespace

CatFit fit_squeezed_cat(const WaveFunction& state) {
    const WaveFunction psi = state.normalized();
    const int parity = dominant_parity(psi);
    if (parity == 0)
        throw std::invalid_argument("fit_squeezed_cat: input has no definite parity");
    const CatParity sign = (parity > 0) ? CatParity::plus : CatParity::minus;

    auto objective = [&psi, sign](double xi, double alpha) -> double {
        if (alpha < 0.0 || std::abs(xi) > 2.5) return -1.0;
        if (sign == CatParity::minus && alpha < 1e-3) return -1.0;
        // skip candidates whose peaks fall off the grid
        if (std::sqrt(2.0) * alpha * std::exp(-xi) + 2.0 > psi.grid.extent())
            return -1.0;
        try {
            return fidelity(psi, cat_state(psi.grid, CatSpec{alpha, sign, xi}));
        } catch (const NullStateError&) {
            return -1.0;
        }
    };

    ScanBest best;
    const int nxi = 61;   // [-1.5, 1.5] step 0.05
    const int nal = 81;   // [0, 4] step 0.05
    std::vector<double> values(static_cast<size_t>(nxi) * nal, -1.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nxi; ++i) {
        const double xi = -1.5 + 0.05 * i;
        for (int j = 0; j < nal; ++j)
            values[static_cast<size_t>(i) * nal + j] = objective(xi, 0.05 * j);
    }
    for (int i = 0; i < nxi; ++i)
        for (int j = 0; j < nal; ++j) {
            const double v = values[static_cast<size_t>(i) * nal + j];
            if (v > best.value) best = {v, {-1.5 + 0.05 * i, 0.05 * j}};
        }

    // local refinement pass before the simplex
    {
        const ScanBest coarse = best;
        for (int i = -12; i <= 12; ++i)
            for (int j = -12; j <= 12; ++j) {
                const double xi = coarse.params[0] + 0.005 * i;
                const double al = coarse.params[1] + 0.005 * j;
                const double v = objective(xi, al);
                if (v > best.value) best = {v, {xi, al}};
            }
    }

    const SimplexResult refined = nelder_mead_2d(objective, best.params,
                                                 {0.01, 0.01}, 1e-10, 300);
    CatFit fit;
    fit.parity = sign;
    fit.converged = refined.converged;
    if (refined.value >= best.value) {
        fit.xi = refined.params[0];
        fit.alpha = refined.params[1];
        fit.fidelity = refined.value;
    } else {
        fit.xi = best.params[0];
        fit.alpha = best.params[1];
        fit.fidelity = best.value;
    }
    return fit;
}

FourCatFit fit_four_cat(const WaveFunction& state) {
    const WaveFunction psi = state.normalized();
    FourCatFit fit;
    for (int m = 0; m < 4; ++m) {
        auto objective = [&psi, m](double beta, double) -> double {
            if (beta < 0.0) return -1.0;
            if (std::sqrt(2.0) * beta + 2.0 > psi.grid.extent()) return -1.0;
            try {
                return fidelity(psi, four_cat_state(psi.grid, beta, m));
            } catch (const NullStateError&) {
                return -1.0;
            }
        };
        ScanBest best;
        for (int j = 0; j <= 80; ++j) {
            const double v = objective(0.05 * j, 0.0);
            if (v > best.value) best = {v, {0.05 * j, 0.0}};
        }
        const SimplexResult refined = nelder_mead_2d(
            [&objective](double b, double) { return objective(b, 0.0); },
            best.params, {0.05, 0.0}, 1e-8, 200);
        const double value = std::max(best.value, refined.value);
        const double beta = (refined.value >= best.value) ? refined.params[0]
                                                          : best.params[0];
        if (value > fit.fidelity) {
            fit.fidelity = value;
            fit.beta = beta;
            fit.m = m;
            fit.converged = refined.converged;
        }
    }
    return fit;
}

DisplacementFit fit_displacement(const WaveFunction& state,
                                 const WaveFunction& target) {
    const WaveFunction psi = state.normalized();
    const WaveFunction tgt = target.normalized();
    auto objective = [&psi, &tgt](double dx, double dp) -> double {
        if (std::abs(dx) > 4.0 || std::abs(dp) > 4.0) return -1.0;
        return fidelity(displace(psi, dx, dp), tgt);
    };

    ScanBest best;
    const int ng = 41;  // [-2, 2] step 0.1
    std::vector<double> values(static_cast<size_t>(ng) * ng, -1.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ng; ++i) {
        const double dx = -2.0 + 0.1 * i;
        for (int j = 0; j < ng; ++j)
            values[static_cast<size_t>(i) * ng + j] = objective(dx, -2.0 + 0.1 * j);
    }
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) {
            const double v = values[static_cast<size_t>(i) * ng + j];
            if (v > best.value) best = {v, {-2.0 + 0.1 * i, -2.0 + 0.1 * j}};
        }

    const SimplexResult refined = nelder_mead_2d(objective, best.params,
                                                 {0.1, 0.1}, 1e-10, 300);
    DisplacementFit fit;
    fit.converged = refined.converged;
    if (refined.value >= best.value) {
        fit.dx = refined.params[0];
        fit.dp = refined.params[1];
        fit.fidelity = refined.value;
    } else {
        fit.dx = best.params[0];
        fit.dp = best.params[1];
        fit.fidelity = best.value;
    }
    return fit;
}

std::vector<Extremum> extrema_report(const WaveFunction& state) {
    const WaveFunction psi = state.normalized();
    const int n = psi.size();
    const double h = psi.grid.spacing();
    std::vector<double> mag(n);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
        mag[i] = std::abs(psi.amp[i]);
        peak = std::max(peak, mag[i]);
    }
    std::vector<Extremum> out;
    const double floor = 1e-6 * peak;
    for (int i = 1; i + 1 < n; ++i) {
        if (mag[i] < floor) continue;
        if (mag[i] >= mag[i - 1] && mag[i] > mag[i + 1]) {
            const double denom = mag[i - 1] - 2.0 * mag[i] + mag[i + 1];
            double dx = 0.0;
            if (denom < 0.0) dx = 0.5 * h * (mag[i - 1] - mag[i + 1]) / denom;
            out.push_back({psi.grid.x(i) + dx,
                           mag[i] - 0.25 * (mag[i - 1] - mag[i + 1]) * dx / h});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Extremum& a, const Extremum& b) {
                  return a.magnitude != b.magnitude ? a.magnitude > b.magnitude
                                                    : a.x < b.x;
              });
    return out;
}

}  // namespace wavecraft
