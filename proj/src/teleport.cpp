#include "wavecraft/teleport.hpp"

#include <algorithm>
#include <cmath>

#include "wavecraft/operators.hpp"

namespace wavecraft {

double TeleportConfig::eta() const {
    if (!(r_tele > 0.0))
        throw std::invalid_argument("TeleportConfig: r_tele must be positive");
    return std::tanh(r_tele);
}

IterationPlan IterationPlan::zeros(int n, bool rotate_each) {
    IterationPlan plan;
    plan.steps.assign(n, PlanStep{BellOutcome{0.0, 0.0}, rotate_each});
    return plan;
}

IterationPlan IterationPlan::from_outcomes(const std::vector<double>& m_x,
                                           const std::vector<double>& m_p,
                                           const std::vector<bool>& rotate_after) {
    if (!m_p.empty() && m_p.size() != m_x.size())
        throw std::invalid_argument("IterationPlan: m_x / m_p length mismatch");
    if (!rotate_after.empty() && rotate_after.size() != m_x.size())
        throw std::invalid_argument("IterationPlan: rotate_after length mismatch");
    IterationPlan plan;
    plan.steps.resize(m_x.size());
    for (size_t i = 0; i < m_x.size(); ++i) {
        plan.steps[i].outcome.m_x = m_x[i];
        plan.steps[i].outcome.m_p = m_p.empty() ? 0.0 : m_p[i];
        plan.steps[i].rotate_after = rotate_after.empty() ? false : rotate_after[i];
    }
    return plan;
}

double tmss_wave(double r_tele, double x1, double x2) {
    const double minus_sq = 0.5 * (x1 - x2) * (x1 - x2);  // ((x1 - x2)/sqrt2)^2
    const double plus_sq = 0.5 * (x1 + x2) * (x1 + x2);
    return std::exp(-0.5 * std::exp(2.0 * r_tele) * minus_sq) *
           std::exp(-0.5 * std::exp(-2.0 * r_tele) * plus_sq);
}

TeleportEngine::TeleportEngine(QuadratureGrid grid, TeleportConfig cfg)
    : grid_(grid), cfg_(cfg), poly_(OperatorPoly::make(cfg.subtraction, cfg.eta())) {
    if (cfg_.r_tele > 8.0)
        throw std::invalid_argument("TeleportEngine: r_tele out of range");
    const int n = grid_.size();
    coupling_ = std::sinh(2.0 * cfg_.r_tele);
    envelope_ = std::exp(-2.0 * cfg_.r_tele);
    // Outcome-independent kernel
    //   M(x, x') = exp[-(s/2)(x^2 + x'^2) - (c/2)(x - x')^2],
    // the m-dependence factors into per-point exponentials on both sides.
    kernel_.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        const double xj = grid_.x(j);
        double* row = kernel_.data() + static_cast<size_t>(j) * n;
        for (int i = 0; i < n; ++i) {
            const double xi = grid_.x(i);
            const double d = xi - xj;
            row[i] = std::exp(-0.5 * envelope_ * (xi * xi + xj * xj) -
                              0.5 * coupling_ * d * d);
        }
    }
}

WaveFunction TeleportEngine::conditional_impl(const WaveFunction& in, BellOutcome m,
                                               bool parallel) const {
    if (in.grid != grid_)
        throw GridMismatchError("TeleportEngine: input grid differs");
    const int n = grid_.size();
    const double h = grid_.spacing();
    const double s = envelope_;

    // trapezoid weights and the outcome-dependent factors fold into the
    // source vector; the remaining contraction is one kernel matvec
    std::vector<cdouble> src(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid_.x(i);
        double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        src[i] = in.amp[i] * w * std::exp(s * m.m_x * x) *
                 std::polar(1.0, -m.m_p * x);
    }

    WaveFunction out;
    out.grid = grid_;
    out.amp.resize(n);
    const double offset = std::exp(-s * m.m_x * m.m_x);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < n; ++j) {
        const double* row = kernel_.data() + static_cast<size_t>(j) * n;
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i) acc += row[i] * src[i];
        const double xj = grid_.x(j);
        out.amp[j] = acc * offset * std::exp(s * m.m_x * xj) *
                     std::polar(1.0, m.m_p * xj);
    }
    out.weight = out.norm_sq();
    return out;
}

WaveFunction TeleportEngine::conditional(const WaveFunction& in, BellOutcome m) const {
    return conditional_impl(in, m, true);
}

WaveFunction TeleportEngine::step(const WaveFunction& in, BellOutcome m) const {
    return apply_h(poly_, m.m_x, m.m_p, conditional(in, m));
}

WaveFunction teleport_step_serial(const TeleportEngine& eng, const WaveFunction& in,
                                  BellOutcome m) {
    return apply_h(eng.poly_, m.m_x, m.m_p, eng.conditional_impl(in, m, false));
}

PlanResult TeleportEngine::run_plan(const WaveFunction& in,
                                    const IterationPlan& plan) const {
    if (plan.steps.empty())
        throw std::invalid_argument("run_plan: empty plan");
    PlanResult result;
    WaveFunction state = in.normalized();
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        WaveFunction raw = step(state, plan.steps[i].outcome);
        if (raw.is_null())
            throw NullStateError("run_plan: null state after step " + std::to_string(i),
                                 static_cast<int>(i));
        result.step_weights.push_back(raw.weight);
        state = raw.normalized();
        if (plan.steps[i].rotate_after) state = fourier_rotate(state).normalized();
    }
    result.final_state = state;
    result.final_state.weight = 1.0;
    return result;
}

double TeleportEngine::outcome_density(const WaveFunction& in, BellOutcome m) const {
    return step(in, m).weight;
}

namespace {

struct Lattice {
    std::vector<double> mx, mp;
    double cell = 0.0;
};

Lattice make_lattice(const SweepRegion& region, int resolution) {
    if (resolution < 2) throw std::invalid_argument("sweep: resolution < 2");
    Lattice lat;
    lat.mx.resize(resolution);
    lat.mp.resize(resolution);
    const double dx = 2.0 * region.half_mx / (resolution - 1);
    const double dp = 2.0 * region.half_mp / (resolution - 1);
    for (int i = 0; i < resolution; ++i) {
        lat.mx[i] = -region.half_mx + dx * i;
        lat.mp[i] = -region.half_mp + dp * i;
    }
    lat.cell = dx * dp;
    return lat;
}

}  // namespace

DensityGrid TeleportEngine::density_grid(const WaveFunction& in,
                                         const SweepRegion& region,
                                         int resolution) const {
    const WaveFunction psi = in.normalized();
    const Lattice lat = make_lattice(region, resolution);
    DensityGrid out;
    out.region = region;
    out.resolution = resolution;
    out.density.resize(static_cast<size_t>(resolution) * resolution);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            out.density[static_cast<size_t>(i) * resolution + j] =
                teleport_step_serial(*this, psi, BellOutcome{lat.mx[i], lat.mp[j]}).weight;

    double z = 0.0;
    for (double d : out.density) z += d;
    z *= lat.cell;
    if (z < 1e-300)
        throw NumericalError("density_grid: vanishing density mass over the region");
    out.z = z;

    // Coverage check: probe a half-resolution ring out to 1.35x the window
    // and compare its mass against the interior.
    const SweepRegion outer{1.35 * region.half_mx, 1.35 * region.half_mp};
    const int ring_res = std::max(resolution / 2, 8);
    const Lattice ring = make_lattice(outer, ring_res);
    std::vector<double> ring_density(static_cast<size_t>(ring_res) * ring_res, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ring_res; ++i)
        for (int j = 0; j < ring_res; ++j) {
            if (std::abs(ring.mx[i]) <= region.half_mx &&
                std::abs(ring.mp[j]) <= region.half_mp)
                continue;  // interior already counted
            ring_density[static_cast<size_t>(i) * ring_res + j] =
                teleport_step_serial(*this, psi, BellOutcome{ring.mx[i], ring.mp[j]}).weight;
        }
    double ring_mass = 0.0;
    for (double d : ring_density) ring_mass += d;
    ring_mass *= ring.cell;
    out.coverage_residual = ring_mass / (z + ring_mass);
    return out;
}

SuccessCurve TeleportEngine::success_sweep(const WaveFunction& in,
                                           const WaveFunction& target,
                                           const std::vector<double>& thresholds,
                                           const SweepRegion& region,
                                           int resolution,
                                           double z_calibrated) const {
    const WaveFunction psi = in.normalized();
    const WaveFunction tgt = target.normalized();
    const Lattice lat = make_lattice(region, resolution);

    const size_t npts = static_cast<size_t>(resolution) * resolution;
    std::vector<double> density(npts, 0.0), fid(npts, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const size_t idx = static_cast<size_t>(i) * resolution + j;
            const WaveFunction raw =
                teleport_step_serial(*this, psi, BellOutcome{lat.mx[i], lat.mp[j]});
            density[idx] = raw.weight;
            fid[idx] = raw.is_null() ? 0.0 : fidelity(raw, tgt);
        }

    double z = 0.0;
    for (double d : density) z += d;
    z *= lat.cell;
    if (z_calibrated > 0.0) z = z_calibrated;
    if (z < 1e-300)
        throw NumericalError("success_sweep: vanishing density mass over the region");

    SuccessCurve curve;
    curve.thresholds = thresholds;
    curve.z = z;
    curve.probabilities.reserve(thresholds.size());
    for (double th : thresholds) {
        double mass = 0.0;
        for (size_t idx = 0; idx < npts; ++idx)
            if (fid[idx] >= th) mass += density[idx];
        curve.probabilities.push_back(mass * lat.cell / z);
    }

    if (z_calibrated > 0.0) {
        curve.coverage_residual = 0.0;  // caller owns the calibration
        return curve;
    }
    const SweepRegion outer{1.35 * region.half_mx, 1.35 * region.half_mp};
    const int ring_res = std::max(resolution / 2, 8);
    const Lattice ring = make_lattice(outer, ring_res);
    std::vector<double> ring_density(static_cast<size_t>(ring_res) * ring_res, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ring_res; ++i)
        for (int j = 0; j < ring_res; ++j) {
            if (std::abs(ring.mx[i]) <= region.half_mx &&
                std::abs(ring.mp[j]) <= region.half_mp)
                continue;
            ring_density[static_cast<size_t>(i) * ring_res + j] =
                teleport_step_serial(*this, psi, BellOutcome{ring.mx[i], ring.mp[j]}).weight;
        }
    double ring_mass = 0.0;
    for (double d : ring_density) ring_mass += d;
    ring_mass *= ring.cell;
    curve.coverage_residual = ring_mass / (z + ring_mass);
    return curve;
}

PairSweepCurve TeleportEngine::correlated_pair_sweep(const WaveFunction& in,
                                                     const WaveFunction& target,
                                                     const std::vector<double>& thresholds,
                                                     double half_mx,
                                                     int resolution) const {
    const WaveFunction psi = in.normalized();
    const WaveFunction tgt = target.normalized();
    if (resolution < 2) throw std::invalid_argument("sweep: resolution < 2");
    const double dm = 2.0 * half_mx / (resolution - 1);

    std::vector<double> density(resolution, 0.0), fid(resolution, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < resolution; ++i) {
        const double m = -half_mx + dm * i;
        const WaveFunction first = teleport_step_serial(*this, psi, BellOutcome{m, 0.0});
        if (first.is_null()) continue;
        const WaveFunction second =
            teleport_step_serial(*this, first.normalized(), BellOutcome{-m, 0.0});
        density[i] = first.weight * second.weight;
        fid[i] = second.is_null() ? 0.0 : fidelity(second, tgt);
    }

    double z = 0.0;
    for (double d : density) z += d;
    z *= dm;
    if (z < 1e-300)
        throw NumericalError("correlated_pair_sweep: vanishing density mass");

    PairSweepCurve curve;
    curve.thresholds = thresholds;
    curve.z = z;
    for (double th : thresholds) {
        double mass = 0.0;
        for (int i = 0; i < resolution; ++i)
            if (fid[i] >= th) mass += density[i];
        curve.probabilities.push_back(mass * dm / z);
    }
    return curve;
}

namespace ref {

WaveFunction conditional_wave(const QuadratureGrid& grid, double r_tele,
                              const WaveFunction& in, BellOutcome m) {
    if (in.grid != grid)
        throw GridMismatchError("ref::conditional_wave: grid mismatch");
    const int n = grid.size();
    const double h = grid.spacing();
    WaveFunction out;
    out.grid = grid;
    out.amp.resize(n);
    for (int j = 0; j < n; ++j) {
        const double xp = grid.x(j);
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = grid.x(i);
            const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
            acc += w * std::polar(1.0, -m.m_p * (x - xp)) * in.amp[i] *
                   tmss_wave(r_tele, x - m.m_x, xp - m.m_x);
        }
        out.amp[j] = acc;
    }
    out.weight = out.norm_sq();
    return out;
}

}  // namespace ref

}  // namespace wavecraft
