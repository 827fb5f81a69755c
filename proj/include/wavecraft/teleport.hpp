#pragma once

#include <vector>

#include "wavecraft/grid.hpp"
#include "wavecraft/nges.hpp"

namespace wavecraft {

/// Settings of one conditional-teleportation circuit: the squeezing of the
/// two-mode resource (eta = tanh r_tele) and the photon subtractions that
/// shape it.
struct TeleportConfig {
    double r_tele = 1.0;
    SubtractionSpec subtraction{1, 0};

    double eta() const;
};

/// Bell measurement outcome conditioning one step.  These are projector
/// parameters; raw homodyne readings differ by a factor sqrt(2).
struct BellOutcome {
    double m_x = 0.0;
    double m_p = 0.0;
};

struct PlanStep {
    BellOutcome outcome;
    bool rotate_after = false;
};

struct IterationPlan {
    std::vector<PlanStep> steps;

    /// n zero-outcome steps, optionally rotating after each.
    static IterationPlan zeros(int n, bool rotate_each = false);
    /// Steps from per-step outcome vectors (m_p defaults to zero).
    static IterationPlan from_outcomes(const std::vector<double>& m_x,
                                       const std::vector<double>& m_p = {},
                                       const std::vector<bool>& rotate_after = {});
};

struct PlanResult {
    WaveFunction final_state;            // normalized
    std::vector<double> step_weights;    // raw heralding weight per step
};

/// Symmetric sweep window [-half_mx, half_mx] x [-half_mp, half_mp].
struct SweepRegion {
    double half_mx = 4.0;
    double half_mp = 4.0;
};

/// Heralding density d(m) on a uniform outcome lattice plus its
/// normalization and an estimate of the probability mass outside the window.
struct DensityGrid {
    SweepRegion region;
    int resolution = 81;
    std::vector<double> density;  // row-major, m_x outer
    double z = 0.0;               // integral of density over the region
    double coverage_residual = 0.0;
};

struct SuccessCurve {
    std::vector<double> thresholds;
    std::vector<double> probabilities;
    double z = 0.0;
    double coverage_residual = 0.0;
};

/// Correlated two-step sweep over (m', -m') in the x quadrature.
struct PairSweepCurve {
    std::vector<double> thresholds;
    std::vector<double> probabilities;
    double z = 0.0;
};

/// Unnormalized two-mode squeezed kernel
/// exp[-(e^{2r}/2)((x1-x2)/sqrt2)^2] * exp[-(e^{-2r}/2)((x1+x2)/sqrt2)^2].
double tmss_wave(double r_tele, double x1, double x2);

/// One conditional-teleportation circuit bound to a grid.  Precomputes the
/// outcome-independent part of the teleport kernel, so sweeping thousands of
/// Bell outcomes costs one matrix-vector product each.
class TeleportEngine {
public:
    TeleportEngine(QuadratureGrid grid, TeleportConfig cfg);

    const QuadratureGrid& grid() const { return grid_; }
    const TeleportConfig& config() const { return cfg_; }

    /// psi_cond(x') = integral dx e^{-i m_p (x - x')} psi_in(x)
    ///                K(x - m_x, x' - m_x), trapezoid quadrature.  The
    /// modulation sign is fixed by requiring that h applied to psi_cond
    /// reproduce the exact displaced-EPR projection for every outcome.
    WaveFunction conditional(const WaveFunction& in, BellOutcome m) const;

    /// One heralded step: h_{k,l}(eta, m_x, m_p) applied to psi_cond.
    /// Unnormalized; weight is the heralding weight.
    WaveFunction step(const WaveFunction& in, BellOutcome m) const;

    /// Fold step() over the plan, renormalizing between steps and applying
    /// the 90-degree rotation where requested.  Throws NullStateError (with
    /// the step index) when an intermediate state vanishes.
    PlanResult run_plan(const WaveFunction& in, const IterationPlan& plan) const;

    /// Unnormalized heralding density at one outcome (input must be
    /// normalized for the values to be comparable).
    double outcome_density(const WaveFunction& in, BellOutcome m) const;

    DensityGrid density_grid(const WaveFunction& in, const SweepRegion& region,
                             int resolution) const;

    /// P(F >= threshold) as a function of threshold: acceptance is a
    /// fidelity level set over the outcome lattice.  By default the density
    /// mass is normalized over the same region; passing `z_calibrated`
    /// (from a coverage-complete density_grid) instead lets a fine lattice
    /// resolve a small acceptance set while keeping the calibrated measure.
    SuccessCurve success_sweep(const WaveFunction& in, const WaveFunction& target,
                               const std::vector<double>& thresholds,
                               const SweepRegion& region, int resolution,
                               double z_calibrated = 0.0) const;

    /// Joint density/success over two anticorrelated steps (m', -m'), m_p = 0.
    PairSweepCurve correlated_pair_sweep(const WaveFunction& in,
                                         const WaveFunction& target,
                                         const std::vector<double>& thresholds,
                                         double half_mx, int resolution) const;

private:
    QuadratureGrid grid_;
    TeleportConfig cfg_;
    OperatorPoly poly_;
    double coupling_ = 0.0;   // sinh(2 r)
    double envelope_ = 0.0;   // exp(-2 r)
    std::vector<double> kernel_;  // kernel_[j*n+i]: x_i -> x'_j, m-independent

    WaveFunction conditional_impl(const WaveFunction& in, BellOutcome m,
                                  bool parallel) const;
    friend WaveFunction teleport_step_serial(const TeleportEngine&,
                                             const WaveFunction&, BellOutcome);
};

/// Single-thread variant of TeleportEngine::step, used inside outcome sweeps
/// (one lattice point per thread) and by the serial/parallel consistency
/// tests and benchmarks.
WaveFunction teleport_step_serial(const TeleportEngine& engine,
                                  const WaveFunction& in, BellOutcome m);

namespace ref {
/// Direct double-loop evaluation of the conditional wave function with the
/// kernel recomputed pointwise; serial reference for the factored kernel.
WaveFunction conditional_wave(const QuadratureGrid& grid, double r_tele,
                              const WaveFunction& in, BellOutcome m);
}  // namespace ref

}  // namespace wavecraft
