#pragma once

#include "wavecraft/grid.hpp"

namespace wavecraft {

/// x_hat: pointwise multiply by x. Unnormalized output, weight updated.
WaveFunction apply_position(const WaveFunction& psi);

/// p_hat: -i d/dx by spectral differentiation. Unnormalized output.
WaveFunction apply_momentum(const WaveFunction& psi);

/// a = (x_hat + i p_hat)/sqrt(2)
WaveFunction apply_annihilation(const WaveFunction& psi);

/// a^dagger = (x_hat - i p_hat)/sqrt(2)
WaveFunction apply_creation(const WaveFunction& psi);

/// Continuous Fourier transform evaluated on the same grid reinterpreted as
/// the p axis: (1/sqrt(2 pi)) integral psi(x) exp(-i p x) dx.  Equals a 90
/// degree phase-space rotation.  Throws NumericalError when the transform
/// loses more than a 1e-3 fraction of the squared norm (support escaping the
/// grid / Nyquist band).
WaveFunction fourier_rotate(const WaveFunction& psi);

/// Band-limited shift: out(x) = psi(x - s).
WaveFunction shift_band_limited(const WaveFunction& psi, double s);

/// out(x) = exp(i phase_slope * x) * psi(x)
WaveFunction multiply_phase(const WaveFunction& psi, double phase_slope);

/// Displacement D(dx, dp): x_hat -> x_hat + dx, p_hat -> p_hat + dp.
/// Implemented as a band-limited shift plus a linear phase.
WaveFunction displace(const WaveFunction& psi, double dx, double dp);

namespace ref {
/// Serial direct-sum Fourier rotation kept as a reference for the
/// OpenMP kernel.
WaveFunction fourier_rotate(const WaveFunction& psi);
}  // namespace ref

}  // namespace wavecraft
