#include "wavecraft/operators.hpp"

#include <cmath>

#include "wavecraft/fft.hpp"

namespace wavecraft {

namespace {

WaveFunction with_amp(const WaveFunction& psi, std::vector<cdouble> amp) {
    WaveFunction out;
    out.grid = psi.grid;
    out.amp = std::move(amp);
    out.weight = out.norm_sq();
    return out;
}

std::vector<cdouble> direct_fourier(const WaveFunction& psi, bool parallel) {
    const int n = psi.size();
    const double h = psi.grid.spacing();
    const double x0 = psi.grid.x_min();
    const double scale = h / std::sqrt(2.0 * kPi);
    std::vector<cdouble> out(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int m = 0; m < n; ++m) {
        const double p = psi.grid.x(m);
        // z walks exp(-i p x_j) along the row
        cdouble z = std::polar(1.0, -p * x0);
        const cdouble step = std::polar(1.0, -p * h);
        cdouble sum = 0.0;
        for (int j = 0; j < n; ++j) {
            sum += psi.amp[j] * z;
            z *= step;
        }
        out[m] = sum * scale;
    }
    return out;
}

}  // namespace

WaveFunction apply_position(const WaveFunction& psi) {
    std::vector<cdouble> amp(psi.size());
    for (int i = 0; i < psi.size(); ++i) amp[i] = psi.grid.x(i) * psi.amp[i];
    return with_amp(psi, std::move(amp));
}

WaveFunction apply_momentum(const WaveFunction& psi) {
    const int n = psi.size();
    std::vector<cdouble> spec = psi.amp;
    fft::dft(spec, false);
    for (int k = 0; k < n; ++k)
        spec[k] *= fft::frequency(k, n, psi.grid.spacing()) / n;
    fft::dft(spec, true);
    return with_amp(psi, std::move(spec));
}

WaveFunction apply_annihilation(const WaveFunction& psi) {
    const WaveFunction xs = apply_position(psi);
    const WaveFunction ps = apply_momentum(psi);
    std::vector<cdouble> amp(psi.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < psi.size(); ++i)
        amp[i] = (xs.amp[i] + cdouble(0, 1) * ps.amp[i]) * inv_sqrt2;
    return with_amp(psi, std::move(amp));
}

WaveFunction apply_creation(const WaveFunction& psi) {
    const WaveFunction xs = apply_position(psi);
    const WaveFunction ps = apply_momentum(psi);
    std::vector<cdouble> amp(psi.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < psi.size(); ++i)
        amp[i] = (xs.amp[i] - cdouble(0, 1) * ps.amp[i]) * inv_sqrt2;
    return with_amp(psi, std::move(amp));
}

WaveFunction fourier_rotate(const WaveFunction& psi) {
    WaveFunction out = with_amp(psi, direct_fourier(psi, true));
    const double in_norm = psi.norm_sq();
    if (in_norm > kNullWeight) {
        const double loss = std::abs(1.0 - out.weight / in_norm);
        if (loss > 1e-3)
            throw NumericalError(
                "fourier_rotate: " + std::to_string(loss) +
                " relative norm loss; state support exceeds the grid band");
    }
    return out;
}

namespace ref {
WaveFunction fourier_rotate(const WaveFunction& psi) {
    return with_amp(psi, direct_fourier(psi, false));
}
}  // namespace ref

WaveFunction shift_band_limited(const WaveFunction& psi, double s) {
    const int n = psi.size();
    std::vector<cdouble> spec = psi.amp;
    fft::dft(spec, false);
    for (int k = 0; k < n; ++k) {
        const double kappa = fft::frequency(k, n, psi.grid.spacing());
        spec[k] *= std::polar(1.0 / n, -kappa * s);
    }
    fft::dft(spec, true);
    return with_amp(psi, std::move(spec));
}

WaveFunction multiply_phase(const WaveFunction& psi, double phase_slope) {
    std::vector<cdouble> amp(psi.size());
    for (int i = 0; i < psi.size(); ++i)
        amp[i] = psi.amp[i] * std::polar(1.0, phase_slope * psi.grid.x(i));
    return with_amp(psi, std::move(amp));
}

WaveFunction displace(const WaveFunction& psi, double dx, double dp) {
    WaveFunction out = shift_band_limited(psi, dx);
    out = multiply_phase(out, dp);
    // constant Weyl phase so that D(dx,dp) = exp(i(dp x - dx p))
    const cdouble phase = std::polar(1.0, -0.5 * dx * dp);
    for (cdouble& a : out.amp) a *= phase;
    out.weight = out.norm_sq();
    return out;
}

}  // namespace wavecraft
