#include "wavecraft/oracle.hpp"

#include <cmath>

#include "wavecraft/fft.hpp"
#include "wavecraft/operators.hpp"

namespace wavecraft::oracle {

namespace {

// Row/column views into the square field.  axis 0 varies x1 (stride n),
// axis 1 varies x2 (stride 1).
void gather(const std::vector<cdouble>& amp, int n, int axis, int fixed,
            std::vector<cdouble>& line) {
    if (axis == 1) {
        const cdouble* src = amp.data() + static_cast<size_t>(fixed) * n;
        std::copy(src, src + n, line.begin());
    } else {
        for (int i = 0; i < n; ++i)
            line[i] = amp[static_cast<size_t>(i) * n + fixed];
    }
}

void scatter(std::vector<cdouble>& amp, int n, int axis, int fixed,
             const std::vector<cdouble>& line) {
    if (axis == 1) {
        cdouble* dst = amp.data() + static_cast<size_t>(fixed) * n;
        std::copy(line.begin(), line.end(), dst);
    } else {
        for (int i = 0; i < n; ++i)
            amp[static_cast<size_t>(i) * n + fixed] = line[i];
    }
}

// -i d/d(axis) by spectral differentiation of each 1-D line.
TwoModeWave momentum_axis(const TwoModeWave& w, int axis) {
    const int n = w.size();
    TwoModeWave out = w;
    std::vector<cdouble> line(n);
    for (int fixed = 0; fixed < n; ++fixed) {
        gather(w.amp, n, axis, fixed, line);
        fft::dft(line, false);
        for (int k = 0; k < n; ++k)
            line[k] *= fft::frequency(k, n, w.grid.spacing()) / n;
        fft::dft(line, true);
        scatter(out.amp, n, axis, fixed, line);
    }
    return out;
}

TwoModeWave position_axis(const TwoModeWave& w, int axis) {
    const int n = w.size();
    TwoModeWave out = w;
    for (int i = 0; i < n; ++i) {
        const double x1 = w.grid.x(i);
        for (int j = 0; j < n; ++j) {
            const double val = (axis == 0) ? x1 : w.grid.x(j);
            out.amp[static_cast<size_t>(i) * n + j] *= val;
        }
    }
    return out;
}

// Band-limited shear: out(..coord[axis]..) = in(..coord[axis] + a * other..),
// one Fourier phase ramp per line, the other coordinate fixed per line.
TwoModeWave shear(const TwoModeWave& w, int axis, double a) {
    const int n = w.size();
    const double h = w.grid.spacing();
    TwoModeWave out = w;
    std::vector<cdouble> line(n);
    for (int fixed = 0; fixed < n; ++fixed) {
        gather(w.amp, n, axis, fixed, line);
        const double shift = a * w.grid.x(fixed);
        fft::dft(line, false);
        for (int k = 0; k < n; ++k) {
            const double kappa = fft::frequency(k, n, h);
            line[k] *= std::polar(1.0 / n, kappa * shift);
        }
        fft::dft(line, true);
        scatter(out.amp, n, axis, fixed, line);
    }
    return out;
}

}  // namespace

double TwoModeWave::norm_sq() const {
    double s = 0.0;
    for (const cdouble& a : amp) s += std::norm(a);
    const double h = grid.spacing();
    return s * h * h;
}

void TwoModeWave::normalize() {
    const double n2 = norm_sq();
    if (n2 < kNullWeight)
        throw NullStateError("TwoModeWave: null state");
    const double inv = 1.0 / std::sqrt(n2);
    for (cdouble& a : amp) a *= inv;
}

double FockVector2::norm_sq() const {
    double s = 0.0;
    for (const cdouble& c : coeffs) s += std::norm(c);
    return s;
}

TwoModeWave apply_annihilation_axis(const TwoModeWave& w, int axis) {
    const TwoModeWave xs = position_axis(w, axis);
    const TwoModeWave ps = momentum_axis(w, axis);
    TwoModeWave out = w;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < out.amp.size(); ++i)
        out.amp[i] = (xs.amp[i] + cdouble(0, 1) * ps.amp[i]) * inv_sqrt2;
    return out;
}

TwoModeWave apply_creation_axis(const TwoModeWave& w, int axis) {
    const TwoModeWave xs = position_axis(w, axis);
    const TwoModeWave ps = momentum_axis(w, axis);
    TwoModeWave out = w;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < out.amp.size(); ++i)
        out.amp[i] = (xs.amp[i] - cdouble(0, 1) * ps.amp[i]) * inv_sqrt2;
    return out;
}

TwoModeWave rotate_field(const TwoModeWave& w, double theta) {
    // out(x) = in(R(-theta) x) with R(phi) = Sx(-tan(phi/2)) Sy(sin phi)
    // Sx(-tan(phi/2)); the leftmost shear composes first.
    const double phi = -theta;
    const double t1 = -std::tan(0.5 * phi);
    const double t2 = std::sin(phi);
    TwoModeWave out = shear(w, 0, t1);
    out = shear(out, 1, t2);
    out = shear(out, 0, t1);
    return out;
}

TwoModeWave build_nges_2d(const SubtractionSpec& spec, double r_tele,
                          const QuadratureGrid& grid) {
    if (grid.size() > 512)
        throw std::invalid_argument("build_nges_2d: grid too large for the oracle");
    const int n = grid.size();
    TwoModeWave w;
    w.grid = grid;
    w.amp.resize(static_cast<size_t>(n) * n);
    // S1(-r) |0> x S2(r) |0>, products of Gaussians (unnormalized here)
    const double w1 = std::exp(-2.0 * r_tele);  // exponent weight e^{2(-r)}
    const double w2 = std::exp(2.0 * r_tele);
    for (int i = 0; i < n; ++i) {
        const double x1 = grid.x(i);
        const double g1 = std::exp(-0.5 * w1 * x1 * x1);
        for (int j = 0; j < n; ++j) {
            const double x2 = grid.x(j);
            w.amp[static_cast<size_t>(i) * n + j] = g1 * std::exp(-0.5 * w2 * x2 * x2);
        }
    }
    for (int c = 0; c < spec.k; ++c) w = apply_annihilation_axis(w, 0);
    for (int c = 0; c < spec.l; ++c) w = apply_annihilation_axis(w, 1);
    // 50:50 beamsplitter: out(x1,x2) = in((x1+x2)/sqrt2, (x2-x1)/sqrt2)
    w = rotate_field(w, kPi / 4.0);
    w.normalize();
    return w;
}

WaveFunction teleport_brute(const WaveFunction& psi_in, const TwoModeWave& nges,
                            BellOutcome m) {
    if (psi_in.grid != nges.grid)
        throw GridMismatchError("teleport_brute: grid mismatch");
    const int n = nges.size();
    const double h = psi_in.grid.spacing();

    // phi(y) = e^{i m_p y} psi_in(y + m_x), band-limited input shift
    WaveFunction shifted = shift_band_limited(psi_in, -m.m_x);
    std::vector<cdouble> phi(n);
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        phi[i] = shifted.amp[i] * std::polar(w, -m.m_p * psi_in.grid.x(i));
    }

    // g(z) = integral dy phi(y) Psi(y, z)
    WaveFunction g;
    g.grid = psi_in.grid;
    g.amp.assign(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += phi[i] * nges.amp[static_cast<size_t>(i) * n + j];
        g.amp[j] = acc;
    }
    g.weight = g.norm_sq();

    // displacement corrections: out(x2) = e^{-i m_p m_x} e^{i m_p x2} g(x2 - m_x)
    WaveFunction out = shift_band_limited(g, m.m_x);
    out = multiply_phase(out, m.m_p);
    const cdouble c0 = std::polar(1.0, -m.m_p * m.m_x);
    for (cdouble& a : out.amp) a *= c0;
    out.weight = out.norm_sq();
    return out;
}

FockVector2 tmss_fock(double eta, int n_max) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::invalid_argument("tmss_fock: eta must be in [0, 1)");
    if (n_max < 1) throw std::invalid_argument("tmss_fock: n_max too small");
    if (eta > 0.0 && std::pow(eta, n_max) > 1e-6)
        throw std::invalid_argument("tmss_fock: n_max too small for eta");
    FockVector2 v;
    v.n_max = n_max;
    v.coeffs.assign(static_cast<size_t>(n_max + 1) * (n_max + 1), 0.0);
    const double norm = std::sqrt(1.0 - eta * eta);
    double etan = 1.0;
    for (int nn = 0; nn <= n_max; ++nn) {
        v.coeffs[static_cast<size_t>(nn) * (n_max + 1) + nn] = norm * etan;
        etan *= eta;
    }
    return v;
}

namespace {

FockVector2 lower_mode1(const FockVector2& v) {
    FockVector2 out = v;
    const int d = v.n_max + 1;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            cdouble c = 0.0;
            if (n1 + 1 < d)
                c = std::sqrt(static_cast<double>(n1 + 1)) *
                    v.coeffs[static_cast<size_t>(n1 + 1) * d + n2];
            out.coeffs[static_cast<size_t>(n1) * d + n2] = c;
        }
    return out;
}

FockVector2 raise_mode2(const FockVector2& v) {
    FockVector2 out = v;
    const int d = v.n_max + 1;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            cdouble c = 0.0;
            if (n2 > 0)
                c = std::sqrt(static_cast<double>(n2)) *
                    v.coeffs[static_cast<size_t>(n1) * d + n2 - 1];
            out.coeffs[static_cast<size_t>(n1) * d + n2] = c;
        }
    return out;
}

}  // namespace

double subtraction_identity_check(double eta, int n_max, int k) {
    FockVector2 tmss = tmss_fock(eta, n_max);
    FockVector2 lhs = tmss;
    for (int c = 0; c < k; ++c) lhs = lower_mode1(lhs);
    FockVector2 rhs = tmss;
    for (int c = 0; c < k; ++c) {
        rhs = raise_mode2(rhs);
        for (cdouble& x : rhs.coeffs) x *= eta;
    }
    const double lhs_norm = std::sqrt(lhs.norm_sq());
    const double rhs_norm = std::sqrt(rhs.norm_sq());
    if (lhs_norm < 1e-15 && rhs_norm < 1e-15) return 0.0;
    double diff = 0.0;
    for (size_t i = 0; i < lhs.coeffs.size(); ++i)
        diff += std::norm(lhs.coeffs[i] - rhs.coeffs[i]);
    return std::sqrt(diff) / lhs_norm;
}

TwoModeWave apply_f_axis2(const OperatorPoly& poly, const TwoModeWave& w) {
    const int total = poly.spec.total();
    const double scale = std::pow(2.0, -0.5 * total);
    TwoModeWave acc = w;
    for (cdouble& a : acc.amp) a = 0.0;
    for (int j = 0; j <= total; ++j) {
        if (poly.coeffs[j] == 0) continue;
        TwoModeWave term = w;
        for (int c = 0; c < j; ++c) term = apply_creation_axis(term, 1);
        for (int c = 0; c < total - j; ++c) term = apply_annihilation_axis(term, 1);
        const double coeff = static_cast<double>(poly.coeffs[j]) *
                             std::pow(poly.eta, j) * scale;
        for (size_t i = 0; i < acc.amp.size(); ++i) acc.amp[i] += coeff * term.amp[i];
    }
    return acc;
}

}  // namespace wavecraft::oracle
