#include "wavecraft/states.hpp"

#include <cmath>

#include "wavecraft/special.hpp"

namespace wavecraft {

namespace {

WaveFunction finalize(const QuadratureGrid& grid, std::vector<cdouble> amp,
                      const char* what) {
    WaveFunction raw(grid, std::move(amp));
    if (raw.is_null())
        throw NullStateError(std::string(what) + ": state vanishes on this grid");
    WaveFunction out = raw.normalized();
    out.weight = 1.0;
    return out;
}

void check_x_support(const QuadratureGrid& grid, double half_width, const char* what) {
    if (half_width > grid.extent())
        throw std::invalid_argument(std::string(what) + ": needs x support " +
                                    std::to_string(half_width) + " beyond grid extent " +
                                    std::to_string(grid.extent()));
}

std::vector<double> grid_points(const QuadratureGrid& grid) {
    std::vector<double> x(grid.size());
    for (int i = 0; i < grid.size(); ++i) x[i] = grid.x(i);
    return x;
}

}  // namespace

WaveFunction squeezed_vacuum(const QuadratureGrid& grid, SqueezeParam r) {
    if (std::abs(r.r) > 5.0)
        throw std::invalid_argument("squeezed_vacuum: |r| > 5");
    const double sigma = std::exp(-r.r) / std::sqrt(2.0);  // std dev of x
    check_x_support(grid, 5.0 * sigma, "squeezed_vacuum");
    const double w = std::exp(2.0 * r.r);
    std::vector<cdouble> amp(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        amp[i] = std::exp(-0.5 * w * x * x);
    }
    return finalize(grid, std::move(amp), "squeezed_vacuum");
}

WaveFunction fock_state(const QuadratureGrid& grid, int n) {
    return squeezed_fock(grid, SqueezeParam{0.0}, n);
}

WaveFunction squeezed_fock(const QuadratureGrid& grid, SqueezeParam r, int n) {
    if (n < 0) throw std::invalid_argument("fock_state: negative n");
    const double turning = std::sqrt(2.0 * n + 1.0) * std::exp(-r.r);
    check_x_support(grid, turning + 3.0, "fock_state");
    std::vector<double> x = grid_points(grid);
    const double scale = std::exp(r.r);
    for (double& xi : x) xi *= scale;
    std::vector<double> phi = special::hermite_function(n, x);
    std::vector<cdouble> amp(grid.size());
    for (int i = 0; i < grid.size(); ++i) amp[i] = phi[i];
    return finalize(grid, std::move(amp), "fock_state");
}

WaveFunction coherent_state(const QuadratureGrid& grid, cdouble beta) {
    const double re = beta.real();
    const double im = beta.imag();
    const double sqrt2 = std::sqrt(2.0);
    std::vector<cdouble> amp(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        const double dx = x - sqrt2 * re;
        amp[i] = std::exp(cdouble(-0.5 * dx * dx, sqrt2 * im * x - re * im));
    }
    return finalize(grid, std::move(amp), "coherent_state");
}

WaveFunction cat_state(const QuadratureGrid& grid, const CatSpec& spec) {
    if (spec.alpha < 0.0)
        throw std::invalid_argument("cat_state: alpha must be nonnegative");
    if (spec.parity == CatParity::minus && spec.alpha == 0.0)
        throw NullStateError("cat_state: minus cat with alpha = 0 is null");
    const double sign = (spec.parity == CatParity::plus) ? 1.0 : -1.0;
    const double scale = std::exp(spec.xi);
    const double center = std::sqrt(2.0) * spec.alpha;
    std::vector<cdouble> amp(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i) * scale;  // S(xi) as coordinate rescale
        const double a = x - center;
        const double b = x + center;
        amp[i] = std::exp(-0.5 * a * a) + sign * std::exp(-0.5 * b * b);
    }
    return finalize(grid, std::move(amp), "cat_state");
}

WaveFunction four_cat_state(const QuadratureGrid& grid, double beta_mag, int m) {
    if (m < 0 || m > 3)
        throw std::invalid_argument("four_cat_state: m must be in 0..3");
    if (beta_mag < 0.0)
        throw std::invalid_argument("four_cat_state: negative amplitude");
    const cdouble beta = std::polar(beta_mag, kPi / 4.0);
    const cdouble i_unit(0.0, 1.0);
    const cdouble betas[4] = {beta, -beta, i_unit * beta, -i_unit * beta};
    const cdouble roots[4] = {1.0, -1.0, i_unit, -i_unit};
    cdouble weights[4];
    for (int c = 0; c < 4; ++c) {
        cdouble w = 1.0;
        for (int j = 0; j < m; ++j) w *= roots[c];
        weights[c] = w;
    }
    std::vector<cdouble> amp(grid.size(), 0.0);
    for (int c = 0; c < 4; ++c) {
        const WaveFunction comp = coherent_state(grid, betas[c]);
        for (int i = 0; i < grid.size(); ++i) amp[i] += weights[c] * comp.amp[i];
    }
    return finalize(grid, std::move(amp), "four_cat_state");
}

WaveFunction fock_superposition(const QuadratureGrid& grid,
                                const std::vector<double>& coeffs) {
    bool any = false;
    for (double c : coeffs) any = any || c != 0.0;
    if (!any)
        throw std::invalid_argument("fock_superposition: all coefficients zero");
    const std::vector<double> x = grid_points(grid);
    std::vector<cdouble> amp(grid.size(), 0.0);
    for (size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n] == 0.0) continue;
        const std::vector<double> phi = special::hermite_function(static_cast<int>(n), x);
        for (int i = 0; i < grid.size(); ++i) amp[i] += coeffs[n] * phi[i];
    }
    return finalize(grid, std::move(amp), "fock_superposition");
}

WaveFunction cps_target(const QuadratureGrid& grid, const CpsSpec& spec) {
    std::vector<cdouble> amp(grid.size());
    if (spec.variant == CpsSpec::Variant::hermite_series) {
        if (spec.order < 0 || spec.order > 3)
            throw std::invalid_argument("cps_target: series order out of range");
        const double gp = spec.gamma / std::pow(std::sqrt(2.0) * std::exp(-2.0 * spec.xi), 3);
        const double pscale = std::exp(spec.xi);  // p' = p / e^{-xi}
        for (int i = 0; i < grid.size(); ++i) {
            const double pp = grid.x(i) * pscale;
            double poly = 1.0;
            double gn = 1.0;    // gp^n
            double fact = 1.0;  // n!
            for (int n = 1; n <= spec.order; ++n) {
                gn *= gp;
                fact *= n;
                poly += gn / fact * special::hermite(3 * n, pp / std::sqrt(2.0));
            }
            amp[i] = poly * std::exp(-0.5 * pp * pp);
        }
    } else {
        if (spec.gamma == 0.0)
            throw std::invalid_argument("cps_target: airy variant needs gamma != 0");
        const double root = std::cbrt(3.0 * spec.gamma);
        const double env = std::exp(2.0 * spec.xi);
        for (int i = 0; i < grid.size(); ++i) {
            const double p = grid.x(i);
            amp[i] = std::exp(-0.5 * p * p / env) *
                     special::airy_ai(-(p + spec.p0) / root);
        }
    }
    return finalize(grid, std::move(amp), "cps_target");
}

}  // namespace wavecraft
