#pragma once

#include "wavecraft/grid.hpp"

namespace wavecraft {

/// Squeezing parameter; r > 0 squeezes x_hat, r < 0 squeezes p_hat.
struct SqueezeParam {
    double r = 0.0;
};

enum class CatParity { plus, minus };

struct CatSpec {
    double alpha = 0.0;       // coherent amplitude, real and >= 0
    CatParity parity = CatParity::plus;
    double xi = 0.0;          // post-superposition squeeze
};

/// Cubic-phase-state target description.
struct CpsSpec {
    enum class Variant { hermite_series, airy };
    Variant variant = Variant::hermite_series;
    double gamma = 0.0;  // cubicity
    int order = 1;       // hermite_series truncation order in gamma'
    double xi = 0.0;     // squeezing of input/envelope
    double p0 = 0.0;     // airy displacement
};

/// S(r)|0>: normalized Gaussian with Var(x) = exp(-2r)/2.
WaveFunction squeezed_vacuum(const QuadratureGrid& grid, SqueezeParam r);

/// |n> in position representation.
WaveFunction fock_state(const QuadratureGrid& grid, int n);

/// S(r)|n>, evaluated analytically as a coordinate rescale of |n>.
WaveFunction squeezed_fock(const QuadratureGrid& grid, SqueezeParam r, int n);

/// <x|beta> = pi^(-1/4) exp(-(x - sqrt2 Re b)^2/2 + i sqrt2 Im b x - i Re b Im b)
WaveFunction coherent_state(const QuadratureGrid& grid, cdouble beta);

/// N (|alpha> +/- |-alpha>) followed by the xi squeeze.
WaveFunction cat_state(const QuadratureGrid& grid, const CatSpec& spec);

/// |beta> + (-1)^m |-beta> + i^m |i beta> + (-i)^m |-i beta>,
/// beta = beta_mag * exp(i pi/4), normalized.
WaveFunction four_cat_state(const QuadratureGrid& grid, double beta_mag, int m);

/// Normalized sum_n c_n |n>.
WaveFunction fock_superposition(const QuadratureGrid& grid,
                                const std::vector<double>& coeffs);

/// Momentum-space cubic-phase-state target, sampled on the grid axis.
WaveFunction cps_target(const QuadratureGrid& grid, const CpsSpec& spec);

}  // namespace wavecraft
