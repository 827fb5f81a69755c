#pragma once

#include <vector>

#include "wavecraft/grid.hpp"
#include "wavecraft/states.hpp"

namespace wavecraft {

/// Wigner quasi-probability on an x-p lattice (hbar = 1, max |W| <= 1/pi).
struct WignerMap {
    std::vector<double> x;
    std::vector<double> p;
    std::vector<double> w;  // row-major, x outer

    double at(int ix, int ip) const { return w[ix * p.size() + ip]; }
};

/// W(x,p) = (1/pi) integral conj(psi(x+y)) psi(x-y) e^{2ipy} dy on the
/// momentum grid conjugate to the state's grid (dp = pi/(N h)); with that
/// pairing the p-marginals reproduce |psi(x)|^2 exactly.
WignerMap wigner(const WaveFunction& psi);

/// Same transform on a caller-chosen p lattice.
WignerMap wigner(const WaveFunction& psi, double p_extent, int p_points);

namespace ref {
/// Serial direct-sum Wigner transform (reference for the OpenMP kernel).
WignerMap wigner(const WaveFunction& psi, double p_extent, int p_points);
}  // namespace ref

struct CatFit {
    double xi = 0.0;
    double alpha = 0.0;
    CatParity parity = CatParity::plus;
    double fidelity = 0.0;
    bool converged = false;
};

struct FourCatFit {
    double beta = 0.0;
    int m = 0;
    double fidelity = 0.0;
    bool converged = false;
};

struct DisplacementFit {
    double dx = 0.0;
    double dp = 0.0;
    double fidelity = 0.0;
    bool converged = false;
};

/// Best squeezed cat S(xi)|CAT, alpha, +/-> by coarse grid scan
/// (xi in [-1.5, 1.5] step 0.05, alpha in [0, 4] step 0.05) followed by a
/// simplex refinement.  The parity sign is selected by the input's parity.
CatFit fit_squeezed_cat(const WaveFunction& psi);

/// Best four-component cat over (|beta|, m in 0..3).
FourCatFit fit_four_cat(const WaveFunction& psi);

/// Maximize F(D(dx,dp) psi, target) over the displacement.
DisplacementFit fit_displacement(const WaveFunction& psi,
                                 const WaveFunction& target);

struct Extremum {
    double x = 0.0;
    double magnitude = 0.0;
};

/// Local maxima of |psi| (discrete neighborhood test with parabolic
/// sub-grid refinement), strongest first.
std::vector<Extremum> extrema_report(const WaveFunction& psi);

/// +1 for even, -1 for odd, 0 for indefinite parity.
int dominant_parity(const WaveFunction& psi);

}  // namespace wavecraft
