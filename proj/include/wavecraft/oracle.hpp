#pragma once

#include <vector>

#include "wavecraft/grid.hpp"
#include "wavecraft/nges.hpp"
#include "wavecraft/teleport.hpp"

namespace wavecraft::oracle {

/// Two-mode wave function on a shared symmetric grid, row-major:
/// amp[i1 * n + i2] = Psi(x1_i1, x2_i2).
struct TwoModeWave {
    QuadratureGrid grid;
    std::vector<cdouble> amp;

    int size() const { return grid.size(); }
    double norm_sq() const;
    void normalize();
};

/// Truncated two-mode Fock-space vector over |n1>|n2>.
struct FockVector2 {
    int n_max = 0;
    std::vector<cdouble> coeffs;  // (n_max+1)^2, n1 outer

    double norm_sq() const;
};

/// Ladder operators acting on one axis of a 2-D field (spectral p_hat).
TwoModeWave apply_annihilation_axis(const TwoModeWave& w, int axis);
TwoModeWave apply_creation_axis(const TwoModeWave& w, int axis);

/// Rotate the field by `theta` about the phase-space origin of the (x1,x2)
/// plane via three band-limited shear passes: out(x) = in(R(-theta) x).
TwoModeWave rotate_field(const TwoModeWave& w, double theta);

/// Brute-force construction of the photon-subtracted entangled resource:
/// squeezed product state, per-axis subtractions, then the 50:50
/// beamsplitter as the coordinate substitution
/// out(x1,x2) = in((x1+x2)/sqrt2, (x2-x1)/sqrt2).  Normalized.
TwoModeWave build_nges_2d(const SubtractionSpec& spec, double r_tele,
                          const QuadratureGrid& grid);

/// Project mode "in" and mode 1 of psi_in (x) nges onto the displaced EPR
/// bra and apply the output displacement corrections.  The outcome phase
/// conventions are pinned so that for every (k, l) the result matches the
/// analytic teleport step exactly (not just up to outcome relabeling);
/// concretely
///   out(x2) = e^{-i m_p m_x} e^{i m_p x2}
///             integral dy e^{-i m_p y} psi_in(y + m_x) Psi_nges(y, x2 - m_x).
/// Unnormalized; weight is the heralding weight in the oracle's measure.
WaveFunction teleport_brute(const WaveFunction& psi_in, const TwoModeWave& nges,
                            BellOutcome m);

/// |TMSS> = sqrt(1 - eta^2) sum eta^n |n>|n> truncated at n_max.
FockVector2 tmss_fock(double eta, int n_max);

/// || a1^k |TMSS> - (eta a2^dag)^k |TMSS> || / || a1^k |TMSS> ||
/// in the truncated Fock space; 0 when both sides vanish.
double subtraction_identity_check(double eta, int n_max, int k = 1);

/// f_{k,l}(eta) applied to axis 2 of a two-mode field; used to cross-check
/// build_nges_2d against the single-mode operator expansion.
TwoModeWave apply_f_axis2(const OperatorPoly& poly, const TwoModeWave& w);

}  // namespace wavecraft::oracle
