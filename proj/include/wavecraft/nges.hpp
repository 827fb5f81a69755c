#pragma once

#include <vector>

#include "wavecraft/grid.hpp"

namespace wavecraft {

/// Photon subtraction counts on the two squeezed modes before the
/// beamsplitter: k from mode 1, l from mode 2.
struct SubtractionSpec {
    int k = 0;
    int l = 0;
    int total() const { return k + l; }
};

/// Integer coefficients c_j of (a+b)^k (a-b)^l = sum_j c_j a^j b^(k+l-j),
/// j = 0 .. k+l.
std::vector<long long> expand_coeffs(const SubtractionSpec& spec);

/// The resource operator f_{k,l}(eta) in expanded form:
/// f = 2^(-(k+l)/2) sum_j c_j a^(k+l-j) (eta a^dagger)^j
/// where each term applies j creations first, then k+l-j annihilations.
struct OperatorPoly {
    SubtractionSpec spec;
    double eta = 0.0;
    std::vector<long long> coeffs;

    static OperatorPoly make(const SubtractionSpec& spec, double eta);
};

/// Apply f_{k,l}(eta) term by term via the grid ladder operators.
WaveFunction apply_f(const OperatorPoly& poly, const WaveFunction& psi);

/// Same operator via the recursion
///   f_{k,l} = (a f_{k-1,l} + eta f_{k-1,l} a^dag)/sqrt2
///   f_{k,l} = (-a f_{k,l-1} + eta f_{k,l-1} a^dag)/sqrt2
/// Kept as an independent cross-check of apply_f.
WaveFunction apply_f_recursive(const SubtractionSpec& spec, double eta,
                               const WaveFunction& psi);

/// Displaced conjugate h_{k,l}(eta, m_x, m_p): f with
/// a -> a - (m_x + i m_p)/sqrt2 and a^dag -> a^dag - (m_x - i m_p)/sqrt2,
/// i.e. x_hat -> x_hat - m_x, p_hat -> p_hat - m_p.
WaveFunction apply_h(const OperatorPoly& poly, double m_x, double m_p,
                     const WaveFunction& psi);

/// Infinite-squeezing limit of f_{k,0} (polynomial in x_hat) or f_{0,l}
/// (polynomial in p_hat).  Mixed k,l > 0 is unsupported.
struct GLimitPoly {
    enum class Var { position, momentum };
    Var var = Var::position;
    std::vector<cdouble> coeffs;  // coeffs[i] multiplies var^i
};

GLimitPoly g_limit_poly(const SubtractionSpec& spec);

/// Apply a GLimitPoly to a state (multiplication for position polynomials,
/// spectral p_hat powers for momentum ones).  Test/diagnostic helper.
WaveFunction apply_g_poly(const GLimitPoly& poly, const WaveFunction& psi);

}  // namespace wavecraft
