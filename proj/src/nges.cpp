#include "wavecraft/nges.hpp"

#include <cmath>

#include "wavecraft/operators.hpp"

namespace wavecraft {

namespace {

void validate(const SubtractionSpec& spec) {
    if (spec.k < 0 || spec.l < 0)
        throw std::invalid_argument("SubtractionSpec: negative subtraction count");
    if (spec.total() > 8)
        throw std::invalid_argument("SubtractionSpec: k + l > 8 unsupported");
}

void axpy(std::vector<cdouble>& acc, cdouble c, const std::vector<cdouble>& v) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

WaveFunction wrap(const WaveFunction& like, std::vector<cdouble> amp) {
    WaveFunction out;
    out.grid = like.grid;
    out.amp = std::move(amp);
    out.weight = out.norm_sq();
    return out;
}

// a - delta and a^dag - conj(delta); delta = (m_x + i m_p)/sqrt2.
WaveFunction lower_shifted(const WaveFunction& psi, cdouble delta) {
    WaveFunction out = apply_annihilation(psi);
    if (delta != cdouble(0.0)) {
        for (int i = 0; i < out.size(); ++i) out.amp[i] -= delta * psi.amp[i];
        out.weight = out.norm_sq();
    }
    return out;
}

WaveFunction raise_shifted(const WaveFunction& psi, cdouble delta_conj) {
    WaveFunction out = apply_creation(psi);
    if (delta_conj != cdouble(0.0)) {
        for (int i = 0; i < out.size(); ++i) out.amp[i] -= delta_conj * psi.amp[i];
        out.weight = out.norm_sq();
    }
    return out;
}

WaveFunction apply_poly_terms(const OperatorPoly& poly, const WaveFunction& psi,
                              cdouble delta) {
    validate(poly.spec);
    const int total = poly.spec.total();
    const cdouble delta_conj = std::conj(delta);
    const double scale = std::pow(2.0, -0.5 * total);
    std::vector<cdouble> acc(psi.size(), 0.0);
    for (int j = 0; j <= total; ++j) {
        if (poly.coeffs[j] == 0) continue;
        WaveFunction term = psi;
        for (int c = 0; c < j; ++c) term = raise_shifted(term, delta_conj);
        for (int c = 0; c < total - j; ++c) term = lower_shifted(term, delta);
        const double coeff = static_cast<double>(poly.coeffs[j]) *
                             std::pow(poly.eta, j) * scale;
        axpy(acc, coeff, term.amp);
    }
    return wrap(psi, std::move(acc));
}

}  // namespace

std::vector<long long> expand_coeffs(const SubtractionSpec& spec) {
    validate(spec);
    // convolve k copies of (a + b) with l copies of (a - b); index = power of a
    std::vector<long long> c{1};
    auto mul = [&c](long long b_coeff) {
        std::vector<long long> next(c.size() + 1, 0);
        for (size_t j = 0; j < c.size(); ++j) {
            next[j] += c[j] * b_coeff;  // b part
            next[j + 1] += c[j];        // a part
        }
        c = std::move(next);
    };
    for (int i = 0; i < spec.k; ++i) mul(+1);
    for (int i = 0; i < spec.l; ++i) mul(-1);
    return c;
}

OperatorPoly OperatorPoly::make(const SubtractionSpec& spec, double eta) {
    OperatorPoly poly;
    poly.spec = spec;
    poly.eta = eta;
    poly.coeffs = expand_coeffs(spec);
    return poly;
}

WaveFunction apply_f(const OperatorPoly& poly, const WaveFunction& psi) {
    return apply_poly_terms(poly, psi, cdouble(0.0));
}

WaveFunction apply_f_recursive(const SubtractionSpec& spec, double eta,
                               const WaveFunction& psi) {
    validate(spec);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (spec.k > 0) {
        const SubtractionSpec lower{spec.k - 1, spec.l};
        const WaveFunction left = apply_annihilation(apply_f_recursive(lower, eta, psi));
        const WaveFunction right = apply_f_recursive(lower, eta, apply_creation(psi));
        std::vector<cdouble> amp(psi.size());
        for (int i = 0; i < psi.size(); ++i)
            amp[i] = inv_sqrt2 * (left.amp[i] + eta * right.amp[i]);
        return wrap(psi, std::move(amp));
    }
    if (spec.l > 0) {
        const SubtractionSpec lower{0, spec.l - 1};
        const WaveFunction left = apply_annihilation(apply_f_recursive(lower, eta, psi));
        const WaveFunction right = apply_f_recursive(lower, eta, apply_creation(psi));
        std::vector<cdouble> amp(psi.size());
        for (int i = 0; i < psi.size(); ++i)
            amp[i] = inv_sqrt2 * (-left.amp[i] + eta * right.amp[i]);
        return wrap(psi, std::move(amp));
    }
    return psi;
}

WaveFunction apply_h(const OperatorPoly& poly, double m_x, double m_p,
                     const WaveFunction& psi) {
    const cdouble delta = cdouble(m_x, m_p) / std::sqrt(2.0);
    return apply_poly_terms(poly, psi, delta);
}

GLimitPoly g_limit_poly(const SubtractionSpec& spec) {
    validate(spec);
    if (spec.k > 0 && spec.l > 0)
        throw std::invalid_argument("g_limit_poly: limit known only for pure k or pure l");
    GLimitPoly out;
    out.var = (spec.l > 0) ? GLimitPoly::Var::momentum : GLimitPoly::Var::position;
    // g_{n+1} = z g_n + s (n/2) g_{n-1} with z = x (s = +1) or z = -i p (s = -1)
    const int n = spec.total();
    const bool momentum = spec.l > 0;
    std::vector<cdouble> prev{1.0};
    if (n == 0) {
        out.coeffs = prev;
        return out;
    }
    const cdouble z = momentum ? cdouble(0.0, -1.0) : cdouble(1.0, 0.0);
    const double s = momentum ? -1.0 : 1.0;
    std::vector<cdouble> cur{0.0, z};
    for (int m = 1; m < n; ++m) {
        std::vector<cdouble> next(cur.size() + 1, 0.0);
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += z * cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] += s * 0.5 * m * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    out.coeffs = cur;
    return out;
}

WaveFunction apply_g_poly(const GLimitPoly& poly, const WaveFunction& psi) {
    std::vector<cdouble> acc(psi.size(), 0.0);
    WaveFunction power = psi;  // var^i psi
    for (size_t i = 0; i < poly.coeffs.size(); ++i) {
        if (i > 0)
            power = (poly.var == GLimitPoly::Var::position) ? apply_position(power)
                                                            : apply_momentum(power);
        axpy(acc, poly.coeffs[i], power.amp);
    }
    return wrap(psi, std::move(acc));
}

}  // namespace wavecraft
