#include "wavecraft/grid.hpp"

#include <cmath>

namespace wavecraft {

QuadratureGrid::QuadratureGrid(int n_points, double extent, double p_support) {
    if (n_points < 2)
        throw std::invalid_argument("QuadratureGrid: need at least 2 points");
    if (!(extent > 0.0))
        throw std::invalid_argument("QuadratureGrid: extent must be positive");
    n_ = n_points;
    extent_ = extent;
    spacing_ = 2.0 * extent / (n_points - 1);
    if (p_support > 0.0 && nyquist() <= p_support)
        throw std::invalid_argument(
            "QuadratureGrid: Nyquist band pi/spacing = " + std::to_string(nyquist()) +
            " cannot hold requested momentum support " + std::to_string(p_support));
}

QuadratureGrid make_grid(int n_points, double extent, double p_support) {
    return QuadratureGrid(n_points, extent, p_support);
}

WaveFunction::WaveFunction(QuadratureGrid g, std::vector<cdouble> a)
    : grid(g), amp(std::move(a)) {
    if (static_cast<int>(amp.size()) != grid.size())
        throw std::invalid_argument("WaveFunction: amplitude count does not match grid");
    weight = norm_sq();
}

double WaveFunction::norm_sq() const {
    double s = 0.0;
    for (const cdouble& a : amp) s += std::norm(a);
    return s * grid.spacing();
}

WaveFunction WaveFunction::normalized() const {
    const double n2 = norm_sq();
    if (n2 < kNullWeight)
        throw NullStateError("normalize: state is null");
    WaveFunction out = *this;
    const double inv = 1.0 / std::sqrt(n2);
    for (cdouble& a : out.amp) a *= inv;
    return out;  // weight keeps the raw norm recorded by the last operation
}

cdouble inner_product(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid != b.grid)
        throw GridMismatchError("inner_product: grids differ");
    cdouble s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s * a.grid.spacing();
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid != b.grid)
        throw GridMismatchError("fidelity: grids differ");
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na < kNullWeight || nb < kNullWeight)
        throw NullStateError("fidelity: null input");
    const double f = std::norm(inner_product(a, b)) / (na * nb);
    return f < 1.0 ? f : 1.0;
}

}  // namespace wavecraft
