#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavecraft {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raw squared norms below this mark a state as null (annihilated).
inline constexpr double kNullWeight = 1e-12;

struct GridMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NullStateError : std::runtime_error {
    explicit NullStateError(const std::string& msg, int step = -1)
        : std::runtime_error(msg), step_index(step) {}
    int step_index;
};

/// Aliasing, normalization-coverage or other numerical failures.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniformly sampled quadrature axis, symmetric about zero (hbar = 1).
///
/// Points run from -extent to +extent inclusive, spacing = 2*extent/(n-1).
/// The same axis doubles as the momentum axis after a Fourier rotation.
class QuadratureGrid {
public:
    QuadratureGrid() = default;

    /// Throws std::invalid_argument for n_points < 2 or extent <= 0, and
    /// when the Nyquist band pi/spacing cannot hold `p_support`.
    QuadratureGrid(int n_points, double extent, double p_support = 0.0);

    int size() const { return n_; }
    double extent() const { return extent_; }
    double x_min() const { return -extent_; }
    double x_max() const { return extent_; }
    double spacing() const { return spacing_; }
    double nyquist() const { return kPi / spacing_; }
    double x(int i) const { return -extent_ + spacing_ * i; }

    bool operator==(const QuadratureGrid& o) const {
        return n_ == o.n_ && extent_ == o.extent_;
    }
    bool operator!=(const QuadratureGrid& o) const { return !(*this == o); }

private:
    int n_ = 0;
    double extent_ = 0.0;
    double spacing_ = 0.0;
};

QuadratureGrid make_grid(int n_points, double extent, double p_support = 0.0);

/// Complex amplitudes sampled on a QuadratureGrid.
///
/// `weight` records the squared L2 norm of the raw amplitudes as produced by
/// the last (generally norm-changing) operation; normalized() rescales the
/// amplitudes to unit norm but keeps the recorded weight, so heralding
/// probabilities stay recoverable downstream.
struct WaveFunction {
    QuadratureGrid grid;
    std::vector<cdouble> amp;
    double weight = 0.0;

    WaveFunction() = default;
    WaveFunction(QuadratureGrid g, std::vector<cdouble> a);

    int size() const { return grid.size(); }

    /// Squared L2 norm of the current amplitudes.
    double norm_sq() const;

    bool is_null() const { return weight < kNullWeight; }

    /// Unit-norm copy; the returned weight still carries the raw norm.
    /// Throws NullStateError if the state is null.
    WaveFunction normalized() const;
};

/// Riemann-sum inner product sum(conj(a_i) * b_i) * spacing.
/// Throws GridMismatchError unless both live on the same grid.
cdouble inner_product(const WaveFunction& a, const WaveFunction& b);

/// |<a|b>|^2 between the normalized states; throws on null input.
double fidelity(const WaveFunction& a, const WaveFunction& b);

}  // namespace wavecraft
