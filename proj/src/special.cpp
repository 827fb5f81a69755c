#include "wavecraft/special.hpp"

#include <boost/math/special_functions/airy.hpp>

#include <cmath>
#include <stdexcept>

namespace wavecraft::special {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hermite(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite: negative order");
    double hm = 1.0;  // H_0
    if (n == 0) return hm;
    double h = 2.0 * x;  // H_1
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

std::vector<double> hermite_function(int n, const std::vector<double>& x) {
    if (n < 0) throw std::invalid_argument("hermite_function: negative order");
    const double pi_quarter = std::pow(kPi, -0.25);
    std::vector<double> prev(x.size()), cur(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        cur[i] = pi_quarter * std::exp(-0.5 * x[i] * x[i]);
    // phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}
    for (int k = 0; k < n; ++k) {
        const double a = std::sqrt(2.0 / (k + 1));
        const double b = (k > 0) ? std::sqrt(static_cast<double>(k) / (k + 1)) : 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double next = a * x[i] * cur[i] - b * prev[i];
            prev[i] = cur[i];
            cur[i] = next;
        }
    }
    return cur;
}

double airy_ai(double x) { return boost::math::airy_ai(x); }

}  // namespace wavecraft::special
