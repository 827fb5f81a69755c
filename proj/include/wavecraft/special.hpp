#pragma once

#include <vector>

namespace wavecraft::special {

/// Physicists' Hermite polynomial H_n(x), three-term recurrence.
double hermite(int n, double x);

/// Normalized harmonic-oscillator eigenfunction values
/// phi_n(x) = pi^(-1/4) (2^n n!)^(-1/2) H_n(x) exp(-x^2/2),
/// evaluated by the recurrence on the normalized functions (stable to
/// n = 64 and beyond).
std::vector<double> hermite_function(int n, const std::vector<double>& x);

/// Airy function Ai of a real argument, absolute error < 1e-10.
double airy_ai(double x);

}  // namespace wavecraft::special
