#pragma once

#include <array>
#include <complex>
#include <vector>

namespace nr {

// Roots of the monic quartic x^4 + b3 x^3 + b2 x^2 + b1 x + b0 with real
// coefficients. Depressed quartic + resolvent cubic for starting values,
// complex Newton polish, then near-double pairs are re-polished on the
// derivative so that double roots come out to full precision instead of the
// usual sqrt(eps).
std::array<std::complex<double>, 4> solve_quartic_monic(double b3, double b2, double b1, double b0);

// Real roots extracted from solve_quartic_monic (ascending). A root counts as
// real when |Im| <= 1e-8 * (1 + |Re|); polished double roots appear twice.
std::vector<double> real_quartic_roots(double b3, double b2, double b1, double b0);

// All real roots of a polynomial with real coefficients (index = power) inside
// [lo, hi], found by sign-change bisection on a fine grid. Independent of the
// closed-form path; used as a test oracle.
std::vector<double> bisect_real_roots(const std::vector<double>& coeffs, double lo, double hi,
                                      int grid = 4096, double tol = 1e-13);

} // namespace nr
