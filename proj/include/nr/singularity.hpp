#pragma once

#include <vector>

#include "nr/ternary_quartic.hpp"

namespace nr {

// Real affine singularity of the dual curve: grad p (u0, v0, 1) = (0,0,0).
// The line u0 x + v0 y + 1 = 0 sits at distance 1/sqrt(u0^2+v0^2) from the
// origin; that line carries the flat portion when the tangency conditions hold.
struct Singularity {
    double u0 = 0.0;
    double v0 = 0.0;
    double grad_residual = 0.0;           // ||grad p(u0,v0,1)||
    double distance_to_origin_of_line = 0.0;
    double line_angle = 0.0;              // atan2(v0,u0) in [0, 2*pi)
    bool hessian_degenerate = false;      // Newton Jacobian singular at the point
};

// Damped Newton on (p_u, p_v) restricted to w = 1, seeded on grid_n x grid_n
// grids at radius * {1, 1/8, 1/64} (the multiscale seeding keeps small-radius
// singularities reachable when the caller passes a generous radius). A point is
// accepted only if the full gradient, p_w included, is below tol; results are
// deduplicated within 1e-6 and sorted by angle then radius.
std::vector<Singularity> find_real_singularities(const TernaryQuartic& p, double radius,
                                                 int grid_n = 64, double tol = 1e-10);

// Independent algebraic re-check for nilpotent inputs: the three linear
// singularity equations in (c1..c6, -4) evaluated at (u0, v0, 1).
bool check_coefficient_consistency(const NilpotentCoefficients& c, double u0, double v0,
                                   double tol);

} // namespace nr
