#pragma once

#include <string>
#include <vector>

#include "nr/complex_matrix.hpp"
#include "nr/flat_portion.hpp"
#include "nr/vec2.hpp"

namespace nr {

struct BoundarySample {
    double phi = 0.0;           // support direction
    double support_value = 0.0; // h(phi) = lambda_max(Re(e^{-i phi} A))
    Vec2 point;                 // <A xi, xi> as a plane point
    double eigen_gap = 0.0;     // lambda_max - lambda_second at phi
};

struct Polyline {
    std::vector<Vec2> pts; // closed: last connects back to first
};

struct BoundaryResult {
    Polyline polyline;
    std::vector<BoundarySample> samples;
};

struct SupportInfo {
    double support = 0.0;
    double eigen_gap = 0.0;
    std::vector<Vec2> extreme_points; // one contact point, or the segment extremes
};

// Support value, top eigen gap and contact point(s) in direction phi. When the
// gap is within degen_tol the two extreme points of the top-eigenspace
// compression of Im(e^{-i phi} A) are returned (ordered along the boundary).
SupportInfo support_info(const ComplexMatrix& A, double phi, double degen_tol);

// n support directions phi0 + 2*pi*k/n. At (near-)degenerate directions
// (eigen gap below 1e-9*||A||) both extreme points of the top eigenspace
// compression are emitted, so flats enter the polyline as full segments.
// When refine_degenerate is set, local minima of the eigen gap are refined by
// golden-section search and, if the refined gap is degenerate, the exact
// segment endpoints (plus their midpoint) are spliced into the polyline.
BoundaryResult sample_boundary(const ComplexMatrix& A, int n, double phi0 = 0.0,
                               bool refine_degenerate = true);

// Geometric flat extraction: maximal chains of consecutive vertices that stay
// within collinear_tol * ||A|| of a common line, with consecutive edge turns
// bounded by angle_tol. Zero-length edges (repeated contact points at corners)
// are skipped when measuring turns.
std::vector<FlatPortion> extract_flats_geometric(const Polyline& poly,
                                                 const std::vector<BoundarySample>& samples,
                                                 double angle_tol = 1e-4,
                                                 double collinear_tol = 1e-6,
                                                 double scale = 1.0);

// Symmetric vertex-to-vertex Hausdorff distance between the polyline and its
// reflection about the line through the origin at line_angle. Vertex-based, so
// it is discretization-free only when the sampling grid is symmetric about the
// tested line (pass phi0 = line_angle to sample_boundary).
double check_symmetry(const Polyline& poly, double line_angle);

// Max signed violation of counterclockwise convexity (0 for convex input).
double convexity_defect(const Polyline& poly);

// Symmetric vertex-to-vertex Hausdorff distance between two polylines.
double hausdorff_vertices(const Polyline& a, const Polyline& b);

// "phi,support,x,y,gap" rows.
std::string boundary_csv(const std::vector<BoundarySample>& samples);

struct SvgOptions {
    std::vector<FlatPortion> flats;    // overdrawn as highlighted segments
    double symmetry_angle = -1.0;      // dashed line through origin when >= 0
    int width = 640;
};
std::string boundary_svg(const Polyline& poly, const SvgOptions& opt = {});

} // namespace nr
