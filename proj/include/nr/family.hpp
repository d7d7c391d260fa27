#pragma once

#include <array>
#include <utility>

#include "nr/angles.hpp"
#include "nr/complex_matrix.hpp"
#include "nr/flat_portion.hpp"
#include "nr/singularity.hpp"

namespace nr {

// Parameters of the canonical nilpotent 4x4 matrix whose numerical range has
// two non-parallel flat portions on lines at distance d from the origin
// meeting at angle theta:
//   e^{it} [[0, x, d1, y], [0, 0, y, d2], [0, 0, 0, x], [0, 0, 0, 0]]
// with x in (0, 2d), 0 < y <= ymax(d, theta, x), and d1, d2 the roots of
// d t^2 - x y S t + d (x^2 + y^2 - 4 d^2) = 0, S = sin(theta/2). swap_deltas
// selects the other root order (a different unitary class, same range).
struct FamilyParams {
    double d = 1.0;
    double theta = kPi / 2.0;
    double x = 1.0;
    double y = 1.0;
    double t = 0.0;
    bool swap_deltas = false;
};

// Upper bound of the valid y range: sqrt((16 d^4 - 4 d^2 x^2) / (4 d^2 - x^2 S^2)).
double ymax(double d, double theta, double x);

// Throws DomainError naming the violated bound.
void validate(const FamilyParams& p);

// (delta1, delta2); delta1 carries the + branch unless swap_deltas.
std::pair<double, double> deltas(const FamilyParams& p);

ComplexMatrix build_family_matrix(const FamilyParams& p);

// One-parameter example family [[0,1,0,1],[0,0,1,k],[0,0,0,1],[0,0,0,0]],
// k in (0, sqrt(2)); equals the canonical form with d = 1/sqrt(2), x = y = 1,
// theta = 2 asin(k / sqrt(2)) and the deltas swapped.
ComplexMatrix build_Ak(double k);
double theta_from_k(double k);
double k_from_theta(double theta);

// Two-parameter family with flat portions of maximal length d.
ComplexMatrix build_M(double d, double theta);

// Maximal-length choice x = y = 2d / sqrt(1 + C).
double maximal_xy(double d, double theta);

// Flat length 8 d^3 x y C / (16 d^4 - x^2 y^2 S^2).
double flat_length(const FamilyParams& p);

// tr(A^2 (A*)^2) = x^2 y^2 (2 + x^2 S^2 / d^2), a unitary invariant that
// separates equal-range members of the family.
double trace_invariant_expected(const FamilyParams& p);

struct FamilyPrediction {
    std::array<Singularity, 2> singularities; // (S/d, +-C/d) rotated by t
    std::array<FlatPortion, 2> flats;         // source = prediction
    double length = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double symmetry_angle = 0.0; // line through the origin, in [0, pi)
    double mutual_angle = 0.0;   // angle between the two flat lines (= theta)
    Vec2 line_intersection;      // at distance d csc(theta/2), direction t + pi
};

FamilyPrediction predicted_flats(const FamilyParams& p);

} // namespace nr
