#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nr/boundary.hpp"
#include "nr/complex_matrix.hpp"
#include "nr/flat_portion.hpp"
#include "nr/singularity.hpp"
#include "nr/ternary_quartic.hpp"

namespace nr {

// Why a singularity did or did not yield a flat portion.
enum class FlatReason {
    ok,
    gradient_residual_too_large, // precondition on the singularity failed
    degenerate_hessian,          // a22 ~ 0 and the rotated retest degenerated too
    repeated_tangent,            // a12^2 - a11 a22 <= 0 (borderline cases flagged)
    quadratic_form_zero,         // a11 u0^2 + 2 a12 u0 v0 + a22 v0^2 ~ 0
    endpoint_degenerate,         // tangent-line denominator vanished
    gamma_exceeds_one            // a real root of p(u0,v0,gamma) lies beyond 1
};

std::string to_string(FlatReason r);

struct FlatOutcome {
    Singularity at;
    FlatReason reason = FlatReason::ok;
    std::optional<FlatPortion> flat;
    bool borderline_discriminant = false; // |a12^2 - a11 a22| within threshold of 0
    bool complex_gamma_warning = false;   // complex root of the gamma quartic with Re > 1
};

// Tangency test at a curve singularity: checks the Hessian conditions and the
// support-line condition (real roots of p(u0,v0,gamma) must not exceed 1), then
// produces the two tangent points as the flat endpoints. When a22 ~ 0 the test
// is rerun in coordinates rotated by pi/7 and the result rotated back.
FlatOutcome flat_from_singularity(const TernaryQuartic& p, const Singularity& s);

// Eigensystem detector: scans support directions for a degenerate top
// eigenvalue of Re(e^{-i phi} A), refines each candidate by golden-section
// search on the gap, and reports a flat when the extreme boundary points on
// the support line differ by more than 1e-7. gap_tol < 0 means 1e-7 * ||A||.
std::vector<FlatPortion> flats_via_rotation_sweep(const ComplexMatrix& A, int n_phi = 2048,
                                                  double gap_tol = -1.0);

struct CrossCheck {
    int matched = 0;
    std::vector<std::string> discrepancies;
    bool ok() const { return discrepancies.empty(); }
};

struct SymmetryInfo {
    double angle = 0.0;     // line through the origin, in [0, pi)
    double hausdorff = 0.0; // reflected-boundary mismatch, vertex Hausdorff
};

struct AnalyzeOptions {
    int n_phi = 2048;
    int grid_n = 64;
    double radius = -1.0;  // < 0: 8 * max(||A||, 1/||A||)
    double gap_tol = -1.0; // < 0: 1e-7 * ||A||
};

struct FlatReport {
    bool nilpotent = false;
    double norm = 0.0;              // operator norm of the input
    Vec2 translation;               // centroid shift applied before detection
    TernaryQuartic polynomial;      // of the (possibly translated) matrix
    std::optional<NilpotentCoefficients> nilpotent_coefficients;
    std::vector<Singularity> singularities;
    std::vector<FlatOutcome> singularity_outcomes;
    std::vector<FlatPortion> flats;       // singularity-derived, translated back
    std::vector<FlatPortion> sweep_flats; // sweep-derived, original coordinates
    CrossCheck cross_check;
    std::optional<SymmetryInfo> symmetry;

    std::string to_json_string() const;
};

// Full pipeline: polynomial (both construction paths where applicable),
// singularities, tangency tests, rotation sweep, and the cross-match of the
// two flat lists. Non-nilpotent inputs are first translated by the centroid of
// 64 boundary samples so the origin lies inside the numerical range.
FlatReport analyze(const ComplexMatrix& A, const AnalyzeOptions& opt = {});

} // namespace nr
