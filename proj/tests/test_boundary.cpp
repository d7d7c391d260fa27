#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "nr/angles.hpp"
#include "nr/boundary.hpp"
#include "nr/family.hpp"
#include "nr/flat_detect.hpp"
#include "nr/random_gen.hpp"
#include "test_helpers.hpp"

using namespace nr;
using nrtest::gau_wu_matrix;
using nrtest::jordan4;

namespace {

// Signed distance of a point to a convex CCW polyline boundary (positive
// inside); used for the endpoint containment check.
double inside_margin(const Polyline& poly, Vec2 p) {
    double margin = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.pts[i];
        const Vec2 b = poly.pts[(i + 1) % n];
        const Vec2 e = b - a;
        const double len = norm(e);
        if (len <= 1e-14) continue;
        margin = std::min(margin, cross(e, p - a) / len);
    }
    return margin;
}

} // namespace

TEST_CASE("disk boundary: radius and no flats") {
    const ComplexMatrix j4 = jordan4();
    const BoundaryResult br = sample_boundary(j4, 1024);
    const double radius = std::cos(kPi / 5.0);
    for (const auto& s : br.samples) {
        REQUIRE(std::abs(norm(s.point) - radius) <= 1e-6);
        REQUIRE(std::abs(s.support_value - radius) <= 1e-9);
    }
    CHECK(convexity_defect(br.polyline) <= 1e-8);
    CHECK(extract_flats_geometric(br.polyline, br.samples, 1e-4, 1e-6, 1.0).empty());
}

TEST_CASE("zero matrix boundary collapses to the origin") {
    const BoundaryResult br = sample_boundary(ComplexMatrix::zero(4), 64);
    for (const auto& s : br.samples) REQUIRE(norm(s.point) <= 1e-300);
}

TEST_CASE("normal matrix boundary is the square on its spectrum") {
    const ComplexMatrix a = nrtest::diag4(1.0, Complex(0.0, 1.0), -1.0, Complex(0.0, -1.0));
    const BoundaryResult br = sample_boundary(a, 1024);
    CHECK(convexity_defect(br.polyline) <= 1e-8);
    auto seg_dist = [](Vec2 p, Vec2 a0, Vec2 b0) {
        const Vec2 e = b0 - a0;
        const double t = std::clamp(dot(p - a0, e) / dot(e, e), 0.0, 1.0);
        return distance(p, a0 + t * e);
    };
    const Vec2 verts[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (const auto& s : br.samples) {
        // every emitted point lies on the square's boundary (vertices plus the
        // segment extremes/midpoints inserted at degenerate directions)
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) m = std::min(m, seg_dist(s.point, verts[i], verts[(i + 1) % 4]));
        REQUIRE(m <= 1e-7);
    }
    const auto flats = extract_flats_geometric(br.polyline, br.samples, 1e-4, 1e-6, 1.0);
    REQUIRE(flats.size() == 4);
    for (const auto& f : flats) {
        CHECK(f.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
        CHECK(f.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    }
}

TEST_CASE("support consistency") {
    Rng rng(23);
    const ComplexMatrix a = random_strict_upper(4, rng);
    const double nrm = operator_norm(a);
    const BoundaryResult br = sample_boundary(a, 256);
    for (const auto& s : br.samples) {
        const double along = s.point.x * std::cos(s.phi) + s.point.y * std::sin(s.phi);
        REQUIRE(std::abs(along - s.support_value) <= 1e-10 * std::max(1.0, nrm));
        REQUIRE(s.support_value <= nrm + 1e-9);
    }
}

TEST_CASE("maximal-length family flats from pure geometry") {
    const ComplexMatrix m = build_M(1.0, 2.0 * kPi / 3.0);
    const BoundaryResult br = sample_boundary(m, 4096);
    CHECK(convexity_defect(br.polyline) <= 1e-8 * operator_norm(m));
    const auto flats = extract_flats_geometric(br.polyline, br.samples, 1e-4, 1e-6, operator_norm(m));
    REQUIRE(flats.size() == 2);
    for (const auto& f : flats) {
        CHECK(f.length == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(f.distance == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("geometric flat lengths converge under refinement") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 0.5 * kPi;
    p.x = 1.1;
    p.y = 0.9 * ymax(p.d, p.theta, p.x);
    const ComplexMatrix a = build_family_matrix(p);
    const double nrm = operator_norm(a);
    const BoundaryResult lo = sample_boundary(a, 2048);
    const BoundaryResult hi = sample_boundary(a, 8192);
    const auto flo = extract_flats_geometric(lo.polyline, lo.samples, 1e-4, 1e-6, nrm);
    const auto fhi = extract_flats_geometric(hi.polyline, hi.samples, 1e-4, 1e-6, nrm);
    REQUIRE(flo.size() == 2);
    REQUIRE(fhi.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(flo[i].length - fhi[i].length) <= 1e-6);
}

TEST_CASE("closed-form endpoints lie on the sampled boundary") {
    FamilyParams p;
    p.d = 1.4;
    p.theta = 0.62 * kPi;
    p.x = 1.7;
    p.y = 0.85 * ymax(p.d, p.theta, p.x);
    const ComplexMatrix a = build_family_matrix(p);
    const BoundaryResult br = sample_boundary(a, 4096);
    const FamilyPrediction pred = predicted_flats(p);
    for (const auto& f : pred.flats)
        for (const Vec2 e : {f.endpoint1, f.endpoint2})
            REQUIRE(std::abs(inside_margin(br.polyline, e)) <= 1e-4);
}

TEST_CASE("flat line distances sit between inradius and circumradius") {
    FamilyParams p;
    p.d = 0.8;
    p.theta = 0.4 * kPi;
    p.x = 1.0;
    p.y = 0.8 * ymax(p.d, p.theta, p.x);
    const ComplexMatrix a = build_family_matrix(p);
    const BoundaryResult br = sample_boundary(a, 2048);
    double inradius = std::numeric_limits<double>::infinity(), circum = 0.0;
    for (const auto& s : br.samples) {
        inradius = std::min(inradius, s.support_value);
        circum = std::max(circum, norm(s.point));
    }
    const auto flats = extract_flats_geometric(br.polyline, br.samples, 1e-4, 1e-6, operator_norm(a));
    REQUIRE(flats.size() == 2);
    for (const auto& f : flats) {
        CHECK(f.distance >= inradius - 1e-6);
        CHECK(f.distance <= circum + 1e-6);
    }
}

TEST_CASE("support function equals the polyline maximum") {
    Rng rng(29);
    const ComplexMatrix a = random_strict_upper(4, rng);
    const BoundaryResult br = sample_boundary(a, 2048);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    Rng rng2(31);
    for (int trial = 0; trial < 100; ++trial) {
        const double phi = uni(rng2);
        const double h = support_info(a, phi, 0.0).support;
        double poly_max = -std::numeric_limits<double>::infinity();
        for (const Vec2& p : br.polyline.pts)
            poly_max = std::max(poly_max, p.x * std::cos(phi) + p.y * std::sin(phi));
        // polyline underestimates by at most the discretization sagitta
        const double bound = 2.0 * operator_norm(a) * std::pow(kPi / 2048.0, 2);
        REQUIRE(poly_max <= h + 1e-10);
        REQUIRE(h - poly_max <= 2.0 * bound + 1e-10);
    }
}

TEST_CASE("reflection symmetry of sampled boundaries") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 0.35 * kPi;
    p.x = 1.2;
    p.y = 0.7 * ymax(p.d, p.theta, p.x);
    const ComplexMatrix a = build_family_matrix(p);
    const BoundaryResult br = sample_boundary(a, 1024, 0.0);
    CHECK(check_symmetry(br.polyline, 0.0) <= 1e-6 * operator_norm(a));

    const ComplexMatrix gw = gau_wu_matrix();
    const BoundaryResult bgw = sample_boundary(gw, 1024, kPi / 2.0);
    CHECK(check_symmetry(bgw.polyline, kPi / 2.0) <= 1e-6 * operator_norm(gw));

    // grid-aligned angles on a circle
    const BoundaryResult bj = sample_boundary(jordan4(), 1024);
    for (double angle : {0.0, kPi / 8.0, kPi / 2.0, 3.0 * kPi / 4.0})
        CHECK(check_symmetry(bj.polyline, angle) <= 1e-6);
}

TEST_CASE("csv export shape") {
    const BoundaryResult br = sample_boundary(jordan4(), 64);
    const std::string csv = boundary_csv(br.samples);
    CHECK(csv.rfind("phi,support,x,y,gap\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65); // header + one row per sample
}

TEST_CASE("svg export has the expected skeleton") {
    const BoundaryResult br = sample_boundary(gau_wu_matrix(), 256);
    SvgOptions opt;
    opt.symmetry_angle = kPi / 2.0;
    const std::string svg = boundary_svg(br.polyline, opt);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}
