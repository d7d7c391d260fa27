#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "nr/angles.hpp"
#include "nr/errors.hpp"
#include "nr/family.hpp"
#include "nr/flat_detect.hpp"
#include "nr/poly_roots.hpp"
#include "nr/random_gen.hpp"
#include "test_helpers.hpp"

using namespace nr;
using nrtest::gau_wu_matrix;
using nrtest::jordan4;

namespace {

FamilyParams gw_params(bool swap) {
    FamilyParams p;
    p.d = std::sqrt(5.0) / 2.0;
    p.theta = 2.0 * std::asin(std::sqrt(5.0) / 4.0);
    p.x = 1.0;
    p.y = 2.0;
    p.swap_deltas = swap;
    return p;
}

// Matches two flats as unordered sets on line parameters and endpoints.
double flat_set_distance(const std::vector<FlatPortion>& a, const std::vector<FlatPortion>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& f : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : b) {
            const double line = std::hypot(f.line_u0 - g.line_u0, f.line_v0 - g.line_v0);
            const double direct =
                std::max(distance(f.endpoint1, g.endpoint1), distance(f.endpoint2, g.endpoint2));
            const double swapped =
                std::max(distance(f.endpoint1, g.endpoint2), distance(f.endpoint2, g.endpoint1));
            best = std::min(best, std::max(line, std::min(direct, swapped)));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("tangency test on the maximal-length family point") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 2.0 * kPi / 3.0;
    p.x = p.y = std::nextafter(maximal_xy(p.d, p.theta), 0.0);
    const double s_half = std::sin(p.theta / 2.0), c_half = std::cos(p.theta / 2.0);
    const TernaryQuartic poly = nr_poly_general(build_family_matrix(p));
    // In the equal-deltas limit the curve carries an extra real singular point
    // on the u-axis whose line cuts the interior; the support-line condition
    // has to reject it while keeping the two flat-generating ones.
    const auto sings = find_real_singularities(poly, 8.0);
    REQUIRE(sings.size() >= 2);
    int flats_found = 0;
    for (const auto& s : sings) {
        const FlatOutcome out = flat_from_singularity(poly, s);
        const bool is_flat_point = std::abs(s.u0 - s_half) <= 1e-6 &&
                                   std::abs(std::abs(s.v0) - c_half) <= 1e-6;
        if (!is_flat_point) {
            CHECK_FALSE(out.flat.has_value());
            CHECK(out.reason == FlatReason::gamma_exceeds_one);
            continue;
        }
        ++flats_found;
        REQUIRE(out.reason == FlatReason::ok);
        REQUIRE(out.flat.has_value());
        CHECK(out.flat->length == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(out.flat->distance == doctest::Approx(1.0).epsilon(1e-10));
        for (const Vec2 e : {out.flat->endpoint1, out.flat->endpoint2})
            CHECK(std::abs(out.flat->line_u0 * e.x + out.flat->line_v0 * e.y + 1.0) <= 1e-8);
    }
    CHECK(flats_found == 2);
}

TEST_CASE("emitted flats satisfy the closed-form length formula") {
    FamilyParams p;
    p.d = 1.2;
    p.theta = 0.42 * kPi;
    p.x = 1.3;
    p.y = 0.77 * ymax(p.d, p.theta, p.x);
    const TernaryQuartic poly = nr_poly_general(build_family_matrix(p));
    for (const auto& s : find_real_singularities(poly, 8.0)) {
        const FlatOutcome out = flat_from_singularity(poly, s);
        REQUIRE(out.flat.has_value());
        const auto h = poly.hessian_uv(s.u0, s.v0, 1.0);
        const double disc = h.a12 * h.a12 - h.a11 * h.a22;
        const double q = h.a11 * s.u0 * s.u0 + 2.0 * h.a12 * s.u0 * s.v0 + h.a22 * s.v0 * s.v0;
        const double formula = 2.0 * std::sqrt(disc) * std::hypot(s.u0, s.v0) / std::abs(q);
        REQUIRE(std::abs(out.flat->length - formula) <= 1e-9 * std::max(1.0, formula));
    }
}

TEST_CASE("gamma quartic of the family factors as predicted") {
    FamilyParams p;
    p.d = 0.9;
    p.theta = 0.58 * kPi;
    p.x = 1.0;
    p.y = 0.8 * ymax(p.d, p.theta, p.x);
    const double s = std::sin(p.theta / 2.0);
    const TernaryQuartic poly = nr_poly_general(build_family_matrix(p));
    const double c = std::cos(p.theta / 2.0);
    const auto g = poly.gamma_polynomial(s / p.d, c / p.d);
    const auto roots = solve_quartic_monic(g[3] / g[4], g[2] / g[4], g[1] / g[4], g[0] / g[4]);

    const double simple = s * p.x * p.y / (2.0 * p.d * p.d);
    int at_one = 0, at_lo = 0, at_hi = 0;
    for (const auto& z : roots) {
        if (std::abs(z - Complex(1.0, 0.0)) <= 1e-8) ++at_one;
        if (std::abs(z - Complex(-1.0 - simple, 0.0)) <= 1e-8) ++at_lo;
        if (std::abs(z - Complex(-1.0 + simple, 0.0)) <= 1e-8) ++at_hi;
    }
    CHECK(at_one == 2);
    CHECK(at_lo == 1);
    CHECK(at_hi == 1);
}

TEST_CASE("rotation sweep on a normal matrix finds the square sides") {
    const ComplexMatrix a = nrtest::diag4(1.0, Complex(0.0, 1.0), -1.0, Complex(0.0, -1.0));
    const auto flats = flats_via_rotation_sweep(a);
    REQUIRE(flats.size() == 4);
    for (const auto& f : flats) {
        CHECK(f.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(f.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    }
}

TEST_CASE("rotation sweep on the maximal family and the disk") {
    const auto flats = flats_via_rotation_sweep(build_M(1.0, 2.0 * kPi / 3.0));
    REQUIRE(flats.size() == 2);
    for (const auto& f : flats) {
        CHECK(f.length == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(f.distance == doctest::Approx(1.0).epsilon(1e-9));
    }
    const double b1 = std::atan2(flats[0].line_v0, flats[0].line_u0);
    const double b2 = std::atan2(flats[1].line_v0, flats[1].line_u0);
    CHECK(mutual_line_angle(b1, b2) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-9));

    CHECK(flats_via_rotation_sweep(jordan4()).empty());
    CHECK(flats_via_rotation_sweep(ComplexMatrix::zero(4)).empty());
}

TEST_CASE("analyze on the two-flat example") {
    const FlatReport rep = analyze(gau_wu_matrix());
    CHECK(rep.nilpotent);
    CHECK(rep.singularities.size() == 2);
    REQUIRE(rep.flats.size() == 2);
    REQUIRE(rep.sweep_flats.size() == 2);
    CHECK(rep.cross_check.matched == 2);
    CHECK(rep.cross_check.ok());

    const double len = 2.0 * std::sqrt(55.0) / 19.0;
    for (const auto& f : rep.flats) {
        CHECK(f.length == doctest::Approx(len).epsilon(1e-7));
        CHECK(f.distance == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-8));
    }
    REQUIRE(rep.symmetry.has_value());
    CHECK(rep.symmetry->angle == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    CHECK(rep.symmetry->hausdorff <= 1e-6 * rep.norm);
}

TEST_CASE("analyze relates the example to its real family form") {
    const FlatReport rep_gw = analyze(gau_wu_matrix());
    const FlatReport rep_real = analyze(build_family_matrix(gw_params(true)));
    REQUIRE(rep_gw.flats.size() == 2);
    REQUIRE(rep_real.flats.size() == 2);
    for (int i = 0; i < 2; ++i)
        CHECK(rep_gw.flats[static_cast<std::size_t>(i)].length ==
              doctest::Approx(rep_real.flats[static_cast<std::size_t>(i)].length).epsilon(1e-9));
    REQUIRE(rep_real.symmetry.has_value());
    CHECK(rep_real.symmetry->angle == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("analyze trivial inputs") {
    const FlatReport zero = analyze(ComplexMatrix::zero(4));
    CHECK(zero.nilpotent);
    CHECK(zero.flats.empty());
    CHECK(zero.sweep_flats.empty());
    CHECK(zero.singularities.empty());

    const FlatReport disk = analyze(jordan4());
    CHECK(disk.nilpotent);
    CHECK(disk.singularities.empty());
    CHECK(disk.flats.empty());
    CHECK(disk.sweep_flats.empty());
    CHECK(disk.cross_check.ok());
}

TEST_CASE("analyze the one-parameter example family") {
    const double k = std::sqrt(1.0 - std::sqrt(3.0) / 2.0);
    const FlatReport rep = analyze(build_Ak(k));
    REQUIRE(rep.flats.size() == 2);
    const double b1 = std::atan2(rep.flats[0].line_v0, rep.flats[0].line_u0);
    const double b2 = std::atan2(rep.flats[1].line_v0, rep.flats[1].line_u0);
    CHECK(mutual_line_angle(b1, b2) == doctest::Approx(kPi / 6.0).epsilon(1e-8));
}

TEST_CASE("flats rotate with the matrix") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 0.5 * kPi;
    p.x = 1.1;
    p.y = 0.8 * ymax(p.d, p.theta, p.x);
    const ComplexMatrix a = build_family_matrix(p);
    const double t = 0.7;
    const ComplexMatrix b = std::exp(Complex(0.0, t)) * a;

    auto rotated = flats_via_rotation_sweep(a);
    for (auto& f : rotated) {
        f.endpoint1 = rotate(f.endpoint1, t);
        f.endpoint2 = rotate(f.endpoint2, t);
        const Vec2 line = rotate(Vec2{f.line_u0, f.line_v0}, t);
        f.line_u0 = line.x;
        f.line_v0 = line.y;
        finalize_flat(f);
    }
    CHECK(flat_set_distance(flats_via_rotation_sweep(b), rotated) <= 1e-8);
}

TEST_CASE("flats are invariant under unitary similarity") {
    Rng rng(61);
    const ComplexMatrix a = gau_wu_matrix();
    const ComplexMatrix u = random_unitary(4, rng);
    const auto fa = flats_via_rotation_sweep(a);
    const auto fb = flats_via_rotation_sweep(u.adjoint() * a * u);
    CHECK(flat_set_distance(fa, fb) <= 1e-8);
}

TEST_CASE("sweep never reports more than two flats on random nilpotent input") {
    Rng seeds(123);
    for (int trial = 0; trial < 150; ++trial) {
        Rng rng(seeds());
        const ComplexMatrix a = random_strict_upper(4, rng);
        REQUIRE(flats_via_rotation_sweep(a).size() <= 2);
    }
}

TEST_CASE("report serialization is valid deterministic JSON") {
    const FlatReport rep = analyze(gau_wu_matrix());
    const std::string s1 = rep.to_json_string();
    const std::string s2 = analyze(gau_wu_matrix()).to_json_string();
    CHECK(s1 == s2);
    const auto j = nlohmann::json::parse(s1);
    CHECK(j["nilpotent"].get<bool>());
    CHECK(j["flats"].size() == 4); // closed-form pair + sweep pair
    CHECK(j["cross_check"]["matched"].get<int>() == 2);
    CHECK(j["polynomial"]["degree"].get<int>() == 4);
    CHECK(j["polynomial"]["coeffs"].size() == 15);
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(flats_via_rotation_sweep(jordan4(), 100), DomainError);
}
