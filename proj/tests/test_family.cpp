#include <doctest.h>

#include <cmath>
#include <string>

#include "nr/angles.hpp"
#include "nr/errors.hpp"
#include "nr/family.hpp"
#include "nr/flat_detect.hpp"
#include "nr/random_gen.hpp"
#include "test_helpers.hpp"

using namespace nr;

TEST_CASE("ymax closed form") {
    // A_k geometry: d = 1/sqrt2, x = 1, theta from k
    const double k = 1.0;
    const double d = 1.0 / std::sqrt(2.0);
    const double ym = ymax(d, theta_from_k(k), 1.0);
    CHECK(ym == doctest::Approx(2.0 / std::sqrt(4.0 - k * k)).epsilon(1e-12));
    CHECK(ym >= 1.0);

    // numerator vanishes as x approaches 2d
    CHECK(ymax(1.0, 1.0, 2.0 - 1e-9) <= 1e-3);

    // maximal-length choice solves x = y = ymax(x)
    const double theta = 2.0 * kPi / 3.0;
    const double x = maximal_xy(1.0, theta);
    CHECK(x * x == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(ymax(1.0, theta, x) == doctest::Approx(x).epsilon(1e-9));

    CHECK_THROWS_AS(ymax(1.0, 1.0, 2.5), DomainError);
    CHECK_THROWS_AS(ymax(-1.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(ymax(1.0, 3.5, 0.5), DomainError);
}

TEST_CASE("deltas: roots of the defining quadratic") {
    // maximal family: equal deltas 2 d S / (1 + C)
    const double d = 1.0, theta = 2.0 * kPi / 3.0;
    const double s = std::sin(theta / 2.0), c = std::cos(theta / 2.0);
    FamilyParams p;
    p.d = d;
    p.theta = theta;
    p.x = p.y = std::nextafter(maximal_xy(d, theta), 0.0);
    const auto [d1, d2] = deltas(p);
    CHECK(d1 == doctest::Approx(2.0 * d * s / (1.0 + c)).epsilon(1e-7));
    CHECK(d2 == doctest::Approx(d1).epsilon(1e-7));

    // the two-flat example parameters give {1, 0}
    FamilyParams g;
    g.d = std::sqrt(5.0) / 2.0;
    g.theta = 2.0 * std::asin(std::sqrt(5.0) / 4.0);
    g.x = 1.0;
    g.y = 2.0;
    const auto [g1, g2] = deltas(g);
    CHECK(g1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g2) <= 1e-12);
    g.swap_deltas = true;
    const auto [h1, h2] = deltas(g);
    CHECK(std::abs(h1) <= 1e-12);
    CHECK(h2 == doctest::Approx(1.0).epsilon(1e-12));

    // both roots satisfy d t^2 - x y S t + d (x^2 + y^2 - 4 d^2) = 0
    Rng rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        FamilyParams q;
        q.d = 0.4 + 2.0 * uni(rng);
        q.theta = (0.1 + 0.8 * uni(rng)) * kPi;
        q.x = (0.15 + 0.7 * uni(rng)) * 2.0 * q.d;
        q.y = (0.15 + 0.84 * uni(rng)) * ymax(q.d, q.theta, q.x);
        const double sq = std::sin(q.theta / 2.0);
        const auto [t1, t2] = deltas(q);
        for (double t : {t1, t2}) {
            const double resid =
                q.d * t * t - q.x * q.y * sq * t + q.d * (q.x * q.x + q.y * q.y - 4.0 * q.d * q.d);
            REQUIRE(std::abs(resid) <= 1e-10 * std::max(1.0, 4.0 * q.d * q.d * q.d));
        }
    }
}

TEST_CASE("family matrix construction") {
    // A_k equals the canonical form with swapped deltas
    const double k = 0.7;
    FamilyParams p;
    p.d = 1.0 / std::sqrt(2.0);
    p.theta = theta_from_k(k);
    p.x = p.y = 1.0;
    p.swap_deltas = true;
    CHECK(nrtest::matrix_distance(build_family_matrix(p), build_Ak(k)) <= 1e-12);

    // the maximal family matrix has the documented entries
    const double d = 1.0, theta = 2.0 * kPi / 3.0;
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const ComplexMatrix m = build_M(d, theta);
    const double pref = 2.0 * d / std::sqrt(1.0 + c);
    CHECK(std::abs(m(0, 1) - Complex(pref, 0.0)) <= 1e-14);
    CHECK(std::abs(m(0, 2) - Complex(pref * s / std::sqrt(1.0 + c), 0.0)) <= 1e-14);
    CHECK(std::abs(m(0, 3) - Complex(pref, 0.0)) <= 1e-14);
    CHECK(std::abs(m(1, 2) - Complex(pref, 0.0)) <= 1e-14);
    CHECK(std::abs(m(2, 3) - Complex(pref, 0.0)) <= 1e-14);

    FamilyParams mp;
    mp.d = d;
    mp.theta = theta;
    mp.x = mp.y = std::nextafter(maximal_xy(d, theta), 0.0);
    CHECK(nrtest::matrix_distance(build_family_matrix(mp), m) <= 1e-6);

    // t = pi negates the matrix
    FamilyParams q = p;
    q.t = kPi;
    const ComplexMatrix neg = Complex(-1.0, 0.0) * build_family_matrix(p);
    CHECK(nrtest::matrix_distance(build_family_matrix(q), neg) <= 1e-12);

    CHECK_THROWS_AS(build_Ak(1.5), DomainError);
    CHECK_THROWS_AS(build_Ak(0.0), DomainError);
}

TEST_CASE("validation messages name the violated bound") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 1.0;
    p.x = 2.5;
    p.y = 0.5;
    try {
        validate(p);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("(0, 2d)") != std::string::npos);
    }
    p.x = 1.0;
    p.y = 50.0;
    try {
        validate(p);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("sqrt((16d^4-4d^2x^2)/(4d^2-x^2 S^2))") !=
              std::string::npos);
    }
}

TEST_CASE("angle conversions for the one-parameter family") {
    const double k1 = std::sqrt(1.0 - std::sqrt(3.0) / 2.0);
    CHECK(theta_from_k(k1) == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    const double k2 = std::sqrt(std::sqrt(std::sqrt(5.0) / 8.0 + 5.0 / 8.0) + 1.0);
    CHECK(theta_from_k(k2) == doctest::Approx(9.0 * kPi / 10.0).epsilon(1e-12));
    for (double theta : {0.2, 1.0, 2.5})
        CHECK(theta_from_k(k_from_theta(theta)) == doctest::Approx(theta).epsilon(1e-12));
}

TEST_CASE("trace invariant closed form") {
    Rng rng(43);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        FamilyParams p;
        p.d = 0.4 + 2.0 * uni(rng);
        p.theta = (0.1 + 0.8 * uni(rng)) * kPi;
        p.x = (0.15 + 0.7 * uni(rng)) * 2.0 * p.d;
        p.y = (0.15 + 0.84 * uni(rng)) * ymax(p.d, p.theta, p.x);
        p.t = 2.0 * kPi * uni(rng);
        const double expected = trace_invariant_expected(p);
        const double actual = trace_words(build_family_matrix(p)).beta22;
        REQUIRE(std::abs(actual - expected) <= 1e-10 * std::max(1.0, expected));
    }
}

TEST_CASE("predicted flats: maximal case geometry") {
    FamilyParams p;
    p.d = 1.0;
    p.theta = 2.0 * kPi / 3.0;
    p.x = p.y = std::nextafter(maximal_xy(1.0, p.theta), 0.0);
    const FamilyPrediction pred = predicted_flats(p);
    CHECK(pred.length == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pred.mutual_angle == doctest::Approx(p.theta));
    CHECK(pred.line_intersection.x == doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(pred.line_intersection.y) <= 1e-12);
    CHECK(pred.symmetry_angle == 0.0);
    for (const auto& f : pred.flats) {
        CHECK(f.distance == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.length == doctest::Approx(1.0).epsilon(1e-9));
        for (const Vec2 e : {f.endpoint1, f.endpoint2})
            CHECK(std::abs(f.line_u0 * e.x + f.line_v0 * e.y + 1.0) <= 1e-9);
    }
}

TEST_CASE("predicted flats: example parameters give length 2 sqrt(55) / 19") {
    FamilyParams p;
    p.d = std::sqrt(5.0) / 2.0;
    p.theta = 2.0 * std::asin(std::sqrt(5.0) / 4.0);
    p.x = 1.0;
    p.y = 2.0;
    CHECK(predicted_flats(p).length ==
          doctest::Approx(2.0 * std::sqrt(55.0) / 19.0).epsilon(1e-12));
}

TEST_CASE("predictions rotate with t") {
    FamilyParams p;
    p.d = 1.1;
    p.theta = 0.47 * kPi;
    p.x = 1.2;
    p.y = 0.66 * ymax(p.d, p.theta, p.x);
    const FamilyPrediction base = predicted_flats(p);
    FamilyParams q = p;
    q.t = kPi / 2.0;
    const FamilyPrediction rot = predicted_flats(q);
    CHECK(rot.length == doctest::Approx(base.length).epsilon(1e-12));
    for (int i = 0; i < 2; ++i) {
        const auto& f0 = base.flats[static_cast<std::size_t>(i)];
        const auto& f1 = rot.flats[static_cast<std::size_t>(i)];
        CHECK(distance(rotate(f0.endpoint1, kPi / 2.0), f1.endpoint1) <= 1e-12);
        CHECK(distance(rotate(f0.endpoint2, kPi / 2.0), f1.endpoint2) <= 1e-12);
        CHECK(distance(rotate(Vec2{f0.line_u0, f0.line_v0}, kPi / 2.0),
                       Vec2{f1.line_u0, f1.line_v0}) <= 1e-12);
    }
    CHECK(rot.symmetry_angle == doctest::Approx(kPi / 2.0));
}

TEST_CASE("symmetry line of direction pairs") {
    CHECK(symmetry_line(0.4, 0.4) == doctest::Approx(0.4));
    // parallel flats: normals opposite, bisector parallel to both lines
    CHECK(symmetry_line(0.3, 0.3 + kPi) == doctest::Approx(wrap_line_angle(0.3 + kPi / 2.0)));
    // family singular directions bisect to the real axis
    const double theta = 0.7;
    const double b1 = std::atan2(std::cos(theta / 2.0), std::sin(theta / 2.0));
    const double b2 = std::atan2(-std::cos(theta / 2.0), std::sin(theta / 2.0));
    CHECK(symmetry_line(b1, b2) == doctest::Approx(0.0));
}

TEST_CASE("flat length grows in x and y") {
    for (double d : {0.5, 1.0, 2.0})
        for (double theta : {0.3 * kPi, 0.6 * kPi, 0.85 * kPi})
            for (double xf : {0.3, 0.6, 0.85})
                for (double yf : {0.35, 0.8}) {
                    FamilyParams p;
                    p.d = d;
                    p.theta = theta;
                    p.x = xf * 2.0 * d;
                    p.y = yf * ymax(d, theta, p.x);
                    const double h = 1e-6;
                    FamilyParams px = p;
                    px.x += h;
                    FamilyParams py = p;
                    py.y += h;
                    REQUIRE(flat_length(px) > flat_length(p));
                    REQUIRE(flat_length(py) > flat_length(p));
                }
}

TEST_CASE("round trip on a few family points") {
    for (const auto& [d, theta, xf, yf] :
         {std::tuple{1.0, 0.5 * kPi, 0.5, 0.7}, std::tuple{0.5, 0.25 * kPi, 0.7, 0.5},
          std::tuple{2.0, 0.75 * kPi, 0.4, 0.9}}) {
        FamilyParams p;
        p.d = d;
        p.theta = theta;
        p.x = xf * 2.0 * d;
        p.y = yf * ymax(d, theta, p.x);
        const FamilyPrediction pred = predicted_flats(p);
        const FlatReport rep = analyze(build_family_matrix(p));
        REQUIRE(rep.flats.size() == 2);
        CHECK(rep.cross_check.ok());
        for (const auto& f : rep.flats) {
            CHECK(f.distance == doctest::Approx(d).epsilon(1e-8));
            CHECK(f.length == doctest::Approx(pred.length).epsilon(1e-8));
        }
    }
}
