#include "nr/family.hpp"

#include <cmath>
#include <sstream>

#include "nr/errors.hpp"

namespace nr {

namespace {

void check_d_theta(double d, double theta) {
    if (!(d > 0.0)) throw DomainError("family parameter d must be positive");
    if (!(theta > 0.0 && theta < kPi))
        throw DomainError("family parameter theta must lie in (0, pi)");
}

} // namespace

double ymax(double d, double theta, double x) {
    check_d_theta(d, theta);
    if (!(x > 0.0 && x < 2.0 * d)) throw DomainError("family parameter x must lie in (0, 2d)");
    const double s = std::sin(theta / 2.0);
    return std::sqrt((16.0 * d * d * d * d - 4.0 * d * d * x * x) / (4.0 * d * d - x * x * s * s));
}

void validate(const FamilyParams& p) {
    check_d_theta(p.d, p.theta);
    if (!(p.x > 0.0 && p.x < 2.0 * p.d)) {
        std::ostringstream os;
        os << "family parameter x = " << p.x << " must lie in (0, 2d) = (0, " << 2.0 * p.d << ")";
        throw DomainError(os.str());
    }
    const double ym = ymax(p.d, p.theta, p.x);
    if (!(p.y > 0.0 && p.y <= ym * (1.0 + 1e-12))) {
        std::ostringstream os;
        os << "family parameter y = " << p.y
           << " must satisfy 0 < y <= sqrt((16d^4-4d^2x^2)/(4d^2-x^2 S^2)) = " << ym;
        throw DomainError(os.str());
    }
}

std::pair<double, double> deltas(const FamilyParams& p) {
    validate(p);
    const double s = std::sin(p.theta / 2.0);
    double disc = p.x * p.x * p.y * p.y * s * s + 16.0 * std::pow(p.d, 4) -
                  4.0 * p.d * p.d * (p.x * p.x + p.y * p.y);
    if (disc < -1e-12) throw DomainError("family delta discriminant is negative");
    if (disc < 0.0) disc = 0.0; // y at its exact upper bound, up to round-off
    const double root = std::sqrt(disc);
    const double d1 = (p.x * p.y * s + root) / (2.0 * p.d);
    const double d2 = (p.x * p.y * s - root) / (2.0 * p.d);
    return p.swap_deltas ? std::make_pair(d2, d1) : std::make_pair(d1, d2);
}

ComplexMatrix build_family_matrix(const FamilyParams& p) {
    const auto [d1, d2] = deltas(p);
    const Complex phase = std::exp(Complex(0.0, p.t));
    ComplexMatrix a(4);
    a(0, 1) = phase * p.x;
    a(0, 2) = phase * d1;
    a(0, 3) = phase * p.y;
    a(1, 2) = phase * p.y;
    a(1, 3) = phase * d2;
    a(2, 3) = phase * p.x;
    return a;
}

ComplexMatrix build_Ak(double k) {
    if (!(k > 0.0 && k < std::sqrt(2.0)))
        throw DomainError("A_k parameter k must lie in (0, sqrt(2))");
    ComplexMatrix a(4);
    a(0, 1) = 1.0;
    a(0, 3) = 1.0;
    a(1, 2) = 1.0;
    a(1, 3) = k;
    a(2, 3) = 1.0;
    return a;
}

double theta_from_k(double k) {
    if (!(k > 0.0 && k < std::sqrt(2.0)))
        throw DomainError("A_k parameter k must lie in (0, sqrt(2))");
    return 2.0 * std::asin(k / std::sqrt(2.0));
}

double k_from_theta(double theta) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError("theta must lie in (0, pi)");
    return std::sqrt(2.0) * std::sin(theta / 2.0);
}

ComplexMatrix build_M(double d, double theta) {
    check_d_theta(d, theta);
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    const double pref = 2.0 * d / std::sqrt(1.0 + c);
    const double inner = s / std::sqrt(1.0 + c);
    ComplexMatrix a(4);
    a(0, 1) = pref;
    a(0, 2) = pref * inner;
    a(0, 3) = pref;
    a(1, 2) = pref;
    a(1, 3) = pref * inner;
    a(2, 3) = pref;
    return a;
}

double maximal_xy(double d, double theta) {
    check_d_theta(d, theta);
    return 2.0 * d / std::sqrt(1.0 + std::cos(theta / 2.0));
}

double flat_length(const FamilyParams& p) {
    validate(p);
    const double s = std::sin(p.theta / 2.0);
    const double c = std::cos(p.theta / 2.0);
    const double d4 = std::pow(p.d, 4);
    return 8.0 * p.d * p.d * p.d * p.x * p.y * c / (16.0 * d4 - p.x * p.x * p.y * p.y * s * s);
}

double trace_invariant_expected(const FamilyParams& p) {
    validate(p);
    const double s = std::sin(p.theta / 2.0);
    return p.x * p.x * p.y * p.y * (2.0 + p.x * p.x * s * s / (p.d * p.d));
}

FamilyPrediction predicted_flats(const FamilyParams& p) {
    validate(p);
    const double s = std::sin(p.theta / 2.0);
    const double c = std::cos(p.theta / 2.0);
    const double d = p.d;

    FamilyPrediction out;
    const auto [d1, d2] = deltas(p);
    out.delta1 = d1;
    out.delta2 = d2;
    out.length = flat_length(p);
    out.mutual_angle = p.theta;
    out.symmetry_angle = wrap_line_angle(p.t);
    out.line_intersection = rotate(Vec2{-d / s, 0.0}, p.t);

    // Second partials of the t = 0 polynomial at the singular point (S/d, C/d):
    //   a11 = 8 d^2 S^2 - x^2 y^2 / (2 d^2), a22 = 8 d^2 C^2, a12 = +-8 d^2 S C.
    const double xy2 = p.x * p.x * p.y * p.y;
    const double a11 = 8.0 * d * d * s * s - xy2 / (2.0 * d * d);
    const double a22 = 8.0 * d * d * c * c;
    for (int m = 0; m < 2; ++m) {
        const double sign = m == 0 ? 1.0 : -1.0; // v0 = +-C/d
        const double u0 = s / d;
        const double v0 = sign * c / d;
        const double a12 = sign * 8.0 * d * d * s * c;

        Singularity sing;
        const Vec2 uv = rotate(Vec2{u0, v0}, p.t);
        sing.u0 = uv.x;
        sing.v0 = uv.y;
        sing.grad_residual = 0.0;
        sing.distance_to_origin_of_line = d;
        sing.line_angle = wrap_angle(std::atan2(uv.y, uv.x));
        out.singularities[static_cast<std::size_t>(m)] = sing;

        const double droot = std::sqrt(a12 * a12 - a11 * a22);
        FlatPortion f;
        f.line_u0 = uv.x;
        f.line_v0 = uv.y;
        Vec2 pts[2];
        for (int sgn = 0; sgn < 2; ++sgn) {
            const double num = a12 + (sgn == 0 ? -droot : droot);
            const double den = -a22 * v0 - num * u0;
            pts[sgn] = rotate(Vec2{num / den, a22 / den}, p.t);
        }
        f.endpoint1 = pts[0];
        f.endpoint2 = pts[1];
        f.source = FlatSource::prediction;
        finalize_flat(f);
        out.flats[static_cast<std::size_t>(m)] = f;
    }
    return out;
}

} // namespace nr
