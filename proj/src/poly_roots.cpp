#include "nr/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nr {

namespace {

using Cx = std::complex<double>;

Cx eval_monic4(double b3, double b2, double b1, double b0, Cx x) {
    return (((x + b3) * x + b2) * x + b1) * x + b0;
}

Cx eval_monic4_deriv(double b3, double b2, double b1, Cx x) {
    return ((4.0 * x + 3.0 * b3) * x + 2.0 * b2) * x + b1;
}

// Largest real root of x^3 + a x^2 + b x + c.
double cubic_largest_real_root(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = c - a * b / 3.0 + 2.0 * a * a * a / 27.0;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        return u + v + shift;
    }
    // Three real roots: trigonometric form.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k)
        best = std::max(best, m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
    return best;
}

void newton_polish(double b3, double b2, double b1, double b0, Cx& x) {
    for (int it = 0; it < 12; ++it) {
        const Cx f = eval_monic4(b3, b2, b1, b0, x);
        const Cx df = eval_monic4_deriv(b3, b2, b1, x);
        if (std::abs(df) == 0.0) break;
        const Cx step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
}

} // namespace

std::array<Cx, 4> solve_quartic_monic(double b3, double b2, double b1, double b0) {
    // Depress: x = s - b3/4, s^4 + p s^2 + q s + r.
    const double p = b2 - 3.0 * b3 * b3 / 8.0;
    const double q = b1 - b3 * b2 / 2.0 + b3 * b3 * b3 / 8.0;
    const double r = b0 - b3 * b1 / 4.0 + b3 * b3 * b2 / 16.0 - 3.0 * b3 * b3 * b3 * b3 / 256.0;
    const double shift = -b3 / 4.0;
    const double scale = 1.0 + std::abs(p) + std::abs(q) + std::abs(r);

    std::array<Cx, 4> roots;
    if (std::abs(q) <= 1e-14 * scale) {
        // Biquadratic.
        const Cx disc = Cx(p * p / 4.0 - r, 0.0);
        const Cx sq = std::sqrt(disc);
        const Cx z1 = -p / 2.0 + sq;
        const Cx z2 = -p / 2.0 - sq;
        roots[0] = std::sqrt(z1);
        roots[1] = -roots[0];
        roots[2] = std::sqrt(z2);
        roots[3] = -roots[2];
    } else {
        // Ferrari: find w with 8w^3 + 8p w^2 + (2p^2 - 8r) w - q^2 = 0; the cubic
        // is negative at w=0, so it has a real root with w > 0.
        double w = cubic_largest_real_root(p, p * p / 4.0 - r, -q * q / 8.0);
        w = std::max(w, 1e-300);
        const double g = std::sqrt(2.0 * w);
        const double hminus = w + p / 2.0 - q / (2.0 * g);
        const double hplus = w + p / 2.0 + q / (2.0 * g);
        // (s^2 + g s + hminus)(s^2 - g s + hplus)
        const Cx d1 = std::sqrt(Cx(g * g - 4.0 * hminus, 0.0));
        const Cx d2 = std::sqrt(Cx(g * g - 4.0 * hplus, 0.0));
        roots[0] = (-g + d1) / 2.0;
        roots[1] = (-g - d1) / 2.0;
        roots[2] = (g + d2) / 2.0;
        roots[3] = (g - d2) / 2.0;
    }
    for (auto& s : roots) s += shift;

    for (auto& x : roots) newton_polish(b3, b2, b1, b0, x);

    // Near-double pairs: re-polish on the derivative. For a genuine double
    // root the critical point of the quartic is the root itself, which turns
    // sqrt(eps) accuracy into full precision.
    const double root_scale = 1.0 + std::max({std::abs(roots[0]), std::abs(roots[1]),
                                              std::abs(roots[2]), std::abs(roots[3])});
    const double coeff_scale = 1.0 + std::max({std::abs(b3), std::abs(b2), std::abs(b1), std::abs(b0)});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs(roots[i] - roots[j]) > 2e-7 * root_scale) continue;
            Cx c = 0.5 * (roots[i] + roots[j]);
            if (std::abs(c.imag()) > 1e-5 * root_scale) continue;
            double x = c.real();
            for (int it = 0; it < 40; ++it) {
                const double df = ((4.0 * x + 3.0 * b3) * x + 2.0 * b2) * x + b1;
                const double d2f = (12.0 * x + 6.0 * b3) * x + 2.0 * b2;
                if (d2f == 0.0) break;
                const double step = df / d2f;
                x -= step;
                if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
            }
            if (std::abs(eval_monic4(b3, b2, b1, b0, Cx(x, 0.0))) <= 1e-10 * coeff_scale * root_scale) {
                roots[i] = Cx(x, 0.0);
                roots[j] = Cx(x, 0.0);
            }
        }
    return roots;
}

std::vector<double> real_quartic_roots(double b3, double b2, double b1, double b0) {
    const auto roots = solve_quartic_monic(b3, b2, b1, b0);
    std::vector<double> out;
    for (const auto& z : roots)
        if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> bisect_real_roots(const std::vector<double>& coeffs, double lo, double hi,
                                      int grid, double tol) {
    auto eval = [&coeffs](double x) {
        double s = 0.0;
        for (std::size_t n = coeffs.size(); n-- > 0;) s = s * x + coeffs[n];
        return s;
    };
    std::vector<double> out;
    double prev_x = lo;
    double prev_f = eval(lo);
    for (int k = 1; k <= grid; ++k) {
        const double x = lo + (hi - lo) * k / grid;
        const double f = eval(x);
        if (prev_f == 0.0) out.push_back(prev_x);
        if (prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                const double fm = eval(m);
                if (fa * fm <= 0.0) b = m;
                else { a = m; fa = fm; }
            }
            out.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = f;
    }
    if (prev_f == 0.0) out.push_back(prev_x);
    return out;
}

} // namespace nr
