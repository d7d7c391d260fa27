#include "nr/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nr/angles.hpp"
#include "nr/errors.hpp"

namespace nr {

namespace {

struct NewtonResult {
    double u = 0.0, v = 0.0;
    double residual = 0.0; // ||(p_u, p_v)||
    bool converged = false;
    bool jacobian_degenerate = false;
};

double grad_uv_norm(const TernaryQuartic& p, double u, double v) {
    const auto g = p.gradient(u, v, 1.0);
    return std::hypot(g[0], g[1]);
}

NewtonResult damped_newton(const TernaryQuartic& p, double u, double v, double tol, int max_steps) {
    NewtonResult r;
    double res = grad_uv_norm(p, u, v);
    const double jac_scale = std::max(1.0, p.max_abs_coeff());
    for (int step = 0; step < max_steps; ++step) {
        if (res <= tol) break;
        const auto g = p.gradient(u, v, 1.0);
        const auto h = p.hessian_uv(u, v, 1.0);
        const double det = h.a11 * h.a22 - h.a12 * h.a12;
        if (std::abs(det) <= 1e-12 * jac_scale * jac_scale) {
            r.jacobian_degenerate = true;
            break;
        }
        double du = (-g[0] * h.a22 + g[1] * h.a12) / det;
        double dv = (g[0] * h.a12 - g[1] * h.a11) / det;
        double lambda = 1.0;
        double nu = u + du, nv = v + dv;
        double nres = grad_uv_norm(p, nu, nv);
        while (nres > res && lambda > 1e-6) {
            lambda *= 0.5;
            nu = u + lambda * du;
            nv = v + lambda * dv;
            nres = grad_uv_norm(p, nu, nv);
        }
        if (nres >= res && res <= 1e-1) break; // stagnated near a solution; keep best
        u = nu;
        v = nv;
        res = nres;
    }
    r.u = u;
    r.v = v;
    r.residual = res;
    r.converged = res <= tol;
    return r;
}

} // namespace

std::vector<Singularity> find_real_singularities(const TernaryQuartic& p, double radius,
                                                 int grid_n, double tol) {
    if (radius <= 0.0) throw DomainError("singularity search radius must be positive");
    if (grid_n < 8) throw DomainError("singularity search grid must be at least 8x8");
    if (tol <= 0.0) throw DomainError("singularity tolerance must be positive");

    std::vector<Singularity> found;
    const double dedup = 1e-6;

    for (const double scale : {1.0, 1.0 / 8.0, 1.0 / 64.0}) {
        const double r = radius * scale;
        for (int a = 0; a < grid_n; ++a) {
            for (int b = 0; b < grid_n; ++b) {
                const double su = -r + 2.0 * r * a / (grid_n - 1);
                const double sv = -r + 2.0 * r * b / (grid_n - 1);
                const NewtonResult nr_ = damped_newton(p, su, sv, tol, 50);
                if (!nr_.converged) continue;
                const auto g = p.gradient(nr_.u, nr_.v, 1.0);
                const double full = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
                if (full > tol) continue; // critical point off the curve

                bool merged = false;
                for (auto& s : found) {
                    if (std::hypot(s.u0 - nr_.u, s.v0 - nr_.v) <= dedup) {
                        if (full < s.grad_residual) {
                            s.u0 = nr_.u;
                            s.v0 = nr_.v;
                            s.grad_residual = full;
                            s.hessian_degenerate = nr_.jacobian_degenerate;
                        }
                        merged = true;
                        break;
                    }
                }
                if (!merged) {
                    Singularity s;
                    s.u0 = nr_.u;
                    s.v0 = nr_.v;
                    s.grad_residual = full;
                    s.hessian_degenerate = nr_.jacobian_degenerate;
                    found.push_back(s);
                }
            }
        }
    }

    for (auto& s : found) {
        const double rr = std::hypot(s.u0, s.v0);
        s.distance_to_origin_of_line = rr > 0.0 ? 1.0 / rr : std::numeric_limits<double>::infinity();
        s.line_angle = wrap_angle(std::atan2(s.v0, s.u0));
    }
    std::sort(found.begin(), found.end(), [](const Singularity& a, const Singularity& b) {
        if (a.line_angle != b.line_angle) return a.line_angle < b.line_angle;
        return std::hypot(a.u0, a.v0) < std::hypot(b.u0, b.v0);
    });
    return found;
}

bool check_coefficient_consistency(const NilpotentCoefficients& c, double u, double v, double tol) {
    if (u == 0.0 && v == 0.0) throw DomainError("consistency check needs (u0,v0) != (0,0)");
    const double u2 = u * u, u3 = u2 * u, v2 = v * v, v3 = v2 * v;
    const double r1 = (4.0 * u3 + 2.0 * u * v2) * c.c1 + (3.0 * u2 * v + v3) * c.c2 +
                      (3.0 * u2 + v2) * c.c3 + 2.0 * u * v2 * c.c4 + 2.0 * u * c.c5 +
                      2.0 * u * v * c.c6;
    const double r2 = 2.0 * u2 * v * c.c1 + (u3 + 3.0 * u * v2) * c.c2 + 2.0 * u * v * c.c3 +
                      (2.0 * u2 * v + 4.0 * v3) * c.c4 + 2.0 * v * c.c5 + (u2 + 3.0 * v2) * c.c6;
    const double r3 = (u3 + u * v2) * c.c3 + (2.0 * u2 + 2.0 * v2) * c.c5 + (u2 * v + v3) * c.c6 + 4.0;
    const double scale = std::max({1.0, std::abs(c.c1), std::abs(c.c2), std::abs(c.c3),
                                   std::abs(c.c4), std::abs(c.c5), std::abs(c.c6)}) *
                         std::max(1.0, u2 + v2) * std::max(1.0, std::hypot(u, v));
    return std::abs(r1) <= tol * scale && std::abs(r2) <= tol * scale && std::abs(r3) <= tol * scale;
}

} // namespace nr
