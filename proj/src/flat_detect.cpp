#include "nr/flat_detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "nr/angles.hpp"
#include "nr/errors.hpp"
#include "nr/parallel.hpp"
#include "nr/poly_roots.hpp"

namespace nr {

std::string to_string(FlatReason r) {
    switch (r) {
        case FlatReason::ok: return "ok";
        case FlatReason::gradient_residual_too_large: return "gradient_residual_too_large";
        case FlatReason::degenerate_hessian: return "degenerate_hessian";
        case FlatReason::repeated_tangent: return "repeated_tangent";
        case FlatReason::quadratic_form_zero: return "quadratic_form_zero";
        case FlatReason::endpoint_degenerate: return "endpoint_degenerate";
        case FlatReason::gamma_exceeds_one: return "gamma_exceeds_one";
    }
    return "unknown";
}

namespace {

// Core tangency test at (u0, v0); assumes a22 is usable. Returns the outcome
// with endpoints in the same coordinates as p.
FlatOutcome test_tangency(const TernaryQuartic& p, const Singularity& s) {
    FlatOutcome out;
    out.at = s;

    const double u0 = s.u0, v0 = s.v0;
    const auto h = p.hessian_uv(u0, v0, 1.0);
    const double disc = h.a12 * h.a12 - h.a11 * h.a22;
    const double disc_scale = std::max({h.a12 * h.a12, std::abs(h.a11 * h.a22), 1e-300});
    if (std::abs(disc) <= 1e-10 * disc_scale) out.borderline_discriminant = true;
    if (disc <= 1e-10 * disc_scale) {
        out.reason = FlatReason::repeated_tangent;
        return out;
    }

    const double q = h.a11 * u0 * u0 + 2.0 * h.a12 * u0 * v0 + h.a22 * v0 * v0;
    const double q_scale =
        (std::abs(h.a11) + 2.0 * std::abs(h.a12) + std::abs(h.a22)) * (u0 * u0 + v0 * v0) + 1e-300;
    if (std::abs(q) <= 1e-10 * q_scale) {
        out.reason = FlatReason::quadratic_form_zero;
        return out;
    }

    // Support-line condition: every real gamma with p(u0, v0, gamma) = 0 must
    // stay at or below 1 (parallel tangent lines all on one side).
    auto g = p.gamma_polynomial(u0, v0);
    const double g_scale = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2]),
                                     std::abs(g[3]), std::abs(g[4])});
    if (std::abs(g[4]) <= 1e-12 * g_scale)
        throw DomainError("gamma quartic is not monic; polynomial not w^4-normalized");
    const auto roots = solve_quartic_monic(g[3] / g[4], g[2] / g[4], g[1] / g[4], g[0] / g[4]);
    for (const auto& z : roots) {
        const bool is_real = std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()));
        if (is_real && z.real() > 1.0 + 1e-9) {
            out.reason = FlatReason::gamma_exceeds_one;
            return out;
        }
        if (!is_real && z.real() > 1.0 + 1e-9) out.complex_gamma_warning = true;
    }

    const double droot = std::sqrt(disc);
    FlatPortion f;
    f.line_u0 = u0;
    f.line_v0 = v0;
    Vec2 pts[2];
    for (int sign = 0; sign < 2; ++sign) {
        const double num = h.a12 + (sign == 0 ? -droot : droot);
        const double den = -h.a22 * v0 - num * u0;
        const double den_scale = std::abs(h.a22 * v0) + std::abs(num * u0) + 1e-300;
        if (std::abs(den) <= 1e-12 * den_scale) {
            out.reason = FlatReason::endpoint_degenerate;
            return out;
        }
        pts[sign] = {num / den, h.a22 / den};
    }
    f.endpoint1 = pts[0];
    f.endpoint2 = pts[1];
    f.source = FlatSource::singularity_test;
    finalize_flat(f);
    out.flat = f;
    out.reason = FlatReason::ok;
    return out;
}

} // namespace

FlatOutcome flat_from_singularity(const TernaryQuartic& p, const Singularity& s) {
    FlatOutcome out;
    out.at = s;
    if (s.grad_residual > 1e-8) {
        out.reason = FlatReason::gradient_residual_too_large;
        return out;
    }

    const auto h = p.hessian_uv(s.u0, s.v0, 1.0);
    const double h_scale = std::max({std::abs(h.a11), std::abs(h.a12), 1.0});
    if (std::abs(h.a22) > 1e-10 * h_scale) return test_tangency(p, s);

    // a22 ~ 0: the tangent factorization needs a nonzero v^2 coefficient.
    // Retest in coordinates rotated by a fixed angle and rotate back.
    const double psi = kPi / 7.0;
    const TernaryQuartic q = rotate(p, psi);
    Singularity sr = s;
    const Vec2 uv = nr::rotate(Vec2{s.u0, s.v0}, psi);
    sr.u0 = uv.x;
    sr.v0 = uv.y;
    const auto hr = q.hessian_uv(sr.u0, sr.v0, 1.0);
    const double hr_scale = std::max({std::abs(hr.a11), std::abs(hr.a12), 1.0});
    if (std::abs(hr.a22) <= 1e-10 * hr_scale) {
        out.reason = FlatReason::degenerate_hessian;
        return out;
    }
    FlatOutcome rotated = test_tangency(q, sr);
    rotated.at = s;
    if (rotated.flat) {
        FlatPortion f = *rotated.flat;
        f.endpoint1 = nr::rotate(f.endpoint1, -psi);
        f.endpoint2 = nr::rotate(f.endpoint2, -psi);
        const Vec2 line = nr::rotate(Vec2{f.line_u0, f.line_v0}, -psi);
        f.line_u0 = line.x;
        f.line_v0 = line.y;
        finalize_flat(f);
        rotated.flat = f;
    }
    return rotated;
}

std::vector<FlatPortion> flats_via_rotation_sweep(const ComplexMatrix& A, int n_phi,
                                                  double gap_tol) {
    if (n_phi < 360) throw DomainError("rotation sweep needs n_phi >= 360");
    const double nrm = operator_norm(A);
    if (nrm <= 0.0) return {};
    if (gap_tol < 0.0) gap_tol = 1e-7 * nrm;

    std::vector<double> gaps(static_cast<std::size_t>(n_phi));
    parallel_for(n_phi, [&](int k) {
        gaps[static_cast<std::size_t>(k)] = support_info(A, 2.0 * kPi * k / n_phi, 0.0).eigen_gap;
    });

    auto gap_at = [&A](double phi) { return support_info(A, phi, 0.0).eigen_gap; };

    struct Candidate {
        double phi;
        FlatPortion flat;
    };
    std::vector<Candidate> candidates;
    for (int k = 0; k < n_phi; ++k) {
        const double g0 = gaps[static_cast<std::size_t>((k + n_phi - 1) % n_phi)];
        const double g1 = gaps[static_cast<std::size_t>(k)];
        const double g2 = gaps[static_cast<std::size_t>((k + 1) % n_phi)];
        if (!(g1 <= g0 && g1 < g2)) continue;

        const double lo = 2.0 * kPi * (k - 1) / n_phi;
        const double hi = 2.0 * kPi * (k + 1) / n_phi;
        double phi_star = lo;
        {
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double a = lo, b = hi;
            double c = b - gr * (b - a), d = a + gr * (b - a);
            double fc = gap_at(c), fd = gap_at(d);
            while (b - a > 1e-12) {
                if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = gap_at(c); }
                else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = gap_at(d); }
            }
            phi_star = 0.5 * (a + b);
        }

        const SupportInfo info = support_info(A, phi_star, gap_tol);
        if (info.eigen_gap > gap_tol) continue;
        if (info.extreme_points.size() < 2) continue;
        const Vec2 e1 = info.extreme_points.front();
        const Vec2 e2 = info.extreme_points.back();
        if (distance(e1, e2) <= 1e-7) continue; // degenerate contact, not a segment

        FlatPortion f;
        f.endpoint1 = e1;
        f.endpoint2 = e2;
        const double h = info.support;
        if (std::abs(h) > 1e-12 * std::max(1.0, nrm)) {
            f.line_u0 = -std::cos(phi_star) / h;
            f.line_v0 = -std::sin(phi_star) / h;
        }
        f.source = FlatSource::eigensweep;
        finalize_flat(f);
        candidates.push_back({wrap_angle(phi_star), f});
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.phi < b.phi; });
    // Merge near-coincident support directions (same flat found twice).
    std::vector<FlatPortion> out;
    std::vector<double> phis;
    for (const auto& c : candidates) {
        if (!phis.empty() && std::abs(c.phi - phis.back()) <= 1e-6) continue;
        if (!phis.empty() && std::abs(c.phi - phis.front() - 2.0 * kPi) <= 1e-6) continue;
        phis.push_back(c.phi);
        out.push_back(c.flat);
    }
    return out;
}

namespace {

double endpoint_pair_distance(const FlatPortion& a, const FlatPortion& b) {
    const double direct = std::max(distance(a.endpoint1, b.endpoint1), distance(a.endpoint2, b.endpoint2));
    const double swapped = std::max(distance(a.endpoint1, b.endpoint2), distance(a.endpoint2, b.endpoint1));
    return std::min(direct, swapped);
}

} // namespace

FlatReport analyze(const ComplexMatrix& A, const AnalyzeOptions& opt) {
    if (A.dim() != 4) throw DomainError("analyze expects a 4x4 matrix");

    FlatReport rep;
    rep.norm = operator_norm(A);
    rep.nilpotent = is_nilpotent(A, 1e-10);

    // The tangency test assumes the origin lies in the numerical range. That
    // holds for nilpotent inputs; otherwise shift by a boundary centroid.
    ComplexMatrix work = A;
    if (!rep.nilpotent && rep.norm > 0.0) {
        const BoundaryResult br = sample_boundary(A, 64, 0.0, false);
        Vec2 c{0.0, 0.0};
        for (const Vec2& p : br.polyline.pts) c = c + (1.0 / br.polyline.pts.size()) * p;
        rep.translation = c;
        ComplexMatrix shift = ComplexMatrix::identity(4);
        work = A - Complex(c.x, c.y) * shift;
    }

    rep.polynomial = nr_poly_general(work);
    if (rep.nilpotent) rep.nilpotent_coefficients = nr_poly_nilpotent(work);

    const double nrm_clamped = std::max(std::max(operator_norm(work), 1e-6), 1e-6);
    const double radius = opt.radius > 0.0
                              ? opt.radius
                              : 8.0 * std::max(nrm_clamped, 1.0 / nrm_clamped);
    if (rep.norm > 0.0)
        rep.singularities = find_real_singularities(rep.polynomial, radius, opt.grid_n, 1e-10);

    const Vec2 c = rep.translation;
    for (const Singularity& s : rep.singularities) {
        FlatOutcome outc = flat_from_singularity(rep.polynomial, s);
        if (outc.flat) {
            FlatPortion f = *outc.flat;
            // Undo the centroid shift: points translate, the line in the
            // normalization u x + v y + 1 = 0 rescales by its value at -c.
            f.endpoint1 = f.endpoint1 + c;
            f.endpoint2 = f.endpoint2 + c;
            const double k = 1.0 - f.line_u0 * c.x - f.line_v0 * c.y;
            if (std::abs(k) > 1e-12) {
                f.line_u0 /= k;
                f.line_v0 /= k;
            }
            finalize_flat(f);
            outc.flat = f;
            rep.flats.push_back(f);
        }
        rep.singularity_outcomes.push_back(outc);
    }

    rep.sweep_flats = flats_via_rotation_sweep(A, opt.n_phi, opt.gap_tol);

    // Every singularity-derived flat must have a sweep counterpart.
    std::vector<bool> sweep_used(rep.sweep_flats.size(), false);
    for (const FlatPortion& f : rep.flats) {
        int best = -1;
        double best_line = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < rep.sweep_flats.size(); ++j) {
            const double dl = std::max(std::abs(f.line_u0 - rep.sweep_flats[j].line_u0),
                                       std::abs(f.line_v0 - rep.sweep_flats[j].line_v0));
            if (dl < best_line) { best_line = dl; best = static_cast<int>(j); }
        }
        std::ostringstream note;
        if (best < 0) {
            note << "singularity flat at line angle " << f.angle_of_line
                 << " has no sweep counterpart";
            rep.cross_check.discrepancies.push_back(note.str());
            continue;
        }
        const double de = endpoint_pair_distance(f, rep.sweep_flats[static_cast<std::size_t>(best)]);
        if (best_line <= 1e-5 && de <= 1e-4) {
            ++rep.cross_check.matched;
            sweep_used[static_cast<std::size_t>(best)] = true;
        } else {
            note << "singularity flat at line angle " << f.angle_of_line
                 << " mismatches sweep (line delta " << best_line << ", endpoint delta " << de
                 << ")";
            rep.cross_check.discrepancies.push_back(note.str());
        }
    }
    for (std::size_t j = 0; j < rep.sweep_flats.size(); ++j) {
        if (sweep_used[j]) continue;
        std::ostringstream note;
        note << "sweep flat at line angle " << rep.sweep_flats[j].angle_of_line
             << " not predicted by any singularity";
        rep.cross_check.discrepancies.push_back(note.str());
    }

    // Reflection symmetry: for a nilpotent matrix with two equidistant flats
    // the numerical range is symmetric about the bisector of the two
    // singularity directions.
    if (rep.nilpotent && rep.flats.size() == 2) {
        const double d1 = rep.flats[0].distance, d2 = rep.flats[1].distance;
        if (std::abs(d1 - d2) <= 1e-6 * std::max(1.0, rep.norm)) {
            const double b1 = std::atan2(rep.flats[0].line_v0, rep.flats[0].line_u0);
            const double b2 = std::atan2(rep.flats[1].line_v0, rep.flats[1].line_u0);
            SymmetryInfo sym;
            sym.angle = symmetry_line(b1, b2);
            const BoundaryResult br = sample_boundary(A, 1024, sym.angle, true);
            sym.hausdorff = check_symmetry(br.polyline, sym.angle);
            rep.symmetry = sym;
        }
    }
    return rep;
}

std::string FlatReport::to_json_string() const {
    using nlohmann::json;
    json j;
    j["nilpotent"] = nilpotent;
    j["norm"] = norm;
    j["translation"] = {translation.x, translation.y};
    j["polynomial"] = json::parse(polynomial.to_json_string());
    if (nilpotent_coefficients) {
        const auto& c = *nilpotent_coefficients;
        j["nilpotent_coefficients"] = {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3},
                                       {"c4", c.c4}, {"c5", c.c5}, {"c6", c.c6}};
    }
    j["singularities"] = json::array();
    for (const auto& s : singularities)
        j["singularities"].push_back({{"u0", s.u0},
                                      {"v0", s.v0},
                                      {"grad_residual", s.grad_residual},
                                      {"distance", s.distance_to_origin_of_line},
                                      {"angle", s.line_angle},
                                      {"hessian_degenerate", s.hessian_degenerate}});
    auto flat_json = [](const FlatPortion& f) {
        return json{{"source", to_string(f.source)},
                    {"line", {{"u0", f.line_u0}, {"v0", f.line_v0}}},
                    {"endpoints", {{f.endpoint1.x, f.endpoint1.y}, {f.endpoint2.x, f.endpoint2.y}}},
                    {"length", f.length},
                    {"distance", f.distance},
                    {"angle", f.angle_of_line}};
    };
    j["flats"] = json::array();
    for (const auto& f : flats) j["flats"].push_back(flat_json(f));
    for (const auto& f : sweep_flats) j["flats"].push_back(flat_json(f));
    j["singularity_outcomes"] = json::array();
    for (const auto& o : singularity_outcomes)
        j["singularity_outcomes"].push_back({{"u0", o.at.u0},
                                             {"v0", o.at.v0},
                                             {"reason", to_string(o.reason)},
                                             {"flat", o.flat.has_value()},
                                             {"borderline_discriminant", o.borderline_discriminant},
                                             {"complex_gamma_warning", o.complex_gamma_warning}});
    j["cross_check"] = {{"matched", cross_check.matched},
                        {"discrepancies", cross_check.discrepancies}};
    if (symmetry)
        j["symmetry"] = {{"angle", symmetry->angle}, {"hausdorff", symmetry->hausdorff}};
    return j.dump(2);
}

} // namespace nr
