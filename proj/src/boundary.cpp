#include "nr/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "nr/angles.hpp"
#include "nr/errors.hpp"
#include "nr/parallel.hpp"

namespace nr {

std::string to_string(FlatSource s) {
    switch (s) {
        case FlatSource::singularity_test: return "singularity_test";
        case FlatSource::eigensweep: return "eigensweep";
        case FlatSource::prediction: return "prediction";
        case FlatSource::geometric: return "geometric";
    }
    return "unknown";
}

void finalize_flat(FlatPortion& f) {
    f.length = distance(f.endpoint1, f.endpoint2);
    const double r = std::hypot(f.line_u0, f.line_v0);
    f.distance = r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
    f.angle_of_line = wrap_line_angle(std::atan2(f.line_u0, -f.line_v0));
}

namespace {

Complex quad_form(const ComplexMatrix& A, const std::vector<Complex>& v) {
    const int n = A.dim();
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (int j = 0; j < n; ++j) row += A(i, j) * v[static_cast<std::size_t>(j)];
        s += std::conj(v[static_cast<std::size_t>(i)]) * row;
    }
    return s;
}

struct SupportData {
    double h = 0.0;
    double gap = 0.0;
    std::vector<Vec2> pts; // one point, or the segment extremes ordered CCW
};

// Support line data in direction phi: h = lambda_max(Re(e^{-i phi} A)). When
// the top eigenvalue is degenerate within degen_tol, the boundary piece on the
// support line is a segment; its extremes come from the eigendecomposition of
// the compression of Im(e^{-i phi} A) onto the top eigenspace.
SupportData support_data(const ComplexMatrix& A, double phi, double degen_tol) {
    const int n = A.dim();
    const Complex rot = std::exp(Complex(0.0, -phi));
    const ComplexMatrix B = rot * A;
    const auto [re, im] = hermitian_parts(B);
    const auto eig = eig_hermitian(re);

    SupportData out;
    out.h = eig.values.back();
    out.gap = n >= 2 ? eig.values.back() - eig.values[static_cast<std::size_t>(n - 2)]
                     : std::numeric_limits<double>::infinity();

    auto column = [&eig, n](int k) {
        std::vector<Complex> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = eig.vectors(i, k);
        return v;
    };

    if (out.gap > degen_tol) {
        const auto xi = column(n - 1);
        const Complex z = quad_form(A, xi);
        out.pts.push_back({z.real(), z.imag()});
        return out;
    }

    int k = 1;
    while (k < n && eig.values.back() - eig.values[static_cast<std::size_t>(n - 1 - k)] <= degen_tol) ++k;

    // k x k compression of Im(B) onto the top eigenspace.
    ComplexMatrix g(k);
    std::vector<std::vector<Complex>> basis;
    basis.reserve(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) basis.push_back(column(n - k + a));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Complex s = 0.0;
            for (int i = 0; i < n; ++i) {
                Complex row = 0.0;
                for (int j = 0; j < n; ++j) row += im.matrix()(i, j) * basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
                s += std::conj(basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]) * row;
            }
            g(a, b) = s;
        }
    const auto geig = eig_hermitian(g);

    auto combine = [&](int col) {
        std::vector<Complex> eta(static_cast<std::size_t>(n), Complex{});
        for (int a = 0; a < k; ++a)
            for (int i = 0; i < n; ++i)
                eta[static_cast<std::size_t>(i)] += geig.vectors(a, col) * basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
        return eta;
    };
    const Complex z_lo = quad_form(A, combine(0));
    const Complex z_hi = quad_form(A, combine(k - 1));
    out.pts.push_back({z_lo.real(), z_lo.imag()});
    out.pts.push_back({z_hi.real(), z_hi.imag()});
    return out;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

SupportInfo support_info(const ComplexMatrix& A, double phi, double degen_tol) {
    const SupportData d = support_data(A, phi, degen_tol);
    return {d.h, d.gap, d.pts};
}

BoundaryResult sample_boundary(const ComplexMatrix& A, int n, double phi0, bool refine_degenerate) {
    if (n < 64) throw DomainError("boundary sampling needs n >= 64");
    const double nrm = operator_norm(A);
    const double degen_tol = 1e-9 * std::max(nrm, 1e-300);

    std::vector<SupportData> data(static_cast<std::size_t>(n));
    parallel_for(n, [&](int k) {
        const double phi = phi0 + 2.0 * kPi * k / n;
        data[static_cast<std::size_t>(k)] = support_data(A, phi, degen_tol);
    });

    struct Event {
        double phi;
        std::vector<Vec2> pts;
        double h, gap;
    };
    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(n) + 8);
    for (int k = 0; k < n; ++k)
        events.push_back({phi0 + 2.0 * kPi * k / n, data[static_cast<std::size_t>(k)].pts,
                          data[static_cast<std::size_t>(k)].h, data[static_cast<std::size_t>(k)].gap});

    if (refine_degenerate && nrm > 0.0) {
        auto gap_at = [&](double phi) { return support_data(A, phi, degen_tol).gap; };
        for (int k = 0; k < n; ++k) {
            const double g0 = data[static_cast<std::size_t>((k + n - 1) % n)].gap;
            const double g1 = data[static_cast<std::size_t>(k)].gap;
            const double g2 = data[static_cast<std::size_t>((k + 1) % n)].gap;
            if (!(g1 <= g0 && g1 < g2)) continue;
            const double lo = phi0 + 2.0 * kPi * (k - 1) / n;
            const double hi = phi0 + 2.0 * kPi * (k + 1) / n;
            const double phi_star = golden_min(gap_at, lo, hi, 1e-12);
            SupportData d = support_data(A, phi_star, degen_tol);
            if (d.gap > degen_tol || d.pts.size() < 2) continue;
            const Vec2 mid = 0.5 * (d.pts[0] + d.pts[1]);
            events.push_back({phi_star, {d.pts[0], mid, d.pts[1]}, d.h, d.gap});
        }
        std::stable_sort(events.begin(), events.end(),
                         [](const Event& a, const Event& b) { return a.phi < b.phi; });
    }

    BoundaryResult out;
    for (const Event& e : events) {
        for (const Vec2& p : e.pts) {
            out.polyline.pts.push_back(p);
            out.samples.push_back({wrap_angle(e.phi), e.h, p, e.gap});
        }
    }
    return out;
}

namespace {

double point_line_deviation(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len = norm(d);
    if (len == 0.0) return distance(p, a);
    return std::abs(cross(d, p - a)) / len;
}

} // namespace

std::vector<FlatPortion> extract_flats_geometric(const Polyline& poly,
                                                 const std::vector<BoundarySample>& samples,
                                                 double angle_tol, double collinear_tol,
                                                 double scale) {
    (void)samples;
    std::vector<FlatPortion> out;
    const std::size_t raw = poly.pts.size();
    if (raw < 3) return out;

    const double s = std::max(1.0, scale);
    const double tiny = 1e-12 * s;

    // Collapse repeated contact points (corner duplicates).
    std::vector<Vec2> v;
    v.reserve(raw);
    for (const Vec2& p : poly.pts) {
        if (v.empty() || distance(v.back(), p) > tiny) v.push_back(p);
    }
    while (v.size() > 1 && distance(v.front(), v.back()) <= tiny) v.pop_back();
    const int m = static_cast<int>(v.size());
    if (m < 3) return out;

    auto turn_at = [&](int i) {
        const Vec2 e0 = v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>((i + m - 1) % m)];
        const Vec2 e1 = v[static_cast<std::size_t>((i + 1) % m)] - v[static_cast<std::size_t>(i)];
        return std::abs(std::atan2(cross(e0, e1), dot(e0, e1)));
    };

    // Start chains at a corner so wrap-around runs are not split.
    int start = -1;
    for (int i = 0; i < m; ++i)
        if (turn_at(i) > angle_tol) { start = i; break; }
    if (start < 0) return out; // no corner anywhere: no isolated flat to report

    const double dev_tol = collinear_tol * s;
    const double min_len = std::max(10.0 * dev_tol, 1e-7);

    Vec2 centroid{0.0, 0.0};
    for (const Vec2& p : v) centroid = centroid + (1.0 / m) * p;

    int i = start;
    int visited = 0;
    while (visited < m) {
        // Grow a chain of edges from vertex i: successive turns stay within
        // angle_tol and every interior vertex stays within dev_tol of the
        // chain's end-to-end line.
        int chain_len = 1; // edges; chain covers vertices i .. i+chain_len
        while (chain_len < m) {
            const int end = (i + chain_len) % m;
            if (turn_at(end) > angle_tol) break;
            const Vec2 a = v[static_cast<std::size_t>(i)];
            const Vec2 b = v[static_cast<std::size_t>((i + chain_len + 1) % m)];
            bool ok = true;
            for (int t = 1; t <= chain_len && ok; ++t)
                ok = point_line_deviation(v[static_cast<std::size_t>((i + t) % m)], a, b) <= dev_tol;
            if (!ok) break;
            ++chain_len;
        }
        if (chain_len >= 2) { // at least 3 collinear vertices
            const Vec2 a = v[static_cast<std::size_t>(i)];
            const Vec2 b = v[static_cast<std::size_t>((i + chain_len) % m)];
            const double ab = distance(a, b);
            if (ab >= min_len) {
                Vec2 dir = (1.0 / ab) * (b - a);
                double lo = 0.0, hi = 0.0;
                for (int t = 0; t <= chain_len; ++t) {
                    const double proj = dot(v[static_cast<std::size_t>((i + t) % m)] - a, dir);
                    lo = std::min(lo, proj);
                    hi = std::max(hi, proj);
                }
                FlatPortion f;
                f.endpoint1 = a + lo * dir;
                f.endpoint2 = a + hi * dir;
                Vec2 normal{dir.y, -dir.x};
                if (dot(normal, a - centroid) < 0.0) normal = -1.0 * normal;
                const double h = dot(normal, a);
                if (std::abs(h) > 1e-12) {
                    f.line_u0 = -normal.x / h;
                    f.line_v0 = -normal.y / h;
                }
                f.source = FlatSource::geometric;
                finalize_flat(f);
                out.push_back(f);
            }
        }
        visited += chain_len;
        i = (i + chain_len) % m;
    }
    return out;
}

double hausdorff_vertices(const Polyline& a, const Polyline& b) {
    if (a.pts.empty() || b.pts.empty()) throw DomainError("hausdorff needs nonempty polylines");
    auto one_way = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(a.pts, b.pts), one_way(b.pts, a.pts));
}

double check_symmetry(const Polyline& poly, double line_angle) {
    const std::size_t n = poly.pts.size();
    if (n == 0) throw DomainError("check_symmetry needs a nonempty polyline");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 r = reflect(poly.pts[i], line_angle);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) best = std::min(best, distance(r, poly.pts[j]));
        worst = std::max(worst, best);
    }
    return worst; // reflection is an involution: one direction suffices
}

double convexity_defect(const Polyline& poly) {
    const int m = static_cast<int>(poly.pts.size());
    if (m < 3) return 0.0;
    double defect = 0.0;
    // Perpendicular drop of each vertex below the previous (non-tiny) edge.
    std::vector<Vec2> v;
    for (const Vec2& p : poly.pts)
        if (v.empty() || distance(v.back(), p) > 1e-14) v.push_back(p);
    while (v.size() > 1 && distance(v.front(), v.back()) <= 1e-14) v.pop_back();
    const int k = static_cast<int>(v.size());
    if (k < 3) return 0.0;
    for (int i = 0; i < k; ++i) {
        const Vec2 e0 = v[static_cast<std::size_t>((i + 1) % k)] - v[static_cast<std::size_t>(i)];
        const Vec2 e1 = v[static_cast<std::size_t>((i + 2) % k)] - v[static_cast<std::size_t>((i + 1) % k)];
        const double c = cross(e0, e1);
        const double len = norm(e0);
        if (c < 0.0 && len > 0.0) defect = std::max(defect, -c / len);
    }
    return defect;
}

std::string boundary_csv(const std::vector<BoundarySample>& samples) {
    std::ostringstream os;
    os.precision(17);
    os << "phi,support,x,y,gap\n";
    for (const auto& s : samples)
        os << s.phi << "," << s.support_value << "," << s.point.x << "," << s.point.y << ","
           << s.eigen_gap << "\n";
    return os.str();
}

std::string boundary_svg(const Polyline& poly, const SvgOptions& opt) {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    bool first = true;
    auto eat = [&](Vec2 p) {
        if (first) { x0 = x1 = p.x; y0 = y1 = p.y; first = false; return; }
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const Vec2& p : poly.pts) eat(p);
    for (const auto& f : opt.flats) { eat(f.endpoint1); eat(f.endpoint2); }
    eat({0.0, 0.0});
    double w = x1 - x0, h = y1 - y0;
    if (w <= 0.0) w = 1.0;
    if (h <= 0.0) h = 1.0;
    const double mx = 0.1 * w, my = 0.1 * h;
    x0 -= mx; x1 += mx; y0 -= my; y1 += my;
    w = x1 - x0;
    h = y1 - y0;

    const double sc = opt.width / w;
    auto X = [&](double x) { return (x - x0) * sc; };
    auto Y = [&](double y) { return (y1 - y) * sc; }; // math y up, svg y down

    std::ostringstream os;
    os.precision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << opt.width << " "
       << h * sc << "\">\n";
    if (opt.symmetry_angle >= 0.0) {
        const double c = std::cos(opt.symmetry_angle), s = std::sin(opt.symmetry_angle);
        const double L = 2.0 * std::max(w, h);
        os << "  <line x1=\"" << X(-L * c) << "\" y1=\"" << Y(-L * s) << "\" x2=\"" << X(L * c)
           << "\" y2=\"" << Y(L * s)
           << "\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    }
    if (!poly.pts.empty()) {
        os << "  <path d=\"";
        for (std::size_t i = 0; i < poly.pts.size(); ++i)
            os << (i == 0 ? "M" : "L") << X(poly.pts[i].x) << " " << Y(poly.pts[i].y) << " ";
        os << "Z\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& f : opt.flats) {
        os << "  <line x1=\"" << X(f.endpoint1.x) << "\" y1=\"" << Y(f.endpoint1.y) << "\" x2=\""
           << X(f.endpoint2.x) << "\" y2=\"" << Y(f.endpoint2.y)
           << "\" stroke=\"#c0392b\" stroke-width=\"3\"/>\n";
        for (const Vec2& e : {f.endpoint1, f.endpoint2})
            os << "  <circle cx=\"" << X(e.x) << "\" cy=\"" << Y(e.y)
               << "\" r=\"4\" fill=\"#8e44ad\"/>\n";
    }
    os << "  <circle cx=\"" << X(0.0) << "\" cy=\"" << Y(0.0) << "\" r=\"2\" fill=\"#000\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace nr
