#include "nr/ternary_quartic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nr/errors.hpp"

namespace nr {

const std::array<std::array<int, 3>, TernaryQuartic::kNumCoeffs>& TernaryQuartic::exponents() {
    static const std::array<std::array<int, 3>, kNumCoeffs> table = [] {
        std::array<std::array<int, 3>, kNumCoeffs> t{};
        int n = 0;
        for (int i = 4; i >= 0; --i)
            for (int j = 4 - i; j >= 0; --j) t[static_cast<std::size_t>(n++)] = {i, j, 4 - i - j};
        return t;
    }();
    return table;
}

int TernaryQuartic::index_of(int i, int j) {
    const auto& t = exponents();
    for (int n = 0; n < kNumCoeffs; ++n)
        if (t[static_cast<std::size_t>(n)][0] == i && t[static_cast<std::size_t>(n)][1] == j) return n;
    throw DomainError("monomial exponents out of range");
}

double TernaryQuartic::coeff(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i + j + k != 4) throw DomainError("monomial exponents out of range");
    return c_[static_cast<std::size_t>(index_of(i, j))];
}

void TernaryQuartic::set_coeff(int i, int j, int k, double value) {
    if (i < 0 || j < 0 || k < 0 || i + j + k != 4) throw DomainError("monomial exponents out of range");
    c_[static_cast<std::size_t>(index_of(i, j))] = value;
}

namespace {

inline void powers(double x, double out[5]) {
    out[0] = 1.0;
    for (int n = 1; n <= 4; ++n) out[n] = out[n - 1] * x;
}

} // namespace

double TernaryQuartic::eval(double u, double v, double w) const {
    double pu[5], pv[5], pw[5];
    powers(u, pu);
    powers(v, pv);
    powers(w, pw);
    const auto& e = exponents();
    double s = 0.0;
    for (int n = 0; n < kNumCoeffs; ++n) {
        const auto& m = e[static_cast<std::size_t>(n)];
        s += c_[static_cast<std::size_t>(n)] * pu[m[0]] * pv[m[1]] * pw[m[2]];
    }
    return s;
}

std::array<double, 3> TernaryQuartic::gradient(double u, double v, double w) const {
    double pu[5], pv[5], pw[5];
    powers(u, pu);
    powers(v, pv);
    powers(w, pw);
    const auto& e = exponents();
    double gu = 0.0, gv = 0.0, gw = 0.0;
    for (int n = 0; n < kNumCoeffs; ++n) {
        const auto& m = e[static_cast<std::size_t>(n)];
        const double c = c_[static_cast<std::size_t>(n)];
        if (c == 0.0) continue;
        if (m[0] > 0) gu += c * m[0] * pu[m[0] - 1] * pv[m[1]] * pw[m[2]];
        if (m[1] > 0) gv += c * m[1] * pu[m[0]] * pv[m[1] - 1] * pw[m[2]];
        if (m[2] > 0) gw += c * m[2] * pu[m[0]] * pv[m[1]] * pw[m[2] - 1];
    }
    return {gu, gv, gw};
}

TernaryQuartic::Hessian TernaryQuartic::hessian_uv(double u, double v, double w) const {
    double pu[5], pv[5], pw[5];
    powers(u, pu);
    powers(v, pv);
    powers(w, pw);
    const auto& e = exponents();
    Hessian h;
    for (int n = 0; n < kNumCoeffs; ++n) {
        const auto& m = e[static_cast<std::size_t>(n)];
        const double c = c_[static_cast<std::size_t>(n)];
        if (c == 0.0) continue;
        if (m[0] >= 2) h.a11 += c * m[0] * (m[0] - 1) * pu[m[0] - 2] * pv[m[1]] * pw[m[2]];
        if (m[0] >= 1 && m[1] >= 1) h.a12 += c * m[0] * m[1] * pu[m[0] - 1] * pv[m[1] - 1] * pw[m[2]];
        if (m[1] >= 2) h.a22 += c * m[1] * (m[1] - 1) * pu[m[0]] * pv[m[1] - 2] * pw[m[2]];
    }
    return h;
}

std::array<double, 5> TernaryQuartic::gamma_polynomial(double u0, double v0) const {
    double pu[5], pv[5];
    powers(u0, pu);
    powers(v0, pv);
    const auto& e = exponents();
    std::array<double, 5> g{};
    for (int n = 0; n < kNumCoeffs; ++n) {
        const auto& m = e[static_cast<std::size_t>(n)];
        g[static_cast<std::size_t>(m[2])] += c_[static_cast<std::size_t>(n)] * pu[m[0]] * pv[m[1]];
    }
    return g;
}

double TernaryQuartic::max_abs_coeff() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
}

std::string TernaryQuartic::to_json_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"degree\":4,\"coeffs\":[";
    const auto& e = exponents();
    for (int n = 0; n < kNumCoeffs; ++n) {
        const auto& m = e[static_cast<std::size_t>(n)];
        if (n) os << ",";
        os << "{\"i\":" << m[0] << ",\"j\":" << m[1] << ",\"k\":" << m[2]
           << ",\"c\":" << c_[static_cast<std::size_t>(n)] << "}";
    }
    os << "]}";
    return os.str();
}

TernaryQuartic rotate(const TernaryQuartic& p, double angle) {
    static const double binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    const double c = std::cos(angle), s = std::sin(angle);
    double cp[5], sp[5], ms[5];
    powers(c, cp);
    powers(s, sp);
    powers(-s, ms);

    TernaryQuartic q;
    const auto& e = TernaryQuartic::exponents();
    for (int n = 0; n < TernaryQuartic::kNumCoeffs; ++n) {
        const double alpha = p.coeffs()[static_cast<std::size_t>(n)];
        if (alpha == 0.0) continue;
        const int i = e[static_cast<std::size_t>(n)][0];
        const int j = e[static_cast<std::size_t>(n)][1];
        // (c u + s v)^i (-s u + c v)^j w^k
        for (int m = 0; m <= i; ++m)
            for (int l = 0; l <= j; ++l) {
                const double term = alpha * binom[i][m] * binom[j][l] * cp[m] * sp[i - m] * ms[l] * cp[j - l];
                const int iu = m + l;
                const int iv = i + j - m - l;
                q.coeffs()[static_cast<std::size_t>(TernaryQuartic::index_of(iu, iv))] += term;
            }
    }
    return q;
}

namespace {

// Dense LU solve with partial pivoting for the fixed 15x15 interpolation system.
void solve_dense(std::array<std::array<double, 15>, 15>& m, std::array<double, 15>& rhs) {
    const int n = 15;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
        for (int i = col + 1; i < n; ++i) {
            const double v = std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]);
            if (v > best) { best = v; pivot = i; }
        }
        if (best == 0.0) throw ConvergenceError("interpolation system singular");
        if (pivot != col) {
            std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(col)]);
            std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
        }
        for (int i = col + 1; i < n; ++i) {
            const double f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
                             m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            s -= m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * rhs[static_cast<std::size_t>(j)];
        rhs[static_cast<std::size_t>(i)] = s / m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
}

} // namespace

TernaryQuartic nr_poly_general(const ComplexMatrix& A) {
    if (A.dim() != 4) throw DomainError("nr_poly_general expects a 4x4 matrix");

    const double rho = A.frobenius_norm();
    TernaryQuartic p;
    if (rho < 1e-300) {
        p.set_coeff(0, 0, 4, 1.0); // det(wI) = w^4
        return p;
    }
    const ComplexMatrix scaled = Complex(1.0 / rho, 0.0) * A;
    const auto [h, k] = hermitian_parts(scaled);

    // Principal lattice nodes (a-2, b-2), a+b <= 4: unisolvent for total degree 4.
    std::array<std::array<double, 15>, 15> vand{};
    std::array<double, 15> dets{};
    double det_scale = 1.0;
    double worst_imag = 0.0;
    int row = 0;
    const auto& e = TernaryQuartic::exponents();
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) {
            const double u = a - 2.0, v = b - 2.0;
            ComplexMatrix pencil = ComplexMatrix::identity(4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    pencil(i, j) += u * h.matrix()(i, j) + v * k.matrix()(i, j);
            const Complex d = determinant(pencil);
            dets[static_cast<std::size_t>(row)] = d.real();
            det_scale = std::max(det_scale, std::abs(d.real()));
            worst_imag = std::max(worst_imag, std::abs(d.imag()));

            double pu[5], pv[5];
            powers(u, pu);
            powers(v, pv);
            for (int n = 0; n < 15; ++n)
                vand[static_cast<std::size_t>(row)][static_cast<std::size_t>(n)] =
                    pu[e[static_cast<std::size_t>(n)][0]] * pv[e[static_cast<std::size_t>(n)][1]];
            ++row;
        }

    // The pencil is Hermitian for real (u,v,w), so its determinant is real;
    // imaginary residue beyond round-off signals a numerical problem upstream.
    if (worst_imag > 1e-10 * det_scale)
        throw ConvergenceError("determinant of Hermitian pencil has non-negligible imaginary part");

    solve_dense(vand, dets);

    double scale_pow[9];
    scale_pow[0] = 1.0;
    for (int n = 1; n <= 8; ++n) scale_pow[n] = scale_pow[n - 1] * rho;
    for (int n = 0; n < 15; ++n) {
        const int deg_uv = e[static_cast<std::size_t>(n)][0] + e[static_cast<std::size_t>(n)][1];
        p.coeffs()[static_cast<std::size_t>(n)] = dets[static_cast<std::size_t>(n)] * scale_pow[deg_uv];
    }
    p.set_coeff(0, 0, 4, 1.0); // det at (0,0,1) is exactly det(I)
    return p;
}

TernaryQuartic NilpotentCoefficients::expand() const {
    TernaryQuartic p;
    p.set_coeff(4, 0, 0, c1);
    p.set_coeff(3, 1, 0, c2);
    p.set_coeff(3, 0, 1, c3);
    p.set_coeff(2, 2, 0, c1 + c4);
    p.set_coeff(2, 1, 1, c6);
    p.set_coeff(2, 0, 2, c5);
    p.set_coeff(1, 3, 0, c2);
    p.set_coeff(1, 2, 1, c3);
    p.set_coeff(0, 4, 0, c4);
    p.set_coeff(0, 3, 1, c6);
    p.set_coeff(0, 2, 2, c5);
    p.set_coeff(0, 0, 4, 1.0);
    return p;
}

NilpotentCoefficients nr_poly_nilpotent(const ComplexMatrix& A, double nilpotency_tol) {
    if (A.dim() != 4) throw DomainError("nr_poly_nilpotent expects a 4x4 matrix");
    if (!is_nilpotent(A, nilpotency_tol))
        throw NotNilpotentError("nr_poly_nilpotent requires a nilpotent matrix");

    const TraceWords w = trace_words(A);
    NilpotentCoefficients c;
    c.c1 = -(2.0 * w.beta31.real() + w.beta22 + 0.5 * w.beta0 - 0.5 * w.beta11 * w.beta11) / 16.0;
    c.c2 = -w.beta31.imag() / 4.0;
    c.c3 = w.beta21.real() / 4.0;
    c.c4 = (2.0 * w.beta31.real() - w.beta22 - 0.5 * w.beta0 + 0.5 * w.beta11 * w.beta11) / 16.0;
    c.c5 = -w.beta11 / 4.0;
    c.c6 = w.beta21.imag() / 4.0;
    return c;
}

} // namespace nr
