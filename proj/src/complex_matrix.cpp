#include "nr/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nr/errors.hpp"

namespace nr {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw DomainError("matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (dim < 1) throw DomainError("matrix dimension must be >= 1");
    if (a_.size() != static_cast<std::size_t>(dim) * dim)
        throw DomainError("entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int dim) { return ComplexMatrix(dim); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const Complex& z : a_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.dim_);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.dim_);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim_;
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix r(a.dim_);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = s * a.a_[k];
    return r;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        m_(i, i) = Complex(m(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

namespace {

double offdiag_norm(const ComplexMatrix& m) {
    const int n = m.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianEigen eig_hermitian(const HermitianMatrix& H) {
    const int n = H.dim();
    ComplexMatrix m = H.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = m.frobenius_norm();
    const double target = 1e-14 * scale;
    const int max_sweeps = 100;

    HermitianEigen out;
    if (n == 1) {
        out.values = {m(0, 0).real()};
        out.vectors = v;
        return out;
    }

    int sweep = 0;
    double off = offdiag_norm(m);
    const double rotate_floor = scale > 0.0 ? target / (4.0 * n * n) : 0.0;
    for (; sweep < max_sweeps && off > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex beta = m(p, q);
                const double r = std::abs(beta);
                if (r <= rotate_floor) continue;

                // Phase out beta, then a real Givens rotation on the 2x2 block.
                const Complex phase = beta / r; // e^{i phi}
                const double alpha = m(p, p).real();
                const double gamma = m(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                const Complex u00(c, 0.0);
                const Complex u01(s, 0.0);
                const Complex u10 = -s * std::conj(phase);
                const Complex u11 = c * std::conj(phase);

                // Columns p,q of M and V (right-multiply by U).
                for (int i = 0; i < n; ++i) {
                    const Complex mp = m(i, p), mq = m(i, q);
                    m(i, p) = mp * u00 + mq * u10;
                    m(i, q) = mp * u01 + mq * u11;
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = vp * u00 + vq * u10;
                    v(i, q) = vp * u01 + vq * u11;
                }
                // Rows p,q of M (left-multiply by U*).
                for (int j = 0; j < n; ++j) {
                    const Complex mp = m(p, j), mq = m(q, j);
                    m(p, j) = std::conj(u00) * mp + std::conj(u10) * mq;
                    m(q, j) = std::conj(u01) * mp + std::conj(u11) * mq;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = Complex(m(p, p).real(), 0.0);
                m(q, q) = Complex(m(q, q).real(), 0.0);
            }
        }
        off = offdiag_norm(m);
    }
    if (off > target)
        throw ConvergenceError("Jacobi eigensolver did not converge within 100 sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&m](int a, int b) { return m(a, a).real() < m(b, b).real(); });

    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = m(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[static_cast<std::size_t>(k)]);
    }
    out.sweeps = sweep;
    out.offdiag = off;
    return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& H) { return eig_hermitian(HermitianMatrix(H)); }

std::pair<HermitianMatrix, HermitianMatrix> hermitian_parts(const ComplexMatrix& A) {
    const int n = A.dim();
    const ComplexMatrix adj = A.adjoint();
    ComplexMatrix h(n), k(n);
    const Complex half(0.5, 0.0);
    const Complex half_over_i(0.0, -0.5); // 1/(2i)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            h(i, j) = half * (A(i, j) + adj(i, j));
            k(i, j) = half_over_i * (A(i, j) - adj(i, j));
        }
    return {HermitianMatrix(h), HermitianMatrix(k)};
}

TraceWords trace_words(const ComplexMatrix& A) {
    const ComplexMatrix adj = A.adjoint();
    const ComplexMatrix a2 = A * A;
    const ComplexMatrix a3 = a2 * A;
    const ComplexMatrix adj2 = adj * adj;

    TraceWords w;
    w.beta0 = ((adj * A) * (adj * A)).trace().real();
    w.beta11 = (A * adj).trace().real();
    w.beta22 = (a2 * adj2).trace().real();
    w.beta21 = (a2 * adj).trace();
    w.beta31 = (a3 * adj).trace();
    return w;
}

bool is_nilpotent(const ComplexMatrix& A, double tol) {
    if (tol <= 0.0) throw DomainError("nilpotency tolerance must be positive");
    const int n = A.dim();
    ComplexMatrix p = A;
    for (int k = 1; k < n; ++k) p = p * A;
    const double scale = std::max(1.0, std::pow(A.frobenius_norm(), n));
    return p.frobenius_norm() <= tol * scale;
}

double operator_norm(const ComplexMatrix& A) {
    const auto eig = eig_hermitian(A.adjoint() * A);
    const double top = eig.values.back();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

Complex determinant(ComplexMatrix m) {
    const int n = m.dim();
    Complex det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m(col, col));
        for (int i = col + 1; i < n; ++i) {
            const double v = std::abs(m(i, col));
            if (v > best) { best = v; pivot = i; }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = col; j < n; ++j) std::swap(m(col, j), m(pivot, j));
            det = -det;
        }
        det *= m(col, col);
        for (int i = col + 1; i < n; ++i) {
            const Complex f = m(i, col) / m(col, col);
            if (f == Complex{}) continue;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

} // namespace nr
