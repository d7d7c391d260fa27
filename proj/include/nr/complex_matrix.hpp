#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace nr {

using Complex = std::complex<double>;

// Dense square complex matrix, immutable value semantics: every operation
// returns a fresh matrix. Sizes stay tiny (typically 4), so no attempt at
// anything beyond straightforward O(n^3) kernels.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs_entry() const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

// Hermitian matrix; symmetrized entrywise on construction so that
// entry(i,j) == conj(entry(j,i)) holds exactly.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& m);
    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    ComplexMatrix m_;
};

struct HermitianEigen {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // orthonormal columns, vectors(:,k) <-> values[k]
    int sweeps = 0;
    double offdiag = 0.0;
};

// Cyclic complex Jacobi. Off-diagonal Frobenius norm is driven below
// 1e-14 * ||H||_F; hard cap of 100 sweeps (throws ConvergenceError beyond it,
// which does not occur for the dimensions this library targets).
HermitianEigen eig_hermitian(const HermitianMatrix& H);
HermitianEigen eig_hermitian(const ComplexMatrix& H);

// H = (A + A*)/2, K = (A - A*)/(2i); A = H + iK.
std::pair<HermitianMatrix, HermitianMatrix> hermitian_parts(const ComplexMatrix& A);

struct TraceWords {
    double beta0 = 0.0;   // tr(A* A A* A)
    double beta11 = 0.0;  // tr(A A*)
    double beta22 = 0.0;  // tr(A^2 (A*)^2)
    Complex beta21{0, 0}; // tr(A^2 A*)
    Complex beta31{0, 0}; // tr(A^3 A*)
};

TraceWords trace_words(const ComplexMatrix& A);

// True iff ||A^n||_F <= tol * max(1, ||A||_F^n), n = dim(A).
bool is_nilpotent(const ComplexMatrix& A, double tol = 1e-10);

// Spectral norm, computed exactly as sqrt(lambda_max(A* A)).
double operator_norm(const ComplexMatrix& A);

// Determinant via LU with partial pivoting.
Complex determinant(ComplexMatrix m);

} // namespace nr
