#pragma once

#include <array>
#include <string>

#include "nr/complex_matrix.hpp"

namespace nr {

// Homogeneous real quartic in (u, v, w). Dense storage over all 15 monomials
// u^i v^j w^k, i+j+k = 4, in graded-lex order (descending i, then descending j):
//   (4,0,0) (3,1,0) (3,0,1) (2,2,0) (2,1,1) (2,0,2) (1,3,0) (1,2,1)
//   (1,1,2) (1,0,3) (0,4,0) (0,3,1) (0,2,2) (0,1,3) (0,0,4)
// The order is fixed; serialization emits coefficients in exactly this order.
class TernaryQuartic {
public:
    static constexpr int kNumCoeffs = 15;
    static const std::array<std::array<int, 3>, kNumCoeffs>& exponents();
    static int index_of(int i, int j); // k is implied by i+j+k = 4

    double coeff(int i, int j, int k) const;
    void set_coeff(int i, int j, int k, double value);

    const std::array<double, kNumCoeffs>& coeffs() const { return c_; }
    std::array<double, kNumCoeffs>& coeffs() { return c_; }

    double eval(double u, double v, double w) const;
    std::array<double, 3> gradient(double u, double v, double w) const; // (p_u, p_v, p_w)

    struct Hessian {
        double a11 = 0.0; // p_uu
        double a12 = 0.0; // p_uv
        double a22 = 0.0; // p_vv
    };
    Hessian hessian_uv(double u, double v, double w) const;

    // Coefficients of p(u0, v0, g) as a polynomial in g (index = power of g).
    std::array<double, 5> gamma_polynomial(double u0, double v0) const;

    double max_abs_coeff() const;

    std::string to_json_string() const;

private:
    std::array<double, kNumCoeffs> c_{};
};

// q(u,v,w) = p(c*u + s*v, -s*u + c*v, w) with c = cos(angle), s = sin(angle).
// For B = e^{i*angle} A this maps p_A onto p_B exactly.
TernaryQuartic rotate(const TernaryQuartic& p, double angle);

// NR generating polynomial det(uH + vK + wI) of a 4x4 matrix, recovered by
// evaluating the determinant on the fixed principal lattice
// {(a-2, b-2, 1) : a,b >= 0, a+b <= 4} and solving the 15x15 system once.
// A is normalized by its Frobenius norm first and the coefficients rescaled,
// so conditioning does not depend on ||A||.
TernaryQuartic nr_poly_general(const ComplexMatrix& A);

// Closed-form coefficients of the nilpotent 4x4 shape
//   p = c1 u^4 + c2 u^3 v + c3 u^3 w + (c1+c4) u^2 v^2 + c5 u^2 w^2 + c6 u^2 v w
//     + c2 u v^3 + c3 u v^2 w + c4 v^4 + c6 v^3 w + c5 v^2 w^2 + w^4.
struct NilpotentCoefficients {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0, c6 = 0.0;
    TernaryQuartic expand() const;
};

NilpotentCoefficients nr_poly_nilpotent(const ComplexMatrix& A, double nilpotency_tol = 1e-10);

} // namespace nr
