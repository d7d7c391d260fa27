#pragma once

#include <random>

#include "nr/complex_matrix.hpp"

namespace nr {

using Rng = std::mt19937_64;

inline Complex complex_in_unit_disk(Rng& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        const double re = uni(rng), im = uni(rng);
        if (re * re + im * im <= 1.0) return {re, im};
    }
}

inline ComplexMatrix random_strict_upper(int dim, Rng& rng, bool real_only = false) {
    ComplexMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const Complex z = complex_in_unit_disk(rng);
            a(i, j) = real_only ? Complex(z.real(), 0.0) : z;
        }
    return a;
}

inline ComplexMatrix random_complex_gaussian(int dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    return a;
}

inline ComplexMatrix random_hermitian(int dim, Rng& rng) {
    const ComplexMatrix g = random_complex_gaussian(dim, rng);
    const ComplexMatrix adj = g.adjoint();
    return Complex(0.5, 0.0) * (g + adj);
}

// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian with the phase
// convention that the R diagonal is positive.
inline ComplexMatrix random_unitary(int dim, Rng& rng) {
    ComplexMatrix g = random_complex_gaussian(dim, rng);
    ComplexMatrix q(dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<Complex> v(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = g(i, col);
        for (int prev = 0; prev < col; ++prev) {
            Complex proj = 0.0;
            for (int i = 0; i < dim; ++i)
                proj += std::conj(q(i, prev)) * v[static_cast<std::size_t>(i)];
            for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, prev);
        }
        double nrm = 0.0;
        for (const Complex& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (int i = 0; i < dim; ++i) q(i, col) = v[static_cast<std::size_t>(i)] / nrm;
    }
    return q;
}

} // namespace nr
