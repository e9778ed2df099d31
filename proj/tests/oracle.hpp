#pragma once

// Independent spectral oracle for the tests: characteristic polynomial via
// Faddeev-LeVerrier, roots via Durand-Kerner. Shares no code with the
// library eigensolver.

#include <algorithm>
#include <vector>

#include "socle/linalg.hpp"

namespace socle::testing {

/// Coefficients c of det(xI - A) = x^n + c[n-1] x^(n-1) + ... + c[0].
inline std::vector<Complex> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Complex> c(n);
    ComplexMatrix m = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const ComplexMatrix am = a * m;
        const Complex ck = -am.trace() / static_cast<double>(k);
        c[n - k] = ck;
        m = am;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

/// All roots of the monic polynomial with the given low-to-high
/// coefficients (degree = c.size()).
inline std::vector<Complex> durand_kerner(const std::vector<Complex>& c) {
    const std::size_t n = c.size();
    auto eval = [&](Complex x) {
        Complex p = 1;
        for (std::size_t k = n; k-- > 0;) p = p * x + c[k];
        return p;
    };
    std::vector<Complex> z(n);
    const Complex base(0.4, 0.9);
    Complex power = 1;
    for (std::size_t k = 0; k < n; ++k) {
        power *= base;
        z[k] = power;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex denom = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            const Complex delta = eval(z[k]) / denom;
            z[k] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    return z;
}

inline std::vector<Complex> oracle_eigenvalues(const ComplexMatrix& a) {
    return durand_kerner(char_poly(a));
}

/// Greedy nearest matching between two spectra; returns the largest pair
/// distance (infinite mismatch collapses to a large value).
inline double spectra_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0;
    for (const Complex& x : a) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(x - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + best);
    }
    return worst;
}

}  // namespace socle::testing
