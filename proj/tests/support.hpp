#pragma once

// Shared oracles and helpers for the unit and acceptance suites. Everything
// here is deliberately independent of the library's own computation paths:
// the field oracle is the literal double sum, the Jacobian oracle is finite
// differences, and the closed-form coupling values come straight from the
// defining equations.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "kuramoto/order_field.hpp"
#include "kuramoto/random.hpp"

namespace testsupport {

// The definition of the field, O(N^2), no centroid shortcut.
inline std::vector<double> field_double_sum(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::sin(x[j] - x[i]);
        f[i] = s / static_cast<double>(n);
    }
    return f;
}

inline std::vector<double> random_phases(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> x(n);
    for (double& v : x) v = kuramoto::uniform_angle(rng);
    return x;
}

inline double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double u : v) s += u * u;
    return std::sqrt(s);
}

// Central finite differences of the reduced field: coordinates are the first
// n-1 phases, with x_n moving as minus their sum.
inline kuramoto::Matrix fd_reduced_jacobian(std::span<const double> x, double h = 1e-6) {
    const std::size_t n = x.size();
    const std::size_t m = n - 1;
    kuramoto::Matrix J(m, m);
    std::vector<double> zp(x.begin(), x.end()), zm(x.begin(), x.end());
    for (std::size_t j = 0; j < m; ++j) {
        zp[j] += h;
        zp[n - 1] -= h;
        zm[j] -= h;
        zm[n - 1] += h;
        const std::vector<double> fp = field_double_sum(zp);
        const std::vector<double> fm = field_double_sum(zm);
        for (std::size_t i = 0; i < m; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
        zp[j] = x[j];
        zp[n - 1] = x[n - 1];
        zm[j] = x[j];
        zm[n - 1] = x[n - 1];
    }
    return J;
}

// Partial-pivot elimination; plenty for the (n-1)-square Jacobians under test.
inline double determinant(kuramoto::Matrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant needs a square matrix");
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        }
        if (a(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double factor = a(r, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(r, k) -= factor * a(c, k);
        }
    }
    return det;
}

// Closed-form critical coupling for Omega = (-c, 0, c): the balance equation
// collapses to 4s^2 + s - 2 = 0 in the extreme oscillators' offset cosine s,
// then kc = u / P(u) with u = c / sqrt(1 - s^2) and P = (1 + 2s) / 3.
inline double kc3_oracle(double c) {
    const double s = (-1.0 + std::sqrt(33.0)) / 8.0;
    const double u = c / std::sqrt(1.0 - s * s);
    const double P = (1.0 + 2.0 * s) / 3.0;
    return u / P;
}

// For Omega = (1,-1), k = 4: beta = P(k beta) squares to 16 b^4 - 16 b^2 + 1 = 0.
inline double existence_root_hi_n2_k4() { return std::sqrt((2.0 + std::sqrt(3.0)) / 4.0); }
inline double existence_root_lo_n2_k4() { return std::sqrt((2.0 - std::sqrt(3.0)) / 4.0); }

// Even-split family attaining the field-norm bound: half the phases at
// arccos(c), half at -arccos(c).
inline std::vector<double> equality_family(std::size_t n, double c) {
    const double a = std::acos(c);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i < n / 2 ? a : -a;
    return x;
}

} // namespace testsupport
