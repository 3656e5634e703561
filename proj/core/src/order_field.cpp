#include "kuramoto/order_field.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kuramoto {

namespace {

void require_phases(std::span<const double> x, std::size_t min_n = 1) {
    if (x.size() < min_n) {
        throw std::invalid_argument("phase vector too short: " + std::to_string(x.size()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite phase entry");
    }
}

struct Centroid {
    double C;
    double S;
};

Centroid centroid(std::span<const double> x) {
    double C = 0.0, S = 0.0;
    for (double v : x) {
        C += std::cos(v);
        S += std::sin(v);
    }
    const double n = static_cast<double>(x.size());
    return {C / n, S / n};
}

} // namespace

PhaseState PhaseState::grounded(std::vector<double> phases) {
    require_phases(phases);
    const double mean =
        std::accumulate(phases.begin(), phases.end(), 0.0) / static_cast<double>(phases.size());
    if (mean != 0.0) {
        for (double& v : phases) v -= mean;
    }
    return PhaseState{std::move(phases)};
}

OrderParameter order_parameter(std::span<const double> x) {
    require_phases(x);
    const Centroid c = centroid(x);
    OrderParameter op;
    op.R = std::min(std::hypot(c.C, c.S), 1.0);
    if (op.R >= kZeroOrderThreshold) {
        double psi = std::atan2(c.S, c.C);
        if (psi < 0.0) psi += 2.0 * M_PI;
        op.psi = psi;
    }
    return op;
}

std::vector<double> coupling_field(std::span<const double> x) {
    require_phases(x);
    // (1/N) sum_j sin(x_j - x_i) expanded through the centroid: equal to the
    // double sum term for term after the angle addition identity, so no
    // approximation is involved.
    const Centroid c = centroid(x);
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        f[i] = c.S * std::cos(x[i]) - c.C * std::sin(x[i]);
    }
    return f;
}

Matrix reduced_jacobian(std::span<const double> x) {
    require_phases(x, 2);
    const std::size_t n = x.size();
    const std::size_t m = n - 1;
    const double dn = static_cast<double>(n);
    Matrix J(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        // x_N is not a free coordinate: it moves as -sum of the others, which
        // is where the doubled last-column cosine comes from.
        const double last = std::cos(x[n - 1] - x[i]);
        double diag = -2.0 * last;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double cij = std::cos(x[j] - x[i]);
            diag -= cij;
            J(i, j) = (cij - last) / dn;
        }
        J(i, i) = diag / dn;
    }
    return J;
}

HomogeneousClass classify_homogeneous_fixed_point(std::span<const double> x, double tol) {
    require_phases(x, 2);
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const bool zero_order = order_parameter(x).R < kZeroOrderThreshold;
    bool aligned = true;
    for (std::size_t i = 0; i < x.size() && aligned; ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (std::abs(std::sin(x[i] - x[j])) > tol) {
                aligned = false;
                break;
            }
        }
    }
    if (zero_order && aligned) return HomogeneousClass::Both;
    if (zero_order) return HomogeneousClass::ZeroOrder;
    if (aligned) return HomogeneousClass::PhaseAligned;
    return HomogeneousClass::NotFixed;
}

double field_norm_bound_gap(std::span<const double> x) {
    const std::vector<double> f = coupling_field(x);
    double sq = 0.0;
    for (double v : f) sq += v * v;
    const double R = order_parameter(x).R;
    const double L = R * R;
    const double bound = std::sqrt(static_cast<double>(x.size()) * L * (1.0 - L));
    return bound - std::sqrt(sq);
}

} // namespace kuramoto
