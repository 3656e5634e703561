#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kuramoto {

// Phases live on the zero-mean subspace: sum x_j = 0. The factory grounds an
// arbitrary phase vector by subtracting its mean.
struct PhaseState {
    std::vector<double> x;

    static PhaseState grounded(std::vector<double> phases);

    std::size_t size() const { return x.size(); }
    std::span<const double> view() const { return x; }
};

// Below this magnitude the centroid direction is numerical noise and psi is
// reported as absent.
inline constexpr double kZeroOrderThreshold = 1e-9;

// Polar form of the phase centroid (1/N) sum exp(i x_j): magnitude R in
// [0, 1] and direction psi in [0, 2*pi) when R is resolvable.
struct OrderParameter {
    double R = 0.0;
    std::optional<double> psi;
};

OrderParameter order_parameter(std::span<const double> x);

// Mean-field coupling term f_i(x) = (1/N) sum_j sin(x_j - x_i), evaluated in
// O(N) via the centroid components. Identical (up to rounding) to the double
// sum, and satisfies sum_i f_i = 0.
std::vector<double> coupling_field(std::span<const double> x);

// Dense row-major matrix, just big enough for the reduced Jacobians here.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// Jacobian of the first N-1 field components after eliminating x_N through
// the zero-mean constraint; (N-1)x(N-1), includes the 1/N factor of f.
Matrix reduced_jacobian(std::span<const double> x);

// Which zero-field condition a state satisfies: order parameter at zero,
// every pairwise phase difference a multiple of pi, both, or neither.
enum class HomogeneousClass { NotFixed, ZeroOrder, PhaseAligned, Both };

HomogeneousClass classify_homogeneous_fixed_point(std::span<const double> x, double tol = 1e-9);

// Slack sqrt(N R^2 (1 - R^2)) - ||f(x)||_2 of the field-norm bound;
// nonnegative up to rounding for every state.
double field_norm_bound_gap(std::span<const double> x);

} // namespace kuramoto
