#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kuramoto/frequencies.hpp"
#include "kuramoto/order_field.hpp"

namespace kuramoto {

// One sign per oscillator, the branch choice a_j = sign cos(psi - x_j) that
// indexes candidate locked states.
class SignVector {
public:
    explicit SignVector(std::vector<int> entries);

    static SignVector all_plus(std::size_t n);

    // Bit j of `mask` set means a_j = -1, so masks 0 .. 2^n - 1 enumerate all
    // sign vectors starting from all-plus.
    static SignVector from_mask(std::size_t n, std::uint64_t mask);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    double mean() const;
    std::string pattern() const; // e.g. "++-+"

private:
    std::vector<int> entries_;
};

// A constructed phase-locked state must reproduce -Omega/k this closely
// (scaled by max(1, k)) to count as verified.
inline constexpr double kResidualTolScale = 1e-8;

// Maximum allowed defect |beta - (1/N) sum a_j sqrt(1 - (Omega_j/(k beta))^2)|
// for a (a, beta) pair fed to the constructor.
inline constexpr double kConsistencyTol = 1e-10;

struct CouplingReport {
    std::size_t n = 0;
    double lower_inf = 0.0;   // ||Omega||_inf
    double lower_sigma = 0.0; // 2 * rms(Omega)
    double upper = 0.0;       // +inf when all |Omega_j| coincide
    double kc = 0.0;
    double u_star = 0.0;
    int iterations = 0;
    double tolerance = 0.0;   // absolute bracket width achieved
    bool degenerate = false;  // Omega = 0, kc = 0
};

// {||Omega||_inf, 2 * sigma}: both are lower bounds on the critical coupling.
std::pair<double, double> lower_bounds(const FrequencySpec& spec);

// ||Omega||_inf / P(||Omega||_inf) with P the mean offset cosine below.
// Returns +inf when every |Omega_j| equals the norm (the mean vanishes).
// Requires Omega != 0.
double upper_bound(const FrequencySpec& spec);

// P(u) = (1/N) sum_j sqrt(1 - (Omega_j / u)^2), the mean cosine of the
// locked phase offsets. Defined for u >= ||Omega||_inf.
double mean_offset_cosine(std::span<const double> Omega, double u);

// (1/N) sum_j 1 / sqrt(1 - (Omega_j / u)^2); +inf when some |Omega_j| = u.
double mean_inverse_offset_cosine(std::span<const double> Omega, double u);

// Exact critical coupling via bisection for the unique u* in
// (||Omega||_inf, sqrt(2) ||Omega||_inf] where 2 P(u) crosses the mean
// inverse offset cosine; kc = u* / P(u*). The bracket geometry makes kc
// insensitive to u* error (the crossing is a stationary point of u / P(u)),
// so the default width 1e-10 * ||Omega||_inf leaves kc sharp to ~1e-9
// relative and beyond.
CouplingReport compute_kc(const FrequencySpec& spec);
CouplingReport compute_kc(const FrequencySpec& spec, double eps);

// Largest beta in (0, 1] with beta = P(k beta), i.e. the strongest locked
// state at coupling k, or nullopt when none exists. Requires k > 0.
std::optional<double> existence_at(const FrequencySpec& spec, double k);

// All roots beta of beta = (1/N) sum_j a_j sqrt(1 - (Omega_j/(k beta))^2) in
// [||Omega||_inf / k, 1], ascending. Sign-change scan on a uniform grid of
// 1024 intervals, each crossing refined by bisection.
std::vector<double> existence_with_signs(const FrequencySpec& spec, double k,
                                         const SignVector& a);

struct FixedPointCertificate {
    SignVector a;
    double beta = 0.0;        // order parameter magnitude of the state
    PhaseState x_star;
    double residual_inf = 0.0; // max_i |k f_i(x*) + Omega_i|
    double order_R = 0.0;      // re-measured from x_star
};

// Builds the phase-locked state for a consistent (a, beta) pair and verifies
// it: throws certification_error if the consistency defect exceeds
// kConsistencyTol or the residual exceeds kResidualTolScale * max(1, k).
FixedPointCertificate construct_fixed_point(const FrequencySpec& spec, double k,
                                            const SignVector& a, double beta);

struct Enumeration {
    // Ordered by sign-vector mask, then beta descending within a mask.
    std::vector<FixedPointCertificate> certificates;
    // Certificate indices grouped by equal order magnitude (within 1e-8);
    // groups ordered by descending R.
    std::vector<std::vector<std::size_t>> classes;
};

// Sweeps all 2^N sign vectors. Refuses n > max_n (capacity_error): the sweep
// is exponential by nature.
Enumeration enumerate_fixed_points(const FrequencySpec& spec, double k,
                                   std::size_t max_n = 16);

// {r_lo, r_hi}: any phase-locked state at coupling k >= 2 sigma has order
// magnitude R with R^2 in [1/2 - d/2, 1/2 + d/2], d = sqrt(1 - 4 (sigma/k)^2).
std::pair<double, double> order_band(const FrequencySpec& spec, double k);

} // namespace kuramoto
