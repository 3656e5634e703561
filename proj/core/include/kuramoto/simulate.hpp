#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kuramoto/frequencies.hpp"
#include "kuramoto/order_field.hpp"

namespace kuramoto {

// Fixed integration step: min(0.01, 0.1 / max(1, k)). Stiffness grows with k,
// so the step shrinks with it.
double default_dt(double k);

struct SimConfig {
    double k = 1.0;
    double t_end = 10.0;
    double dt = 0.0;                          // <= 0 selects default_dt(k)
    std::size_t record_every = 1;             // sample cadence in steps
    std::uint64_t seed = 0;                   // for the random start
    std::optional<std::vector<double>> init;  // explicit start, grounded before use
};

// A run is declared converged when the final recorded residual
// max_i |Omega_i + k f_i| drops below this scale times max(1, k).
inline constexpr double kConvergenceTolScale = 1e-6;

struct SimTrace {
    std::vector<double> times;
    std::vector<double> L;        // squared order magnitude R^2
    std::vector<double> D;        // dominating curve; filled by homogeneous_run only
    std::vector<double> residual; // max_i |Omega_i + k f_i|
    PhaseState final_state;
    bool converged = false;
};

// Classical fourth-order Runge-Kutta on the zero-mean subspace (the state is
// re-grounded every step). The duration is rounded to a whole number of
// steps. Records step 0, every record_every-th step, and the final step.
SimTrace integrate(const FrequencySpec& spec, const SimConfig& config);

// Omega = 0 run over n oscillators; additionally fills trace.D with the
// closed-form dominating curve seeded from the first recorded L (when that
// is positive). Requires config.k > 0.
SimTrace homogeneous_run(std::size_t n, const SimConfig& config);

// D(t) = 1 / (1 - exp(-2 k (t - t0)) (L0 - 1) / L0), the upper envelope of
// L(t) for the homogeneous system with L(t0) = L0. Requires L0 in (0, 1],
// k > 0, t >= t0.
double dominating_function(double L0, double k, double t0, double t);

// First recorded time with L >= threshold; threshold must lie in (0, 1).
std::optional<double> convergence_time(const SimTrace& trace, double threshold);

// Columns t,L,D,residual at full precision; D cells are empty when the trace
// carries no dominating curve.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

} // namespace kuramoto
