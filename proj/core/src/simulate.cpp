#include "kuramoto/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "kuramoto/errors.hpp"
#include "kuramoto/random.hpp"
#include "spec_check.hpp"

namespace kuramoto {

double default_dt(double k) {
    return std::min(0.01, 0.1 / std::max(1.0, std::abs(k)));
}

namespace {

// dx/dt = Omega + k f(x), with f through the centroid as everywhere else.
void derivative(std::span<const double> Om, double k, const std::vector<double>& y,
                std::vector<double>& dy) {
    const std::size_t n = y.size();
    double C = 0.0, S = 0.0;
    for (double v : y) {
        C += std::cos(v);
        S += std::sin(v);
    }
    C /= static_cast<double>(n);
    S /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        dy[i] = Om[i] + k * (S * std::cos(y[i]) - C * std::sin(y[i]));
    }
}

void reground(std::vector<double>& x) {
    const double mean =
        std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    if (mean != 0.0) {
        for (double& v : x) v -= mean;
    }
}

} // namespace

SimTrace integrate(const FrequencySpec& spec, const SimConfig& config) {
    detail::require_spec(spec);
    const std::span<const double> Om = spec.view();
    const std::size_t n = spec.size();
    const double k = config.k;
    if (!std::isfinite(k)) throw std::invalid_argument("coupling k must be finite");
    if (!std::isfinite(config.t_end) || !(config.t_end > 0.0)) {
        throw std::invalid_argument("t_end must be positive");
    }
    const double dt = config.dt > 0.0 ? config.dt : default_dt(k);
    if (!std::isfinite(dt)) throw std::invalid_argument("dt must be finite");
    if (config.record_every < 1) throw std::invalid_argument("record_every must be >= 1");

    std::vector<double> x;
    if (config.init) {
        if (config.init->size() != n) {
            throw std::invalid_argument("init has " + std::to_string(config.init->size()) +
                                        " phases, expected " + std::to_string(n));
        }
        x = PhaseState::grounded(*config.init).x;
    } else {
        std::mt19937_64 rng(config.seed);
        x.resize(n);
        for (double& v : x) v = uniform_angle(rng);
        reground(x);
    }

    const long long steps = std::max(1LL, std::llround(config.t_end / dt));

    SimTrace trace;
    std::vector<double> dy(n), stage(n), k1(n), k2(n), k3(n), k4(n);
    const auto record = [&](double t) {
        derivative(Om, k, x, dy);
        double res = 0.0;
        for (double v : dy) res = std::max(res, std::abs(v));
        const double R = order_parameter(x).R;
        trace.times.push_back(t);
        trace.L.push_back(R * R);
        trace.residual.push_back(res);
    };
    record(0.0);

    for (long long s = 1; s <= steps; ++s) {
        derivative(Om, k, x, k1);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * dt * k1[i];
        derivative(Om, k, stage, k2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * dt * k2[i];
        derivative(Om, k, stage, k3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + dt * k3[i];
        derivative(Om, k, stage, k4);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        reground(x);
        for (double v : x) {
            if (!std::isfinite(v)) {
                throw divergence_error("state left the representable range at t = " +
                                           format_full(static_cast<double>(s) * dt),
                                       static_cast<double>(s - 1) * dt);
            }
        }
        if (s % static_cast<long long>(config.record_every) == 0 || s == steps) {
            record(static_cast<double>(s) * dt);
        }
    }

    trace.converged = trace.residual.back() < kConvergenceTolScale * std::max(1.0, k);
    trace.final_state = PhaseState{std::move(x)};
    return trace;
}

SimTrace homogeneous_run(std::size_t n, const SimConfig& config) {
    if (!(config.k > 0.0)) throw std::invalid_argument("homogeneous run needs k > 0");
    FrequencySpec spec{std::vector<double>(n, 0.0)};
    SimTrace trace = integrate(spec, config);
    const double L0 = trace.L.front();
    const double t0 = trace.times.front();
    if (L0 > 0.0) {
        trace.D.reserve(trace.times.size());
        for (double t : trace.times) {
            trace.D.push_back(dominating_function(L0, config.k, t0, t));
        }
    }
    return trace;
}

double dominating_function(double L0, double k, double t0, double t) {
    if (!(L0 > 0.0) || L0 > 1.0) throw std::invalid_argument("L0 must lie in (0, 1]");
    if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
    if (!(t >= t0)) throw std::invalid_argument("t must be >= t0");
    const double decay = std::exp(-2.0 * k * (t - t0));
    return 1.0 / (1.0 - decay * (L0 - 1.0) / L0);
}

std::optional<double> convergence_time(const SimTrace& trace, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw std::invalid_argument("threshold must lie in (0, 1)");
    }
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.L[i] >= threshold) return trace.times[i];
    }
    return std::nullopt;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "t,L,D,residual\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out << format_full(trace.times[i]) << ',' << format_full(trace.L[i]) << ',';
        if (i < trace.D.size()) out << format_full(trace.D[i]);
        out << ',' << format_full(trace.residual[i]) << '\n';
    }
}

} // namespace kuramoto
