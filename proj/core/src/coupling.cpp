#include "kuramoto/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kuramoto/errors.hpp"
#include "spec_check.hpp"

namespace kuramoto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double offset_cosine(double omega, double u) {
    const double r = omega / u;
    return std::sqrt(std::max(0.0, 1.0 - r * r));
}

void require_coupling(double k) {
    if (!std::isfinite(k) || !(k > 0.0)) {
        throw std::invalid_argument("coupling k must be positive and finite");
    }
}

void require_matching(const FrequencySpec& spec, const SignVector& a) {
    if (a.size() != spec.size()) {
        throw std::invalid_argument("sign vector length " + std::to_string(a.size()) +
                                    " does not match n = " + std::to_string(spec.size()));
    }
}

// (1/N) sum_j a_j sqrt(1 - (Omega_j / u)^2)
double signed_mean_offset_cosine(std::span<const double> Omega, const SignVector& a, double u) {
    double s = 0.0;
    for (std::size_t j = 0; j < Omega.size(); ++j) {
        s += (a[j] > 0 ? 1.0 : -1.0) * offset_cosine(Omega[j], u);
    }
    return s / static_cast<double>(Omega.size());
}

} // namespace

SignVector::SignVector(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("empty sign vector");
    for (int e : entries_) {
        if (e != 1 && e != -1) {
            throw std::invalid_argument("sign vector entries must be +1 or -1");
        }
    }
}

SignVector SignVector::all_plus(std::size_t n) {
    return SignVector(std::vector<int>(n, 1));
}

SignVector SignVector::from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<int> e(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) e[j] = -1;
    }
    return SignVector(std::move(e));
}

double SignVector::mean() const {
    const double s = std::accumulate(entries_.begin(), entries_.end(), 0.0);
    return s / static_cast<double>(entries_.size());
}

std::string SignVector::pattern() const {
    std::string s(entries_.size(), '+');
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (entries_[j] < 0) s[j] = '-';
    }
    return s;
}

std::pair<double, double> lower_bounds(const FrequencySpec& spec) {
    detail::require_spec(spec);
    return {inf_norm(spec.view()), 2.0 * rms(spec.view())};
}

double mean_offset_cosine(std::span<const double> Omega, double u) {
    if (!(u > 0.0)) throw std::invalid_argument("u must be positive");
    double s = 0.0;
    for (double w : Omega) s += offset_cosine(w, u);
    return s / static_cast<double>(Omega.size());
}

double mean_inverse_offset_cosine(std::span<const double> Omega, double u) {
    if (!(u > 0.0)) throw std::invalid_argument("u must be positive");
    double s = 0.0;
    for (double w : Omega) s += 1.0 / offset_cosine(w, u); // 1/0 -> inf, intended
    return s / static_cast<double>(Omega.size());
}

double upper_bound(const FrequencySpec& spec) {
    detail::require_spec(spec);
    const double m = inf_norm(spec.view());
    if (m == 0.0) {
        throw std::invalid_argument("Omega is identically zero: kc = 0, no upper bound applies");
    }
    const double P = mean_offset_cosine(spec.view(), m);
    return P == 0.0 ? kInf : m / P;
}

namespace {

CouplingReport compute_kc_impl(const FrequencySpec& spec, double eps, bool eps_given) {
    detail::require_spec(spec);
    const std::span<const double> Om = spec.view();

    CouplingReport rep;
    rep.n = spec.size();
    rep.lower_inf = inf_norm(Om);
    rep.lower_sigma = 2.0 * rms(Om);

    if (rep.lower_inf == 0.0) {
        rep.degenerate = true;
        return rep; // kc = 0, nothing to bisect
    }
    if (eps_given && !(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!eps_given) eps = 1e-10 * rep.lower_inf;

    {
        const double P0 = mean_offset_cosine(Om, rep.lower_inf);
        rep.upper = P0 == 0.0 ? kInf : rep.lower_inf / P0;
    }

    // The two sides of the balance 2 P(u) = (1/N) sum 1/sqrt(1 - (Omega_j/u)^2)
    // are strictly increasing resp. decreasing on u > ||Omega||_inf, and the
    // crossing u* is where u / P(u) attains its minimum, i.e. the critical
    // coupling. Because it is a stationary point, the kc value is second-order
    // accurate in the bracket width.
    double a = rep.lower_inf;
    double b = std::sqrt(2.0) * rep.lower_inf;
    int iters = 0;
    while (b - a > eps) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break; // bracket exhausted at double precision
        ++iters;
        const double v = 2.0 * mean_offset_cosine(Om, mid);
        const double w = mean_inverse_offset_cosine(Om, mid);
        if (v > w) {
            b = mid;
        } else {
            a = mid;
        }
    }
    rep.u_star = 0.5 * (a + b);
    rep.kc = rep.u_star / mean_offset_cosine(Om, rep.u_star);
    rep.iterations = iters;
    rep.tolerance = eps;
    return rep;
}

} // namespace

CouplingReport compute_kc(const FrequencySpec& spec) {
    return compute_kc_impl(spec, 0.0, false);
}

CouplingReport compute_kc(const FrequencySpec& spec, double eps) {
    return compute_kc_impl(spec, eps, true);
}

std::optional<double> existence_at(const FrequencySpec& spec, double k) {
    detail::require_spec(spec);
    require_coupling(k);
    const std::span<const double> Om = spec.view();
    const double n = static_cast<double>(Om.size());
    const double m = inf_norm(Om);
    if (m == 0.0) return 1.0; // P == 1 identically, beta = 1
    const double beta_lo = m / k;
    if (beta_lo > 1.0) return std::nullopt;

    const auto phi = [&](double b) { return mean_offset_cosine(Om, k * b) - b; };
    // phi is strictly concave on (beta_lo, 1], so its derivative is strictly
    // decreasing; +inf at beta_lo.
    const auto dphi = [&](double b) {
        const double u = k * b;
        double s = 0.0;
        for (double w : Om) {
            const double q = (w / u) * (w / u);
            s += q / std::sqrt(std::max(0.0, 1.0 - q)); // q/0 -> inf, intended
        }
        return k * s / (n * u) - 1.0;
    };

    double peak = 1.0;
    if (dphi(1.0) < 0.0) {
        double lo = beta_lo, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (dphi(mid) > 0.0 ? lo : hi) = mid;
        }
        peak = 0.5 * (lo + hi);
    }
    // else: phi still rising at beta = 1, the supremum sits on the boundary

    const double phi_peak = phi(peak);
    if (phi_peak < -1e-12) return std::nullopt;
    if (phi_peak <= 0.0) return peak; // tangency, within rounding of a double root

    double lo = peak, hi = 1.0;
    // phi(1) = P(k) - 1 < 0 whenever Omega != 0, so the bracket is valid.
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> existence_with_signs(const FrequencySpec& spec, double k,
                                         const SignVector& a) {
    detail::require_spec(spec);
    require_coupling(k);
    require_matching(spec, a);
    const std::span<const double> Om = spec.view();
    const double m = inf_norm(Om);

    if (m == 0.0) {
        const double mu = a.mean();
        if (mu > 0.0) return {mu};
        return {};
    }

    const double beta_lo = m / k;
    if (beta_lo > 1.0) return {};

    const auto g = [&](double b) { return signed_mean_offset_cosine(Om, a, k * b) - b; };

    // Uniform scan for sign changes, then bisect each bracket down to the
    // last representable digit (roots can sit where g is steep, and the
    // constructor re-checks consistency to 1e-10).
    constexpr int kIntervals = 1024;
    std::vector<double> roots;
    double prev_b = beta_lo;
    double prev_g = g(beta_lo);
    for (int i = 1; i <= kIntervals; ++i) {
        const double b = beta_lo + (1.0 - beta_lo) * static_cast<double>(i) / kIntervals;
        const double cur = g(b);
        if (prev_g == 0.0) {
            roots.push_back(prev_b);
        } else if (cur != 0.0 && (prev_g > 0.0) != (cur > 0.0)) {
            double lo = prev_b, hi = b;
            bool lo_pos = prev_g > 0.0;
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm > 0.0) == lo_pos) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_b = b;
        prev_g = cur;
    }
    if (prev_g == 0.0) roots.push_back(prev_b);
    return roots;
}

FixedPointCertificate construct_fixed_point(const FrequencySpec& spec, double k,
                                            const SignVector& a, double beta) {
    detail::require_spec(spec);
    require_coupling(k);
    require_matching(spec, a);
    const std::span<const double> Om = spec.view();
    const std::size_t n = spec.size();
    const double m = inf_norm(Om);

    if (!std::isfinite(beta) || beta > 1.0 || (m == 0.0 ? beta < 0.0 : !(beta > 0.0))) {
        throw std::invalid_argument("beta must lie in (0, 1]");
    }
    if (m > 0.0 && k * beta < m * (1.0 - 1e-12)) {
        throw std::invalid_argument("k * beta below ||Omega||_inf: no locked state has this order");
    }

    // Verify the pair is actually on the self-consistency curve before
    // building anything from it.
    const double target =
        m == 0.0 ? std::abs(a.mean()) : signed_mean_offset_cosine(Om, a, k * beta);
    const double defect = std::abs(beta - target);
    if (defect > kConsistencyTol) {
        throw certification_error("(a, beta) is not self-consistent: defect " +
                                      format_full(defect),
                                  defect);
    }

    const double u = k * beta;
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = m == 0.0 ? 0.0 : Om[i] / u;
        const double p = std::sqrt(std::max(0.0, 1.0 - r * r));
        // delta_i is the phase offset from the mean field direction; the sign
        // choice a_i picks which side of the circle carries it.
        delta[i] = std::atan2(-r, (a[i] > 0 ? 1.0 : -1.0) * p);
    }
    const double mean_delta =
        std::accumulate(delta.begin(), delta.end(), 0.0) / static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = mean_delta - delta[i];
    PhaseState state = PhaseState::grounded(std::move(x));

    const std::vector<double> f = coupling_field(state.view());
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        residual = std::max(residual, std::abs(k * f[i] + Om[i]));
    }
    const double tol = kResidualTolScale * std::max(1.0, k);
    if (residual > tol) {
        throw certification_error("constructed state fails the field equation: residual " +
                                      format_full(residual),
                                  residual);
    }
    const double R = order_parameter(state.view()).R;
    if (std::abs(R - beta) > 1e-8) {
        throw certification_error("constructed state has order " + format_full(R) +
                                      ", expected " + format_full(beta),
                                  std::abs(R - beta));
    }
    return FixedPointCertificate{a, beta, std::move(state), residual, R};
}

Enumeration enumerate_fixed_points(const FrequencySpec& spec, double k, std::size_t max_n) {
    detail::require_spec(spec);
    require_coupling(k);
    const std::size_t n = spec.size();
    if (max_n > 62) max_n = 62;
    if (n > max_n) {
        throw capacity_error("n = " + std::to_string(n) + " exceeds max_n = " +
                             std::to_string(max_n) + " (2^n sign vectors)");
    }
    const double m = inf_norm(spec.view());

    Enumeration out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        SignVector a = SignVector::from_mask(n, mask);
        if (m == 0.0) {
            // Every sign split is an antipodal equilibrium of the homogeneous
            // system; its order magnitude is |mean(a)|.
            const double beta = std::abs(a.mean());
            out.certificates.push_back(construct_fixed_point(spec, k, a, beta));
            continue;
        }
        const std::vector<double> roots = existence_with_signs(spec, k, a);
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
            out.certificates.push_back(construct_fixed_point(spec, k, a, *it));
        }
    }

    // Group by equal order magnitude. Indices sorted by descending R; a gap
    // over 1e-8 from the group's first member starts a new group.
    std::vector<std::size_t> idx(out.certificates.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
        return out.certificates[p].order_R > out.certificates[q].order_R;
    });
    for (std::size_t i : idx) {
        const double R = out.certificates[i].order_R;
        if (out.classes.empty() ||
            out.certificates[out.classes.back().front()].order_R - R > 1e-8) {
            out.classes.emplace_back();
        }
        out.classes.back().push_back(i);
    }
    for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());
    return out;
}

std::pair<double, double> order_band(const FrequencySpec& spec, double k) {
    detail::require_spec(spec);
    require_coupling(k);
    const double sigma = rms(spec.view());
    if (k < 2.0 * sigma) {
        throw std::invalid_argument("k below 2*sigma: no locked state exists at this coupling");
    }
    const double ratio = 2.0 * sigma / k;
    const double d = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    return {std::sqrt(0.5 * (1.0 - d)), std::sqrt(0.5 * (1.0 + d))};
}

} // namespace kuramoto
