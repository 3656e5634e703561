#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "kuramoto/frequencies.hpp"

namespace kuramoto::detail {

// Analyses assume a centered vector; accepting a raw one would silently shift
// every threshold, so reject instead.
inline void require_spec(const FrequencySpec& spec) {
    if (spec.size() < 2) {
        throw std::invalid_argument("frequency spec needs n >= 2, got " +
                                    std::to_string(spec.size()));
    }
    double sum = 0.0, m = 0.0;
    for (double v : spec.omega) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite frequency entry");
        sum += v;
        m = std::max(m, std::abs(v));
    }
    if (std::abs(sum) > 1e-12 * static_cast<double>(spec.size()) * m) {
        throw std::invalid_argument("frequencies are not centered (sum " + std::to_string(sum) +
                                    "); pass them through center() first");
    }
}

} // namespace kuramoto::detail
