#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kuramoto {

// Centered natural frequencies: Omega = omega - mean(omega). Every analysis
// in this library expects the centered vector, so the type exists mostly to
// make "already centered" explicit at interfaces.
struct FrequencySpec {
    std::vector<double> omega;

    std::size_t size() const { return omega.size(); }
    std::span<const double> view() const { return omega; }
};

double inf_norm(std::span<const double> v);

// Population RMS, sqrt((1/N) sum v_j^2). For a centered vector this is the
// frequency spread sigma.
double rms(std::span<const double> v);

// Removes the mean. Requires n >= 2 and finite entries. An already centered
// input passes through unchanged (subtracting an exact 0.0 is exact).
FrequencySpec center(std::span<const double> raw);

// n independent N(mean, stddev^2) draws, centered and sorted ascending.
// Bit-reproducible for a given seed on any conforming platform.
FrequencySpec sample_normal(std::size_t n, double mean, double stddev, std::uint64_t seed);

// Text format: one decimal per line, '#' starts a comment, blank lines are
// skipped. A stream whose first non-space byte is '[' is instead parsed as a
// JSON array of numbers. `source` names the stream in error messages.
std::vector<double> read_frequencies(std::istream& in, const std::string& source = "<stream>");
std::vector<double> read_frequencies_file(const std::string& path);

// One value per line at full round-trip precision.
void write_frequencies(std::ostream& out, std::span<const double> values);

// Shortest decimal form that round-trips a double (printf %.17g).
std::string format_full(double value);

} // namespace kuramoto
