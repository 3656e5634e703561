#include "kuramoto/frequencies.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "kuramoto/errors.hpp"
#include "kuramoto/random.hpp"

namespace kuramoto {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double rms(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

FrequencySpec center(std::span<const double> raw) {
    if (raw.size() < 2) {
        throw std::invalid_argument("need at least 2 oscillators, got " +
                                    std::to_string(raw.size()));
    }
    double sum = 0.0;
    for (double x : raw) {
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite frequency entry");
        sum += x;
    }
    const double mean = sum / static_cast<double>(raw.size());
    std::vector<double> out(raw.begin(), raw.end());
    if (mean != 0.0) {
        for (double& x : out) x -= mean;
    }
    return FrequencySpec{std::move(out)};
}

FrequencySpec sample_normal(std::size_t n, double mean, double stddev, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least 2 oscillators");
    if (!std::isfinite(mean) || !std::isfinite(stddev) || stddev < 0.0) {
        throw std::invalid_argument("mean must be finite and stddev nonnegative");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> draws(n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        const NormalPair p = normal_pair(rng);
        draws[i] = mean + stddev * p.first;
        draws[i + 1] = mean + stddev * p.second;
    }
    if (n % 2 != 0) draws[n - 1] = mean + stddev * normal_pair(rng).first;
    std::stable_sort(draws.begin(), draws.end());
    return center(draws);
}

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::vector<double> parse_json_array(const std::string& text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw io_error(source + ": " + e.what());
    }
    if (!doc.is_array()) throw io_error(source + ": expected a JSON array of numbers");
    std::vector<double> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) {
            throw io_error(source + ": element " + std::to_string(i) + " is not a number");
        }
        out.push_back(doc[i].get<double>());
    }
    return out;
}

std::vector<double> parse_lines(const std::string& text, const std::string& source) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t b = 0, e = line.size();
        while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
        if (b == e) continue;
        const std::string token = line.substr(b, e - b);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
            throw io_error(source + ":" + std::to_string(lineno) + ": not a finite number: '" +
                           token + "'");
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

std::vector<double> read_frequencies(std::istream& in, const std::string& source) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '[') return parse_json_array(text, source);
        break;
    }
    return parse_lines(text, source);
}

std::vector<double> read_frequencies_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(path + ": cannot open for reading");
    return read_frequencies(in, path);
}

void write_frequencies(std::ostream& out, std::span<const double> values) {
    for (double v : values) out << format_full(v) << '\n';
}

} // namespace kuramoto
