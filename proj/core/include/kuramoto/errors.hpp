#pragma once

#include <stdexcept>
#include <string>

namespace kuramoto {

// Malformed input data (frequency files, JSON arrays). Message carries
// "<source>:<line>: <reason>" when a location is known.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard size limit (e.g. enumerating 2^N sign vectors).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A trajectory left the representable range (non-finite state component).
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time(last_valid_time) {}

    double last_valid_time;
};

// A constructed object failed its own verification; `defect` is the
// measured violation that tripped the check.
class certification_error : public std::runtime_error {
public:
    certification_error(const std::string& what, double defect)
        : std::runtime_error(what), defect(defect) {}

    double defect;
};

} // namespace kuramoto
