#pragma once

#include <stdexcept>
#include <string>

namespace scarforge {

enum class ErrorKind {
    Argument,            // caller passed an out-of-contract value
    RejectedInput,       // input record cannot be processed (empty mask, degenerate size)
    DegenerateLandmarks, // coincident RVIPs
    AmbiguousAnatomy,    // inferior RVIP exactly opposite the anterior RVIP
    Topology,            // myocardium without an enclosed cavity
    EmptyCandidate,      // no pixel left to place a scar in
    Parse,               // malformed manifest / caption / config / embedding table
    Io,                  // filesystem or codec failure
    UndefinedMetric,     // metric undefined for the given labels
    ContractViolation,   // e.g. augmenting an LGE-positive record
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace scarforge
