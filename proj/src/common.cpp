#include "scarforge/errors.hpp"
#include "scarforge/rng.hpp"

#include <stdexcept>

namespace scarforge {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Argument: return "argument error";
    case ErrorKind::RejectedInput: return "rejected input";
    case ErrorKind::DegenerateLandmarks: return "degenerate landmarks";
    case ErrorKind::AmbiguousAnatomy: return "ambiguous anatomy";
    case ErrorKind::Topology: return "topology error";
    case ErrorKind::EmptyCandidate: return "empty candidate region";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::UndefinedMetric: return "undefined metric";
    case ErrorKind::ContractViolation: return "contract violation";
    }
    return "error";
}

double ScriptedSource::next_unit() {
    if (pos_ >= draws_.size())
        throw std::out_of_range("scripted random source exhausted");
    return draws_[pos_++];
}

} // namespace scarforge
