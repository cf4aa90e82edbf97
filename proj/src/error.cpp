#include "azulift/error.hpp"

namespace azulift {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::NotUnit: return "NotUnit";
        case ErrorKind::Precondition: return "PreconditionViolated";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::NotBrauerEquivalent: return "NotBrauerEquivalent";
        case ErrorKind::NotSplit: return "NotSplit";
        case ErrorKind::NotFree: return "NotFree";
        case ErrorKind::NotIdempotentResidue: return "NotIdempotentResidue";
        case ErrorKind::NoUnitSolution: return "NoUnitSolution";
        case ErrorKind::AssociativityFailure: return "AssociativityFailure";
        case ErrorKind::BaseMismatch: return "BaseMismatch";
        case ErrorKind::SlotNotInBase: return "SlotNotInBase";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::WitnessSearchFailed: return "WitnessSearchFailed";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::CheckFailed: return "CheckFailed";
    }
    return "Unknown";
}

}  // namespace azulift
