#pragma once

#include <stdexcept>
#include <string>

namespace azulift {

enum class ErrorKind {
    Parse,
    NotUnit,
    Precondition,
    Degenerate,
    NotBrauerEquivalent,
    NotSplit,
    NotFree,
    NotIdempotentResidue,
    NoUnitSolution,
    AssociativityFailure,
    BaseMismatch,
    SlotNotInBase,
    SearchExhausted,
    WitnessSearchFailed,
    Unsupported,
    CheckFailed,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace azulift
