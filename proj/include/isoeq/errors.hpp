#pragma once

#include <stdexcept>
#include <string>

namespace isoeq {

/// Failure conditions surfaced by the library. Each condition maps to one
/// CLI exit-code category (see errc_exit_code).
enum class Errc {
    NotPrime,
    TooLarge,
    NoIrreducibleFound,
    ZeroInverse,
    DimensionMismatch,
    NotContained,
    BadCodimension,
    BadSpec,
    AmbientTooSmall,
    NotASolution,
    NotMinimalLength,
    ClassificationFailed,
    NotACovering,
    StructureViolation,
    Precondition,
    Malformed,
    NotCanonical,
};

const char* errc_name(Errc code) noexcept;

/// Exit-code category: 2 = malformed input, 3 = precondition violation,
/// 4 = caps exceeded, 5 = internal invariant failure.
int errc_exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) { throw Error(code, message); }

inline void require(bool cond, Errc code, const std::string& message) {
    if (!cond) raise(code, message);
}

}  // namespace isoeq
