#pragma once

#include <stdexcept>
#include <string>

namespace cb {

// Every failure mode raised by the workbench. Codes are stable identifiers
// used in CLI error payloads; the what() string carries context.
enum class ErrorCode {
    DivisionByZero,
    VariableMismatch,
    DegreeTooLarge,
    UnsupportedField,
    NotNonnegative,
    NeedsExtension,
    NotReduced,
    UnsupportedNodeField,
    NotSingular,
    CollinearNodes,
    TemplateMismatch,
    NotOnQuadric,
    NotSmoothPoint,
    NoSmoothPointFound,
    PrecondViolated,
    HypothesisViolated,
    HypothesisUnverified,
    ChartMismatch,
    InvalidMultiplicity,
    UndecidedEffectivity,
    IndeterminateValuation,
    UnsupportedSymbolShape,
    SyntaxError,
    UnknownCharacter,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Parse errors additionally carry a character offset into the input text.
class ParseError : public Error {
  public:
    ParseError(ErrorCode code, const std::string& message, std::size_t position)
        : Error(code, message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace cb
