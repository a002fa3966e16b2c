#pragma once

#include <stdexcept>
#include <string>

namespace zas {

// Failure categories surfaced by the library.  CLI exit codes group them:
// computation failures (1), invalid input (2), verification failures (3).
enum class ErrorCode {
    NonIntegrable,
    ToleranceNotMet,
    AmbiguousExponent,
    Oscillatory,
    StepUnderflow,
    RouteMismatch,
    DomainError,
    FactorVanishesInterior,
    NoExpansion,
    ResolutionInvalid,
    HypothesisViolated,
    NotTwiceDifferentiable,
    InvalidSpec,
    ParseError,
    ValidationError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonIntegrable: return "NonIntegrable";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::AmbiguousExponent: return "AmbiguousExponent";
        case ErrorCode::Oscillatory: return "Oscillatory";
        case ErrorCode::StepUnderflow: return "StepUnderflow";
        case ErrorCode::RouteMismatch: return "RouteMismatch";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::FactorVanishesInterior: return "FactorVanishesInterior";
        case ErrorCode::NoExpansion: return "NoExpansion";
        case ErrorCode::ResolutionInvalid: return "ResolutionInvalid";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::NotTwiceDifferentiable: return "NotTwiceDifferentiable";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Error";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline bool is_input_error(ErrorCode c) {
    return c == ErrorCode::InvalidSpec || c == ErrorCode::ParseError ||
           c == ErrorCode::ValidationError || c == ErrorCode::DomainError;
}

}  // namespace zas
