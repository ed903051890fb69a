#pragma once

#include <stdexcept>
#include <string>

namespace hypercount {

enum class ErrorCode {
    NonOddPrime,
    TooLarge,
    DivZero,
    DlogOfZero,
    TeichOfZero,
    BadDenominator,
    BadPrecision,
    RecognitionFailure,
    BadParams,
    PreconditionViolated,
    Unsatisfiable,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonOddPrime: return "NonOddPrime";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::DivZero: return "DivZero";
        case ErrorCode::DlogOfZero: return "DlogOfZero";
        case ErrorCode::TeichOfZero: return "TeichOfZero";
        case ErrorCode::BadDenominator: return "BadDenominator";
        case ErrorCode::BadPrecision: return "BadPrecision";
        case ErrorCode::RecognitionFailure: return "RecognitionFailure";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    }
    return "Unknown";
}

} // namespace hypercount
