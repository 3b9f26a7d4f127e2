#pragma once

#include <stdexcept>
#include <string>

namespace latinv {

// Error taxonomy shared by all modules. Each computational failure mode gets
// its own code so callers (and the CLI) can surface the originating condition
// verbatim.
enum class ErrCode {
    ZeroInput,
    PrecisionExceeded,
    SingularMatrix,
    SingularSeries,
    BadSlope,
    BadSpec,
    NotDieudonne,
    NotFullRank,
    DepthExhausted,
    WindowTooLarge,
    FieldTooSmall,
    NotAChart,
    NotMinuscule,
    NotBT1,
    NoMatch,
    AmbiguousMatch,
    NotInADLV,
    AnchorNotFound,
    NotVertexChain,
    NonTerminating,
    BudgetExceeded,
    NotFound,
    BadInput,
};

inline const char* err_name(ErrCode c) {
    switch (c) {
        case ErrCode::ZeroInput: return "ZeroInput";
        case ErrCode::PrecisionExceeded: return "PrecisionExceeded";
        case ErrCode::SingularMatrix: return "SingularMatrix";
        case ErrCode::SingularSeries: return "SingularSeries";
        case ErrCode::BadSlope: return "BadSlope";
        case ErrCode::BadSpec: return "BadSpec";
        case ErrCode::NotDieudonne: return "NotDieudonne";
        case ErrCode::NotFullRank: return "NotFullRank";
        case ErrCode::DepthExhausted: return "DepthExhausted";
        case ErrCode::WindowTooLarge: return "WindowTooLarge";
        case ErrCode::FieldTooSmall: return "FieldTooSmall";
        case ErrCode::NotAChart: return "NotAChart";
        case ErrCode::NotMinuscule: return "NotMinuscule";
        case ErrCode::NotBT1: return "NotBT1";
        case ErrCode::NoMatch: return "NoMatch";
        case ErrCode::AmbiguousMatch: return "AmbiguousMatch";
        case ErrCode::NotInADLV: return "NotInADLV";
        case ErrCode::AnchorNotFound: return "AnchorNotFound";
        case ErrCode::NotVertexChain: return "NotVertexChain";
        case ErrCode::NonTerminating: return "NonTerminating";
        case ErrCode::BudgetExceeded: return "BudgetExceeded";
        case ErrCode::NotFound: return "NotFound";
        case ErrCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrCode code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    ErrCode code() const { return code_; }

private:
    ErrCode code_;
};

[[noreturn]] inline void raise(ErrCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace latinv
