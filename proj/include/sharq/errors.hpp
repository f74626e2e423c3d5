#pragma once

#include <stdexcept>
#include <string>

namespace sharq {

enum class Err {
    // kernel
    IdenticalPoints,
    IdenticalLines,
    NotCollinear,
    DegenerateTuple,
    CoincidesWithEndpoint,
    InvalidPair,
    DegenerateHomology,
    // conics
    NotUnique,
    DegenerateConic,
    PolarUndefined,
    NotOnConic,
    DegenerateHexagon,
    // involutions
    NotOnLine,
    InconsistentPairs,
    NotInvolution,
    ThirdPairMismatch,
    // quadrangles
    ThreeCollinearVertices,
    LineThroughVertex,
    LineThroughDiagonalPoint,
    ConcurrencyViolation,
    MappingViolation,
    DegenerateConfiguration,
    // verifier / tooling
    ExhaustedAttempts,
    UnknownCheck,
    InvalidConfig,
    EmptyViewport,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::IdenticalPoints: return "IdenticalPoints";
        case Err::IdenticalLines: return "IdenticalLines";
        case Err::NotCollinear: return "NotCollinear";
        case Err::DegenerateTuple: return "DegenerateTuple";
        case Err::CoincidesWithEndpoint: return "CoincidesWithEndpoint";
        case Err::InvalidPair: return "InvalidPair";
        case Err::DegenerateHomology: return "DegenerateHomology";
        case Err::NotUnique: return "NotUnique";
        case Err::DegenerateConic: return "DegenerateConic";
        case Err::PolarUndefined: return "PolarUndefined";
        case Err::NotOnConic: return "NotOnConic";
        case Err::DegenerateHexagon: return "DegenerateHexagon";
        case Err::NotOnLine: return "NotOnLine";
        case Err::InconsistentPairs: return "InconsistentPairs";
        case Err::NotInvolution: return "NotInvolution";
        case Err::ThirdPairMismatch: return "ThirdPairMismatch";
        case Err::ThreeCollinearVertices: return "ThreeCollinearVertices";
        case Err::LineThroughVertex: return "LineThroughVertex";
        case Err::LineThroughDiagonalPoint: return "LineThroughDiagonalPoint";
        case Err::ConcurrencyViolation: return "ConcurrencyViolation";
        case Err::MappingViolation: return "MappingViolation";
        case Err::DegenerateConfiguration: return "DegenerateConfiguration";
        case Err::ExhaustedAttempts: return "ExhaustedAttempts";
        case Err::UnknownCheck: return "UnknownCheck";
        case Err::InvalidConfig: return "InvalidConfig";
        case Err::EmptyViewport: return "EmptyViewport";
    }
    return "UnknownError";
}

/// Exception carrying a structured error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& message)
        : std::runtime_error(std::string(err_name(code)) + ": " + message), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace sharq
