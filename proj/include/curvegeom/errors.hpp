#pragma once

#include <stdexcept>
#include <string>

namespace cg {

enum class ErrorCode {
    InvalidCurve,
    DegenerateCurve,
    InvalidFrame,
    InvalidRange,
    NotSpherical,
    UndefinedFrame,
    NotClosed,
    DegenerateFit,
    MixedCausalCharacter,
    MixedNormalCharacter,
    DegenerateLightlike,
    LightlikeUnsupported,
    HyperbolicOverflow,
    NoLineFit,
    NotAdmissible,
    UnsupportedSignature,
    NotTangent,
    NoFit,
    RadiusOutOfRange,
    ZeroTorsion,
    TubeTooFat,
    SingularCenterline,
    DegenerateDirection,
    DomainViolation,
    BourDomainViolation,
    InvalidFamily,
    GridTooCoarse,
    NotThin,
    InvalidArgument,
};

const char* error_name(ErrorCode c);

// Errors that mean "the caller handed us bad input" as opposed to
// "the geometry/numerics ran out of domain".
bool is_input_error(ErrorCode c);

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw GeometryError(c, msg); }

} // namespace cg
