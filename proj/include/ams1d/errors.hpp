#ifndef AMS1D_ERRORS_HPP
#define AMS1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ams1d {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystem : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct NotTridiagonal : Error {
    using Error::Error;
};
struct LengthError : Error {
    using Error::Error;
};
struct InvalidCount : Error {
    using Error::Error;
};
struct TooCoarse : Error {
    using Error::Error;
};
struct DegenerateCoefficient : Error {
    using Error::Error;
};
struct NonpositiveCoefficient : Error {
    using Error::Error;
};
struct DegenerateInterval : Error {
    using Error::Error;
};
struct SignStructureError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ZeroReference : Error {
    using Error::Error;
};
struct NoHomogenizedReference : Error {
    using Error::Error;
};

} // namespace ams1d

#endif
