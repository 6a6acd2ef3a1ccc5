#pragma once

#include <stdexcept>
#include <string>

namespace skewloop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// curve-core
struct NonzeroMean : Error { using Error::Error; };
struct ZeroVelocity : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };

// support-oval
struct NotStrictlyConvex : Error { using Error::Error; };

// skew-construct
struct OddPartZero : Error { using Error::Error; };
struct Nonpositive : Error { using Error::Error; };
struct SymmetricBase : Error { using Error::Error; };
struct ProjectionFailure : Error { using Error::Error; };

// skew-verify
struct NotImmersed : Error { using Error::Error; };
struct FlatPoint : Error { using Error::Error; };

// quadric-geom
struct NotOnSurface : Error { using Error::Error; };
struct NullVelocity : Error { using Error::Error; };
struct PoleCrossing : Error { using Error::Error; };
struct NotEmbedded : Error { using Error::Error; };
struct NotUnitSpeed : Error { using Error::Error; };
struct ZeroFactor : Error { using Error::Error; };
struct TangentPlane : Error { using Error::Error; };
struct NoSignChange : Error { using Error::Error; };

// io / cli
struct ParseError : Error { using Error::Error; };

}  // namespace skewloop
