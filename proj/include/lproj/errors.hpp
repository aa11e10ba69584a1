#pragma once

#include <stdexcept>
#include <string>

namespace lproj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct InsufficientSample : Error {
  using Error::Error;
};

struct SingularSigma : Error {
  using Error::Error;
};

struct ExplosiveOverflow : Error {
  using Error::Error;
};

struct TooManyFailedDraws : Error {
  using Error::Error;
};

struct TooManyFailedReps : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct KeyMismatch : Error {
  using Error::Error;
};

struct UndefinedAtH1 : Error {
  using Error::Error;
};

}  // namespace lproj
