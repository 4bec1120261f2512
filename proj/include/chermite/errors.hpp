#ifndef CHERMITE_ERRORS_HPP
#define CHERMITE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chermite {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mismatched variable counts, out-of-range variable indices, bad list lengths.
class ArityError : public Error {
public:
  using Error::Error;
};

/// A numeric evaluation produced a non-finite value.
class EvalOverflow : public Error {
public:
  using Error::Error;
};

/// Scaling relation requested at z == 0.
class SingularScaling : public Error {
public:
  using Error::Error;
};

/// Kernel parameters lie outside the region where the series converges.
class OutsideConvergenceDomain : public Error {
public:
  using Error::Error;
};

/// Coefficient tensor does not satisfy the heat-type recurrence.
class NotHermiteExpandable : public Error {
public:
  using Error::Error;
};

/// Malformed serialized input (JSON, rationals, complex literals).
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace chermite

#endif // CHERMITE_ERRORS_HPP
