#pragma once

#include <stdexcept>
#include <string>

namespace tdlc {

// Every failure mode surfaced to callers. Tools map these to exit codes.
enum class ErrorKind {
  RankDeficient,
  BadPrime,
  MixedUniverse,
  NotContained,
  Singular,
  DimMismatch,
  ParentMismatch,
  NotAutomorphism,
  NotInvariant,
  BadModulus,
  NotStabilized,
  MonotonicityViolation,
  CrossCheckMismatch,
  EmptyCandidates,
  InvalidArgument,
  ParseError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace tdlc
