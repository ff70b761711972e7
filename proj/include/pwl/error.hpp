#pragma once

#include <stdexcept>
#include <string>

namespace pwl {

enum class ErrorKind {
  BadArgument,
  PrecisionExhausted,
  PrecisionMismatch,
  NotAUnit,
  NotOneUnit,
  DimensionMismatch,
  WidthInsufficient,
  CongruenceViolated,
  BadRange,
  BadLevel,
  BadWeight,
  NotInGroup,
  NotAdmissible,
  NotCoprime,
  NotInvertible,
  NoLift,
  AmbiguousAtPrecision,
  TruncationTooShort,
  ContractViolated,
  InternalInconsistency,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pwl
