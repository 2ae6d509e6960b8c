#pragma once

#include <stdexcept>
#include <string>

namespace thetaspec {

enum class ErrorKind {
  NonConvergent,
  ToleranceUnreachable,
  UnsupportedOrder,
  DomainError,
  DegenerateInput,
  IdenticallyZeroOnInterval,
  CertificateFailed,
  BoundaryZero,
  Inconclusive,
  NoConvergence,
  SingularJacobian,
  MissedBranch,
  BranchJump,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace thetaspec
