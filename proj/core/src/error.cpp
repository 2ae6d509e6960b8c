#include "thetaspec/error.hpp"

namespace thetaspec {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::IdenticallyZeroOnInterval: return "IdenticallyZeroOnInterval";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::MissedBranch: return "MissedBranch";
    case ErrorKind::BranchJump: return "BranchJump";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace thetaspec
