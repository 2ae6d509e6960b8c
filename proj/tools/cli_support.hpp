#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <thetaspec/error.hpp>
#include <thetaspec/spectrum.hpp>

namespace thetaspec::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  long double tolerance = 1e-12L;
  int precision_bits = 64;
  int parallelism = 1;
  std::string output_path;  // empty: stdout
  OutputFormat format = OutputFormat::json;
};

// Throws DomainError when a field is out of range.
void validate(const RunConfig& cfg);

// "2", "-0.5+0.25i", "3i", "-i", "(a,b)" or "a,b". Throws DomainError.
cplx parse_complex(const std::string& text);

// THETA_SPECTRUM_PRECISION wins over the flag when set.
int resolve_precision(int flag_value, const char* env_value);

enum ExitCode { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

// Usage and domain problems map to 2, everything else to 1.
int exit_code_for(ErrorKind kind);

}  // namespace thetaspec::cli
