#include "cli_support.hpp"

#include <cctype>
#include <cmath>
#include <string_view>

#include <thetaspec/error.hpp>

namespace thetaspec::cli {

namespace {

long double parse_real(std::string_view s, const std::string& whole) {
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  std::string str(s);
  size_t used = 0;
  long double v = 0;
  try {
    v = std::stold(str, &used);
  } catch (const std::exception&) {
    raise(ErrorKind::DomainError, "not a complex number: '" + whole + "'");
  }
  if (used != str.size() || !std::isfinite(v)) raise(ErrorKind::DomainError, "not a complex number: '" + whole + "'");
  return v;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0)) raise(ErrorKind::DomainError, "--tol must be positive");
  if (cfg.precision_bits < 53) raise(ErrorKind::DomainError, "--precision-bits must be >= 53");
  if (cfg.parallelism < 1) raise(ErrorKind::DomainError, "--parallelism must be >= 1");
}

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) raise(ErrorKind::DomainError, "empty complex literal");

  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (auto comma = s.find(','); comma != std::string::npos) {
    std::string_view v(s);
    if (comma == 0 || comma + 1 == s.size()) raise(ErrorKind::DomainError, "not a complex number: '" + text + "'");
    return {parse_real(v.substr(0, comma), text), parse_real(v.substr(comma + 1), text)};
  }

  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, text), 0};

  std::string_view body(s.data(), s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  size_t split = std::string_view::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0, parse_real(body, text)};
  return {parse_real(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

int resolve_precision(int flag_value, const char* env_value) {
  if (env_value == nullptr || *env_value == '\0') return flag_value;
  try {
    size_t used = 0;
    int v = std::stoi(env_value, &used);
    if (env_value[used] != '\0') throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::DomainError, std::string("THETA_SPECTRUM_PRECISION is not an integer: '") + env_value + "'");
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError:
    case ErrorKind::UnsupportedOrder:
    case ErrorKind::DegenerateInput:
      return kUsageError;
    default:
      return kVerificationFailed;
  }
}

}  // namespace thetaspec::cli
