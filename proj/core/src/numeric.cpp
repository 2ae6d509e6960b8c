#include "thetaspec/numeric.hpp"

#include <cstdio>
#include <sstream>

namespace thetaspec {

std::string to_decimal(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

std::string to_decimal(const hp_real& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace thetaspec
