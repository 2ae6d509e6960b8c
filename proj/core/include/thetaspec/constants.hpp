#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetaspec/poly.hpp"

namespace thetaspec {

// Reference value from the constants manifest. Point values carry a
// tolerance; range values carry [lo, hi).
struct ReferenceConstant {
  std::string name;
  std::string description;
  std::optional<std::string> value;
  double tolerance = 0;
  std::optional<std::string> lo;
  std::optional<std::string> hi;

  bool is_range() const { return lo.has_value(); }
  // Within tolerance (point) or inside [lo, hi) (range).
  bool accepts(long double computed) const;
};

const std::vector<ReferenceConstant>& reference_constants();
const ReferenceConstant& reference_constant(const std::string& name);
long double reference_value(const std::string& name);

// Reference resultant polynomial from the manifest.
IntPoly reference_resultant();

// Raw manifest text.
const char* constants_manifest_text();

}  // namespace thetaspec
