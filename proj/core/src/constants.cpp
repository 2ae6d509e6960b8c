#include "thetaspec/constants.hpp"

#include <cmath>
#include <json.hpp>

#include "thetaspec/certify.hpp"
#include "thetaspec/error.hpp"

namespace thetaspec {

namespace detail {
extern const char* const kConstantsJson;
}

namespace {

const nlohmann::json& manifest() {
  static const nlohmann::json j = nlohmann::json::parse(detail::kConstantsJson);
  return j;
}

}  // namespace

bool ReferenceConstant::accepts(long double computed) const {
  if (is_range()) {
    return computed >= std::stold(*lo) && computed < std::stold(*hi);
  }
  return std::fabs(computed - std::stold(*value)) <= tolerance;
}

const std::vector<ReferenceConstant>& reference_constants() {
  static const std::vector<ReferenceConstant> all = [] {
    std::vector<ReferenceConstant> out;
    for (const auto& e : manifest().at("constants")) {
      ReferenceConstant c;
      c.name = e.at("name");
      c.description = e.value("description", "");
      if (e.contains("value")) c.value = e.at("value").get<std::string>();
      c.tolerance = e.value("tolerance", 0.0);
      if (e.contains("lo")) c.lo = e.at("lo").get<std::string>();
      if (e.contains("hi")) c.hi = e.at("hi").get<std::string>();
      out.push_back(std::move(c));
    }
    return out;
  }();
  return all;
}

const ReferenceConstant& reference_constant(const std::string& name) {
  for (const auto& c : reference_constants())
    if (c.name == name) return c;
  raise(ErrorKind::DomainError, "no reference constant named '" + name + "'");
}

long double reference_value(const std::string& name) {
  const ReferenceConstant& c = reference_constant(name);
  if (!c.value) raise(ErrorKind::DomainError, "reference constant '" + name + "' is a range");
  return std::stold(*c.value);
}

IntPoly reference_resultant() {
  std::vector<mpz_class> c;
  for (const auto& s : manifest().at("resultant").at("coeffs")) c.emplace_back(s.get<std::string>(), 10);
  return IntPoly(std::move(c));
}

std::vector<SegmentThresholds> reference_thresholds() {
  std::vector<SegmentThresholds> out;
  for (const auto& r : manifest().at("segment_thresholds").at("rows"))
    out.push_back({r.at("segment"), r.at("V"), r.at("V1"), r.at("Vk"), r.at("Wj")});
  return out;
}

const char* constants_manifest_text() { return detail::kConstantsJson; }

}  // namespace thetaspec
