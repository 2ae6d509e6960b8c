#include "thetaspec/serialize.hpp"

#include "thetaspec/error.hpp"

namespace thetaspec {

namespace {

std::string dec(long double v) { return to_decimal(v, 21); }

Json number(long double v) {
  // JSON has no inf/nan.
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

std::vector<mpq_class> coeff_list(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    raise(ErrorKind::DomainError, "polynomial JSON needs a \"coeffs\" array");
  std::vector<mpq_class> out;
  for (const auto& c : j.at("coeffs")) {
    if (c.is_string()) {
      out.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      out.emplace_back(c.get<long>());
    } else {
      raise(ErrorKind::DomainError, "polynomial coefficients must be strings or integers");
    }
  }
  return out;
}

}  // namespace

Json envelope(const std::string& kind, const Json& body) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json to_json(const IntervalReal& v) { return {{"lo", dec(v.lo())}, {"hi", dec(v.hi())}}; }

Json to_json(const BallComplex& v) { return {{"re", dec(v.c.re)}, {"im", dec(v.c.im)}, {"radius", dec(v.r)}}; }

Json to_json(const cplx& z) { return {{"re", dec(z.real())}, {"im", dec(z.imag())}}; }

Json to_json(const IntPoly& p, const std::string& var) {
  Json c = Json::array();
  for (const auto& k : p.coeffs()) c.push_back(k.get_str());
  return {{"var", var}, {"coeffs", c}};
}

Json to_json(const QPoly& p, const std::string& var) {
  Json c = Json::array();
  for (const auto& k : p.coeffs()) c.push_back(k.get_str());
  return {{"var", var}, {"coeffs", c}};
}

IntPoly int_poly_from_json(const Json& j) {
  std::vector<mpz_class> c;
  for (const auto& q : coeff_list(j)) {
    if (q.get_den() != 1) raise(ErrorKind::DomainError, "integer polynomial has a fractional coefficient");
    c.push_back(q.get_num());
  }
  return IntPoly(std::move(c));
}

QPoly q_poly_from_json(const Json& j) { return QPoly(coeff_list(j)); }

Json to_json(const ThetaValue& v) {
  return {{"value", to_json(v.value)},
          {"modulus_upper", dec(v.value.mag())},
          {"n_terms", v.n_terms},
          {"precision_bits", v.precision_bits}};
}

Json to_json(const BoundCertificate& c) {
  return {{"segment", c.segment},
          {"polynomial", c.polynomial},
          {"kind", to_string(c.kind)},
          {"threshold", c.threshold.get_str()},
          {"witness_t", c.witness_t.get_str()},
          {"witness_value", number(c.witness_value)},
          {"root_free", c.root_free},
          {"pieces", c.pieces},
          {"precision_bits", c.precision_bits}};
}

Json to_json(const SigmaCertificate& c) {
  Json bounds = Json::array();
  for (const auto& b : c.bounds) bounds.push_back(to_json(b));
  return {{"segment", c.segment},
          {"thresholds",
           {{"V_lower", c.v_lower.get_str()},
            {"V1_upper", c.v1_upper.get_str()},
            {"Vk_upper", c.vk_upper.get_str()},
            {"Wj_upper", c.wj_upper.get_str()}}},
          {"bounds", bounds},
          {"a0", to_json(c.a0)},
          {"b0", to_json(c.b0)},
          {"sigma_lower", dec(c.sigma_lower)},
          {"valid", c.valid}};
}

Json to_json(const SegmentRowOutcome& r) {
  Json out = {{"segment", r.segment}, {"valid", r.certificate.has_value() && r.certificate->valid}};
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (!r.failure.empty()) out["failure"] = r.failure;
  return out;
}

Json to_json(const RectQ& r) {
  return {{"re_lo", r.re_lo.get_str()}, {"re_hi", r.re_hi.get_str()}, {"im_lo", r.im_lo.get_str()},
          {"im_hi", r.im_hi.get_str()}};
}

Json to_json(const RoucheResult& r) {
  return {{"count", r.count}, {"winding", r.winding}, {"arcs", r.arcs}};
}

Json to_json(const ConjugationCheck& c) {
  return {{"real_coefficients", c.real_coefficients},
          {"mirrored_segments_agree", c.mirrored_segments_agree},
          {"valid", c.ok()}};
}

Json to_json(const CheckedInequality& c) {
  return {{"name", c.name}, {"claim", c.claim}, {"value", to_json(c.value)}, {"pass", c.pass}};
}

Json to_json(const PropositionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"b_tail", to_json(r.b_tail)},
          {"g0", to_json(r.g0)},
          {"sin_threshold", to_json(r.sin_threshold)},
          {"cos_threshold", to_json(r.cos_threshold)},
          {"cos4_threshold", to_json(r.cos4_threshold)},
          {"checks", checks},
          {"valid", r.pass}};
}

Json to_json(const CircleCertificate& c) {
  return {{"radius", dec(c.radius)},
          {"min_lower_bound", dec(c.min_lower_bound)},
          {"min_sampled", dec(c.min_sampled)},
          {"arcs", c.arcs},
          {"valid", c.nonvanishing}};
}

Json to_json(const DominanceCertificate& c) {
  return {{"name", c.name},
          {"q_max", dec(c.q_max)},
          {"x_max", dec(c.x_max)},
          {"first_term", to_json(c.first_term)},
          {"rest", to_json(c.rest)},
          {"margin", dec(c.margin)},
          {"valid", c.certified}};
}

Json to_json(const TransversalityCertificate& c) {
  Json pts = Json::array();
  for (const auto& e : c.endpoints)
    pts.push_back({{"x", dec(e.x)},
                   {"y", to_json(e.y)},
                   {"chi", to_json(e.chi)},
                   {"margin", dec(e.margin)},
                   {"valid", e.certified}});
  return {{"q_abs", dec(c.q_abs)}, {"points", pts}, {"justification", c.justification}, {"valid", c.certified}};
}

Json to_json(const ReferenceConstant& c) {
  Json out = {{"name", c.name}, {"description", c.description}};
  if (c.value) out["value"] = *c.value;
  if (c.lo) out["lo"] = *c.lo;
  if (c.hi) out["hi"] = *c.hi;
  out["tolerance"] = c.tolerance;
  return out;
}

Json to_json(const SpectralPoint& p) {
  Json out;
  if (p.index_label) out["index"] = *p.index_label;
  out["q"] = to_json(p.q_star);
  out["x"] = to_json(p.x_star);
  out["residual_theta"] = number(p.residual_theta);
  out["residual_theta_x"] = number(p.residual_theta_x);
  out["theta_xx_modulus"] = number(p.theta_xx_modulus);
  out["iterations"] = p.iterations;
  return out;
}

Json to_json(const ZeroTrack& t) {
  Json samples = Json::array();
  for (const auto& s : t.samples)
    samples.push_back({{"q", to_json(s.q)}, {"xi", to_json(s.xi)}, {"residual", number(s.residual)}});
  Json coeffs = Json::array();
  for (const auto& c : t.laurent_coeffs) coeffs.push_back(to_json(c));
  return {{"j", t.j}, {"samples", samples}, {"laurent_coeffs", coeffs}};
}

Json to_json(const ReciprocalSum& r) {
  return {{"partial_sum", to_json(r.partial_sum)},
          {"residual", number(r.residual)},
          {"tail_bound", number(r.tail_bound)}};
}

Json to_json(const OmegaResult& r) {
  return {{"count", r.count},
          {"unique", r.unique},
          {"G", number(r.G)},
          {"separation_ok", r.separation_ok},
          {"samples", r.samples},
          {"min_modulus", number(r.min_modulus)}};
}

Json to_json(const RhoTrend& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j = {{"a", number(row.a)}, {"j0", row.j0}};
    if (!row.first_failure.empty()) j["first_failure"] = row.first_failure;
    rows.push_back(j);
  }
  return {{"j_max", r.j_max}, {"rows", rows}, {"note", r.note}};
}

}  // namespace thetaspec
