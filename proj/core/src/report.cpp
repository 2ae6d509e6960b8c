#include "thetaspec/report.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "thetaspec/error.hpp"
#include "thetaspec/sparse_poly.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

namespace {

std::string dec(long double v) { return to_decimal(v, 21); }

ConstantRow point_row(const std::string& name, long double v) {
  ConstantRow r;
  r.name = name;
  r.computed = r.lo = r.hi = v;
  r.reference = reference_constant(name);
  r.abs_diff = std::fabs(v - reference_value(name));
  r.pass = r.reference.accepts(v);
  return r;
}

ConstantRow range_row(const std::string& name, const IntervalReal& v) {
  ConstantRow r;
  r.name = name;
  r.computed = v.mid();
  r.lo = v.lo();
  r.hi = v.hi();
  r.reference = reference_constant(name);
  r.pass = r.reference.accepts(v.lo()) && r.reference.accepts(v.hi());
  return r;
}

}  // namespace

std::vector<ConstantRow> constants_table() {
  std::map<std::string, std::function<ConstantRow()>> make;
  make["c0"] = [] { return point_row("c0", solve_c0(1e-15L)); };
  make["c1"] = [] { return point_row("c1", solve_c1(1e-15L)); };
  SpectralPoint first;
  bool solved = false;
  auto spectral = [&]() -> const SpectralPoint& {
    if (!solved) {
      auto [q0, x0] = truncation_seed();
      first = find_double_zero(cplx(q0, 0), cplx(x0, 0), 1e-15L);
      solved = true;
    }
    return first;
  };
  make["q_tilde_1"] = [&] { return point_row("q_tilde_1", spectral().q_star.real()); };
  make["y_tilde_1"] = [&] { return point_row("y_tilde_1", spectral().x_star.real()); };
  make["lambda0"] = [] { return point_row("lambda0", truncation_double_root()); };
  make["gamma"] = [] { return point_row("gamma", gamma_radius()); };
  make["lambda"] = [] { return point_row("lambda", lambda_radius()); };
  const PerturbationRadii radii = perturbation_radii();
  make["a0"] = [&] { return range_row("a0", radii.a0); };
  make["b0"] = [&] { return range_row("b0", radii.b0); };
  const PropositionReport prop = verify_proposition_constants();
  make["b_tail"] = [&] { return point_row("b_tail", prop.b_tail.mid()); };
  make["g0"] = [&] { return point_row("g0", prop.g0.mid()); };
  make["sin_threshold"] = [&] { return point_row("sin_threshold", prop.sin_threshold.mid()); };
  make["cos_threshold"] = [&] { return point_row("cos_threshold", prop.cos_threshold.mid()); };
  make["cos4_threshold"] = [&] { return point_row("cos4_threshold", prop.cos4_threshold.mid()); };

  std::vector<ConstantRow> out;
  for (const auto& ref : reference_constants()) {
    auto it = make.find(ref.name);
    if (it != make.end()) out.push_back(it->second());
  }
  return out;
}

std::vector<DiskCount> run_disk_suite() {
  const IntPoly V = truncation_resultant();
  const mpq_class third(1, 3);
  std::vector<DiskCount> out(2);
  out[0].name = "K";
  out[0].region = {-third, third, -third, third};
  out[0].expected = 2;
  out[1].name = "K_left";
  out[1].region = {-third, mpq_class(29, 100), -third, third};
  out[1].expected = 0;
  for (auto& d : out) {
    try {
      d.result = rouche_zero_count_detailed(d.region, V);
    } catch (const Error& e) {
      d.failure = e.what();
    }
  }
  return out;
}

LemmaSuite run_lemma_suite() {
  const long double lam = lambda_radius();
  LemmaSuite s;
  s.theta_xx = theta_xx_nonvanishing(0.31L, lam);
  s.thetaq_thetax = no_common_zero_thetaq_thetax(0.31L, lam);
  s.transversality = transversality_check(0.31L, 5.946L, lam);
  return s;
}

ReproductionReport reproduce(const ReproduceOptions& opts) {
  ReproductionReport r;
  r.constants = constants_table();
  for (const auto& c : r.constants)
    if (!c.pass) r.mismatches.push_back("constant " + c.name + " = " + dec(c.computed));

  r.segments = run_segment_suite(opts.segments);
  for (const auto& s : r.segments)
    if (!(s.certificate && s.certificate->valid))
      r.mismatches.push_back("segment " + s.segment + (s.failure.empty() ? "" : ": " + s.failure));

  r.conjugation = conjugation_symmetry_check();
  if (!r.conjugation.ok()) r.mismatches.push_back("conjugation symmetry");

  r.disk = run_disk_suite();
  for (const auto& d : r.disk)
    if (!d.valid())
      r.mismatches.push_back("rouche " + d.name + ": count " + std::to_string(d.result.count) + ", expected " +
                             std::to_string(d.expected) + (d.failure.empty() ? "" : " (" + d.failure + ")"));

  r.lemmas = run_lemma_suite();
  if (!r.lemmas.theta_xx.certified) r.mismatches.push_back("lemma " + r.lemmas.theta_xx.name);
  if (!r.lemmas.thetaq_thetax.certified) r.mismatches.push_back("lemma " + r.lemmas.thetaq_thetax.name);
  if (!r.lemmas.transversality.certified) r.mismatches.push_back("lemma transversality");

  r.proposition = verify_proposition_constants();
  for (const auto& c : r.proposition.checks)
    if (!c.pass) r.mismatches.push_back("proposition " + c.name);

  if (opts.spectral_points > 0) r.spectral_points = real_spectrum_scan(opts.spectral_points);
  r.pass = r.mismatches.empty();
  return r;
}

Json to_json(const ConstantRow& r) {
  Json out = {{"name", r.name}, {"computed", dec(r.computed)}};
  if (r.reference.is_range()) {
    out["enclosure"] = {{"lo", dec(r.lo)}, {"hi", dec(r.hi)}};
    out["reference"] = {{"lo", *r.reference.lo}, {"hi", *r.reference.hi}};
  } else {
    out["reference"] = *r.reference.value;
    out["abs_diff"] = dec(r.abs_diff);
    out["tolerance"] = r.reference.tolerance;
  }
  out["pass"] = r.pass;
  return out;
}

Json to_json(const DiskCount& d) {
  Json out = {{"name", d.name}, {"region", to_json(d.region)}, {"expected", d.expected},
              {"result", to_json(d.result)}, {"valid", d.valid()}};
  if (!d.failure.empty()) out["failure"] = d.failure;
  return out;
}

Json to_json(const LemmaSuite& s) {
  return {{"theta_xx", to_json(s.theta_xx)},
          {"thetaq_thetax", to_json(s.thetaq_thetax)},
          {"transversality", to_json(s.transversality)},
          {"valid", s.valid()}};
}

Json to_json(const ReproductionReport& r) {
  Json constants = Json::array();
  for (const auto& c : r.constants) constants.push_back(to_json(c));
  Json segments = Json::array();
  for (const auto& s : r.segments) segments.push_back(to_json(s));
  Json disk = Json::array();
  for (const auto& d : r.disk) disk.push_back(to_json(d));
  Json points = Json::array();
  for (const auto& p : r.spectral_points) points.push_back(to_json(p));
  return {{"constants_table", constants},
          {"certificates",
           {{"segments", segments},
            {"conjugation", to_json(r.conjugation)},
            {"disk", disk},
            {"lemmas", to_json(r.lemmas)},
            {"proposition", to_json(r.proposition)}}},
          {"spectral_points", points},
          {"mismatches", r.mismatches},
          {"pass", r.pass}};
}

}  // namespace thetaspec
