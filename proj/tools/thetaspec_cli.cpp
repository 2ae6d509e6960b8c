#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <thetaspec/error.hpp>
#include <thetaspec/report.hpp>
#include <thetaspec/serialize.hpp>

#include "cli_support.hpp"

using namespace thetaspec;
using thetaspec::cli::OutputFormat;
using thetaspec::cli::RunConfig;

namespace {

struct EvalArgs {
  std::string q, x;
  int dx = 0, dq = 0;
};

struct CertifyArgs {
  std::string suite = "all";
  std::string tables = "reference";
  std::string threshold_scale = "1";
  std::vector<std::string> only;
};

struct SpectrumArgs {
  std::string scan = "positive";
  int max = 20;
};

struct TrackArgs {
  int j = 1;
  std::string from, to;
  int steps = 0;
  bool around = false;
};

struct LaurentArgs {
  int j = 1;
  int coeffs = 8;
  double radius = 0.05;
  int samples = 128;
};

struct ReproduceArgs {
  std::string tables = "reference";
  int spectral_points = 5;
};

std::string dec(long double v) { return to_decimal(v, 21); }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.output_path, std::ios::binary);
  if (!os) raise(ErrorKind::DomainError, "cannot write " + cfg.output_path);
  os << text;
}

void emit_json(const RunConfig& cfg, const std::string& kind, const Json& body) {
  emit(cfg, envelope(kind, body).dump(2) + "\n");
}

TableSource table_source(const std::string& s) { return s == "derived" ? TableSource::derived : TableSource::reference; }

// ------------------------------------------------------------ eval

int run_eval(const RunConfig& cfg, const EvalArgs& a) {
  const cplx q = cli::parse_complex(a.q), x = cli::parse_complex(a.x);
  if (!(std::abs(q) < 1)) raise(ErrorKind::DomainError, "--q must satisfy |q| < 1");
  const BallComplex qb(Complex<long double>(q.real(), q.imag()));
  const BallComplex xb(Complex<long double>(x.real(), x.imag()));
  ThetaValue v = theta_partial_eval_detailed(qb, xb, a.dx, a.dq, cfg.tolerance, cfg.precision_bits);
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    os << "re,im,radius,n_terms,precision_bits\n"
       << dec(v.value.c.re) << ',' << dec(v.value.c.im) << ',' << dec(v.value.r) << ',' << v.n_terms << ','
       << v.precision_bits << '\n';
    emit(cfg, os.str());
  } else {
    Json body = {{"q", to_json(q)}, {"x", to_json(x)}, {"dx", a.dx}, {"dq", a.dq},
                 {"tol", static_cast<double>(cfg.tolerance)}};
    body["result"] = to_json(v);
    emit_json(cfg, "theta_value", body);
  }
  return cli::kSuccess;
}

// ------------------------------------------------------------ certify

int run_certify(const RunConfig& cfg, const CertifyArgs& a) {
  const bool all = a.suite == "all";
  Json body = {{"suite", a.suite}};
  std::vector<std::string> failed;
  std::vector<std::pair<std::string, bool>> summary;

  if (all || a.suite == "segments") {
    SegmentSuiteOptions opts;
    opts.tables = table_source(a.tables);
    opts.threshold_scale = a.threshold_scale;
    opts.parallelism = cfg.parallelism;
    opts.only = a.only;
    auto rows = run_segment_suite(opts);
    Json seg = Json::array();
    for (const auto& r : rows) {
      seg.push_back(to_json(r));
      const bool ok = r.certificate && r.certificate->valid;
      summary.push_back({"segment " + r.segment, ok});
      if (!ok) failed.push_back("segment " + r.segment + (r.failure.empty() ? "" : ": " + r.failure));
    }
    ConjugationCheck conj = conjugation_symmetry_check();
    summary.push_back({"conjugation", conj.ok()});
    if (!conj.ok()) failed.push_back("conjugation symmetry");
    body["tables"] = a.tables;
    body["threshold_scale"] = a.threshold_scale;
    body["segments"] = seg;
    body["conjugation"] = to_json(conj);
  }
  if (all || a.suite == "disk") {
    Json disk = Json::array();
    for (const auto& d : run_disk_suite()) {
      disk.push_back(to_json(d));
      summary.push_back({"rouche " + d.name, d.valid()});
      if (!d.valid()) failed.push_back("rouche " + d.name + ": count " + std::to_string(d.result.count));
    }
    body["disk"] = disk;
  }
  if (all || a.suite == "lemmas") {
    LemmaSuite s = run_lemma_suite();
    summary.push_back({"lemma theta_xx", s.theta_xx.certified});
    summary.push_back({"lemma thetaq_thetax", s.thetaq_thetax.certified});
    summary.push_back({"lemma transversality", s.transversality.certified});
    if (!s.valid()) failed.push_back("lemmas");
    body["lemmas"] = to_json(s);
  }
  if (all || a.suite == "proposition") {
    PropositionReport p = verify_proposition_constants();
    summary.push_back({"proposition", p.pass});
    if (!p.pass) failed.push_back("proposition constants");
    body["proposition"] = to_json(p);
  }
  body["valid"] = failed.empty();

  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    os << "certificate,valid\n";
    for (const auto& [name, ok] : summary) os << name << ',' << (ok ? "true" : "false") << '\n';
    emit(cfg, os.str());
  } else {
    emit_json(cfg, "certificate_suite", body);
  }
  for (const auto& f : failed) std::cerr << "FAILED " << f << '\n';
  return failed.empty() ? cli::kSuccess : cli::kVerificationFailed;
}

// ------------------------------------------------------------ spectrum

int run_spectrum(const RunConfig& cfg, const SpectrumArgs& a) {
  if (a.max < 0) raise(ErrorKind::DomainError, "--max must be >= 0");
  const bool negative = a.scan == "negative";
  std::vector<SpectralPoint> pts;
  if (a.max > 0)
    pts = negative ? negative_spectrum_scan(a.max, cfg.tolerance) : real_spectrum_scan(a.max, cfg.tolerance);
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    write_spectrum_csv(os, pts);
    emit(cfg, os.str());
    return cli::kSuccess;
  }
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  Json body = {{"scan", a.scan}, {"max", a.max}, {"tol", static_cast<double>(cfg.tolerance)}, {"points", arr}};
  if (negative)
    body["note"] =
        "q values are negative and |q_bar_k| is reported against 1 - pi/(8k); the points form two interleaved "
        "families (x < 0 and x > 0), the printed law has no sign and is not certified";
  emit_json(cfg, "spectrum", body);
  return cli::kSuccess;
}

// ------------------------------------------------------------ track / laurent

int run_track(const RunConfig& cfg, const TrackArgs& a) {
  const cplx to = cli::parse_complex(a.to);
  const long double r = std::abs(to);
  if (!(r > 0 && r < 1)) raise(ErrorKind::DomainError, "--to must satisfy 0 < |q| < 1");
  const cplx from = a.from.empty() ? std::min(r, 0.04L) * to / r : cli::parse_complex(a.from);
  const int steps =
      a.steps > 0 ? a.steps : std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / 0.01L)));
  std::vector<cplx> path = linear_path(from, to, steps);
  if (a.around) {
    const long double t0 = std::arg(to);
    auto arc = arc_path(r, t0, t0 + 2 * std::numbers::pi_v<long double>, std::max(256, 8 * a.j));
    path.insert(path.end(), arc.begin() + 1, arc.end());
  }
  ZeroTrack t = track_zero(a.j, path, cfg.tolerance);
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    os << "q_re,q_im,xi_re,xi_im,residual\n";
    for (const auto& s : t.samples)
      os << dec(s.q.real()) << ',' << dec(s.q.imag()) << ',' << dec(s.xi.real()) << ',' << dec(s.xi.imag()) << ','
         << dec(s.residual) << '\n';
    emit(cfg, os.str());
  } else {
    emit_json(cfg, "zero_track", to_json(t));
  }
  return cli::kSuccess;
}

int run_laurent(const RunConfig& cfg, const LaurentArgs& a) {
  ZeroTrack t;
  t.j = a.j;
  t.laurent_coeffs = laurent_coefficients(a.j, a.coeffs, a.radius, a.samples);
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    os << "power,re,im\n";
    for (size_t n = 0; n < t.laurent_coeffs.size(); ++n)
      os << static_cast<int>(n) - a.j << ',' << dec(t.laurent_coeffs[n].real()) << ','
         << dec(t.laurent_coeffs[n].imag()) << '\n';
    emit(cfg, os.str());
  } else {
    Json body = to_json(t);
    body["fit_radius"] = dec(a.radius);
    body["n_samples"] = a.samples;
    emit_json(cfg, "zero_track", body);
  }
  return cli::kSuccess;
}

// ------------------------------------------------------------ reproduce

int run_reproduce(const RunConfig& cfg, const ReproduceArgs& a) {
  ReproduceOptions opts;
  opts.segments.tables = table_source(a.tables);
  opts.segments.parallelism = cfg.parallelism;
  opts.spectral_points = a.spectral_points;
  ReproductionReport r = reproduce(opts);
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    os << "name,computed,reference,abs_diff,pass\n";
    for (const auto& c : r.constants) {
      const std::string ref =
          c.reference.is_range() ? "[" + *c.reference.lo + " " + *c.reference.hi + ")" : *c.reference.value;
      os << c.name << ',' << dec(c.computed) << ',' << ref << ',' << dec(c.abs_diff) << ','
         << (c.pass ? "true" : "false") << '\n';
    }
    emit(cfg, os.str());
  } else {
    Json body = to_json(r);
    body["tables"] = a.tables;
    emit_json(cfg, "reproduction_report", body);
  }
  for (const auto& m : r.mismatches) std::cerr << "MISMATCH " << m << '\n';
  return r.pass ? cli::kSuccess : cli::kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial theta function: evaluation, certificates and spectrum"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<double> tol;
  std::string format = "json";
  app.add_option("--tol", tol, "Tolerance (command-specific default)");
  app.add_option("--precision-bits", cfg.precision_bits, "Starting precision; THETA_SPECTRUM_PRECISION overrides")
      ->capture_default_str();
  app.add_option("--parallelism", cfg.parallelism, "Worker threads")->capture_default_str();
  app.add_option("--out", cfg.output_path, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate theta or a partial derivative as a ball");
  eval->add_option("--q", ea.q, "q as a complex literal")->required();
  eval->add_option("--x", ea.x, "x as a complex literal")->required();
  eval->add_option("--dx", ea.dx, "Order in x")->capture_default_str();
  eval->add_option("--dq", ea.dq, "Order in q")->capture_default_str();

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Run certificate suites");
  certify->add_option("--suite", ca.suite)
      ->check(CLI::IsMember({"all", "segments", "disk", "lemmas", "proposition"}))
      ->capture_default_str();
  certify->add_option("--tables", ca.tables, "Segment thresholds: reference (constants.json) or derived")
      ->check(CLI::IsMember({"reference", "derived"}))
      ->capture_default_str();
  certify->add_option("--threshold-scale", ca.threshold_scale, "Strengthen every claim by this factor")
      ->capture_default_str();
  certify->add_option("--only", ca.only, "Restrict to these segments");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Scan spectral values");
  spectrum->add_option("--scan", sa.scan)->check(CLI::IsMember({"positive", "negative"}))->capture_default_str();
  spectrum->add_option("--max", sa.max, "Number of spectral values")->capture_default_str();

  TrackArgs ta;
  auto* track = app.add_subcommand("track", "Continue the zero xi_j along a path in q");
  track->add_option("--j", ta.j, "Branch index")->capture_default_str();
  track->add_option("--to", ta.to, "End point")->required();
  track->add_option("--from", ta.from, "Start point, |q| <= 0.05 (default 0.04 on the ray to --to)");
  track->add_option("--steps", ta.steps, "Path points (default about 0.01 apart)");
  track->add_flag("--around", ta.around, "Then go once around |q| = |to|");

  LaurentArgs la;
  auto* laurent = app.add_subcommand("laurent", "Laurent coefficients of xi_j at q = 0");
  laurent->add_option("--j", la.j, "Branch index")->capture_default_str();
  laurent->add_option("--coeffs", la.coeffs, "Number of coefficients")->capture_default_str();
  laurent->add_option("--radius", la.radius, "Fit radius")->capture_default_str();
  laurent->add_option("--samples", la.samples, "Samples on the fit circle")->capture_default_str();

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce", "Recompute every reference constant and certificate");
  repro->add_option("--tables", ra.tables, "Segment thresholds: reference (constants.json) or derived")
      ->check(CLI::IsMember({"reference", "derived"}))->capture_default_str();
  repro->add_option("--spectral-points", ra.spectral_points)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  try {
    cfg.precision_bits = cli::resolve_precision(cfg.precision_bits, std::getenv("THETA_SPECTRUM_PRECISION"));
    cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    if (eval->parsed()) {
      cfg.command = "eval";
      cfg.tolerance = tol ? *tol : 1e-15L;
    } else if (spectrum->parsed()) {
      cfg.command = "spectrum";
      cfg.tolerance = tol ? *tol : 1e-9L;
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
      cfg.tolerance = tol ? *tol : 1e-12L;
    }
    cli::validate(cfg);

    if (eval->parsed()) return run_eval(cfg, ea);
    if (certify->parsed()) return run_certify(cfg, ca);
    if (spectrum->parsed()) return run_spectrum(cfg, sa);
    if (track->parsed()) return run_track(cfg, ta);
    if (laurent->parsed()) return run_laurent(cfg, la);
    return run_reproduce(cfg, ra);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kVerificationFailed;
  }
}
