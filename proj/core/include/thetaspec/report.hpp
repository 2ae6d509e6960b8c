#pragma once

#include <string>
#include <vector>

#include "thetaspec/certify.hpp"
#include "thetaspec/constants.hpp"
#include "thetaspec/serialize.hpp"
#include "thetaspec/spectrum.hpp"

namespace thetaspec {

// One computed constant next to its manifest entry.
struct ConstantRow {
  std::string name;
  long double computed = 0;
  // Enclosure for range constants; lo == hi == computed otherwise.
  long double lo = 0;
  long double hi = 0;
  ReferenceConstant reference;
  long double abs_diff = 0;  // 0 for range constants
  bool pass = false;
};

// c0, c1, q_tilde_1, y_tilde_1, lambda0, gamma, lambda, a0, b0 and the
// proposition constants, in manifest order.
std::vector<ConstantRow> constants_table();

struct DiskCount {
  std::string name;
  RectQ region;
  int expected = 0;
  RoucheResult result;
  std::string failure;
  bool valid() const { return failure.empty() && result.count == expected; }
};

// Zeros of V in K = [-1/3, 1/3]^2 (two) and in [-1/3, 0.29] x [-1/3, 1/3] (none).
std::vector<DiskCount> run_disk_suite();

struct LemmaSuite {
  DominanceCertificate theta_xx;
  DominanceCertificate thetaq_thetax;
  TransversalityCertificate transversality;
  bool valid() const { return theta_xx.certified && thetaq_thetax.certified && transversality.certified; }
};

// The three certificates at |q| <= 0.31, |x| <= lambda.
LemmaSuite run_lemma_suite();

struct ReproductionReport {
  std::vector<ConstantRow> constants;
  std::vector<SegmentRowOutcome> segments;
  ConjugationCheck conjugation;
  std::vector<DiskCount> disk;
  LemmaSuite lemmas;
  PropositionReport proposition;
  std::vector<SpectralPoint> spectral_points;
  std::vector<std::string> mismatches;
  bool pass = false;
};

struct ReproduceOptions {
  SegmentSuiteOptions segments;
  int spectral_points = 5;  // leading real spectral values to include
};

ReproductionReport reproduce(const ReproduceOptions& opts = {});

Json to_json(const ConstantRow& r);
Json to_json(const DiskCount& d);
Json to_json(const LemmaSuite& s);
Json to_json(const ReproductionReport& r);

}  // namespace thetaspec
