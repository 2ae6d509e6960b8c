#pragma once

#include <json.hpp>

#include <string>

#include "thetaspec/certify.hpp"
#include "thetaspec/constants.hpp"
#include "thetaspec/spectrum.hpp"
#include "thetaspec/theta.hpp"

namespace thetaspec {

// Keys keep insertion order so equal inputs give byte-identical output.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// {"schema_version": 1, "kind": kind, <body members>}.
Json envelope(const std::string& kind, const Json& body);

// Exact rationals as "p/q" strings; long doubles as 21-digit decimal strings
// where precision matters, JSON numbers for diagnostics.
Json to_json(const IntervalReal& v);
Json to_json(const BallComplex& v);
Json to_json(const cplx& z);

// {"var": name, "coeffs": [...]} with coefficients in increasing degree.
Json to_json(const IntPoly& p, const std::string& var = "q");
Json to_json(const QPoly& p, const std::string& var = "t");
IntPoly int_poly_from_json(const Json& j);
QPoly q_poly_from_json(const Json& j);

Json to_json(const ThetaValue& v);
Json to_json(const BoundCertificate& c);
Json to_json(const SigmaCertificate& c);
Json to_json(const SegmentRowOutcome& r);
Json to_json(const RoucheResult& r);
Json to_json(const RectQ& r);
Json to_json(const ConjugationCheck& c);
Json to_json(const CheckedInequality& c);
Json to_json(const PropositionReport& r);
Json to_json(const CircleCertificate& c);
Json to_json(const DominanceCertificate& c);
Json to_json(const TransversalityCertificate& c);
Json to_json(const ReferenceConstant& c);

Json to_json(const SpectralPoint& p);
Json to_json(const ZeroTrack& t);
Json to_json(const ReciprocalSum& r);
Json to_json(const OmegaResult& r);
Json to_json(const RhoTrend& r);

}  // namespace thetaspec
