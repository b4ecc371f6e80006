#pragma once

// Machine-readable forms of every certificate and report. Big integers are
// decimal strings and rationals are "num/den" strings; JSON object keys keep
// insertion order so output is byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "mdg/embedding.hpp"
#include "mdg/generators.hpp"
#include "mdg/quotient.hpp"
#include "mdg/spectral.hpp"

namespace mdg {

using Json = nlohmann::ordered_json;

Json to_json(const WeightedGeneratorSet& w);
Json to_json(const TorusPoint& u);
Json to_json(const SpectralCertificate& cert);
Json to_json(const TriangleFreenessCertificate& cert);
Json to_json(const IndependenceReport& report);
Json to_json(const EdgeDistanceReport& report);

/// Columns: t,sign,j,x,y,w
std::string to_csv(const WeightedGeneratorSet& w);
/// Columns: t,sign,j,x,y,distance,residue,pass
std::string to_csv(const std::vector<EdgeDistanceReport>& reports);

/// Parses the document produced by to_json(WeightedGeneratorSet). Params are
/// re-validated; entries are returned as read.
struct ParsedGeneratorSet {
    ModularDistanceParams params;
    std::int64_t n;
    std::vector<WeightedPoint> entries;
};
ParsedGeneratorSet parse_generator_set(const Json& doc);

Rational parse_fraction(const std::string& s);

std::string to_string(CertificationStatus s);

}  // namespace mdg
