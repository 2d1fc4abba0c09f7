#pragma once

#include "bloch/bounds.hpp"

#include "json.hpp"

namespace bloch {

// Everything downstream of the input graph that more than one subcommand
// needs: quotient graph, dispersion polynomial, Newton polytope.
struct Pipeline {
  PeriodicGraph g;
  QuotientGraph q;
  LaurentPoly phi;
  NewtonPolytope poly;
  explicit Pipeline(PeriodicGraph gg);
};

// Int values that fit in 64 bits become JSON numbers, larger ones strings.
nlohmann::ordered_json json_int(const Int& v);

nlohmann::ordered_json dispersion_json(const Pipeline& pl);
nlohmann::ordered_json polytope_json(const Pipeline& pl);
nlohmann::ordered_json faces_json(const Pipeline& pl, const BoundsReport& rep);
nlohmann::ordered_json bounds_json(const BoundsReport& rep);
nlohmann::ordered_json corners_json(const Pipeline& pl, const std::map<std::string, Rat>& params);

// The full report in fixed field order. Deterministic for a fixed seed.
nlohmann::ordered_json build_report(const Pipeline& pl, unsigned long long seed, int draws,
                                    bool refine);

// DOT rendering of the initial graph of one face.
std::string face_initial_dot(const Pipeline& pl, int face_id);

// Subset of JSON Schema sufficient for the report schema: type, required,
// properties, items, enum, additionalProperties. Returns human-readable
// violations, empty when the document conforms.
std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc);

}  // namespace bloch
