#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "catamaj/coherence.hpp"
#include "catamaj/majorization.hpp"
#include "catamaj/thermo.hpp"
#include "catamaj/trumping.hpp"

namespace catamaj {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "catamaj/1";

// Parses JSON text keeping every non-integer number as its source text, so
// decimals reach the rational parser without a binary round trip.
json parse_json_exact(std::string_view text);

// Scalar from a JSON string or number. Strings go through Scalar::parse.
Scalar scalar_from_json(const json& j, Backend backend);
std::vector<Scalar> scalars_from_json(const json& j, Backend backend);

// Scalars are written with Scalar::to_string: "p/q" when exact, scientific
// otherwise. Reals use the same full-precision scientific form.
json to_json(const Scalar& v);
json to_json(const Real& v);
json to_json(const EntropyValue& v);
json to_json(const DivergenceValue& v);
json to_json(const ExponentPair& e);
json to_json(const ComparisonReport& r, bool with_values = true);
json to_json(const OracleReport& r);
json to_json(const DivergenceScan& r);
json to_json(const CoherenceReport& r);
json to_json(const EmbeddingSpec& e);

// Verdict bodies without the schema envelope.
json to_json(const TrumpingVerdict& v, bool with_values = true);
json to_json(const ThermoVerdict& v, bool with_values = true);
json to_json(const CoherentVerdict& v, bool with_values = true);
json to_json(const SearchResult& r);

// Inverses of the writers above. Throw Error{ParseError} on shape mismatches.
Real real_from_json(const json& j);
ComparisonReport comparison_report_from_json(const json& j);
OracleReport oracle_report_from_json(const json& j);
TrumpingVerdict trumping_verdict_from_json(const json& j);
DivergenceScan divergence_scan_from_json(const json& j);
ThermoVerdict thermo_verdict_from_json(const json& j);

// Field-by-field identity: scalars must match in representation, reals bitwise.
bool identical(const TrumpingVerdict& a, const TrumpingVerdict& b);
bool identical(const ThermoVerdict& a, const ThermoVerdict& b);

}  // namespace catamaj
