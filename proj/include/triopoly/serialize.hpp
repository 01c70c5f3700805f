#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "triopoly/bounds.hpp"
#include "triopoly/certificate.hpp"
#include "triopoly/dynamics.hpp"
#include "triopoly/horseshoe.hpp"
#include "triopoly/search.hpp"
#include "triopoly/symbolic.hpp"

namespace triopoly {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest-safe round-trip text: 17 significant digits.
std::string fmt(double v);

/// "c1,c2,c3,alpha"
Params parse_params(const std::string& text);
/// "xl,xr,yl,yr,zl,zr"; Box invariants are enforced.
Box parse_box(const std::string& text);
/// Comma-separated list of doubles.
std::vector<double> parse_doubles(const std::string& text, std::size_t expected);

json to_json(const Params& p);
json to_json(const Box& b);
json to_json(const State& s);
json to_json(const Interval& iv);
json to_json(const IntervalBox& ib);
json to_json(const ConditionRecord& r);
json to_json(const Certificate& c);
json to_json(const BoundReport& r);
json to_json(const StretchReport& r);
json to_json(const PeriodicOrbitResult& r);
json to_json(const StabilityReport& r);
json to_json(const LyapunovResult& r);
json to_json(const LogisticReport& r);
/// One JSON-lines record per found box, then a summary record.
std::vector<json> search_lines(const SearchResult& r);

/// Every document gets the schema version and a type tag.
json document(const std::string& type, json body);

void write_k_covers_csv(std::ostream& os, const KSetEnclosure& k0, const KSetEnclosure& k1);
void write_orbit_csv(std::ostream& os, const OrbitRecord& o);
void write_words_csv(std::ostream& os, const std::vector<WordTable>& tables);
void write_bifurcation_csv(std::ostream& os, const std::vector<BifurcationRow>& rows);

}  // namespace triopoly
