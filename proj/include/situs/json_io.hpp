#ifndef SITUS_JSON_IO_HPP
#define SITUS_JSON_IO_HPP

#include <json.hpp>

#include "situs/analysis.hpp"
#include "situs/model.hpp"
#include "situs/situs.hpp"

namespace situs {

using nlohmann::json;

json filter_to_json(const GradedFilter& f, const std::vector<std::string>& labels);
GradedFilter filter_from_json(const json& j, const std::vector<std::string>& labels);
// Standalone form, carrying its own carrier labels.
std::pair<std::vector<std::string>, GradedFilter> filter_with_carrier_from_json(const json& j);

json sset_to_json(const TruncatedSSet& x);
TruncatedSSet sset_from_json(const json& j);

// Parsing checks structural integrity (action totality and functoriality,
// label resolution, grade shapes); the semantic situs invariant is a verdict,
// checked on demand so that horizon-limited artifacts round-trip.
json situs_to_json(const Situs& s);
Situs situs_from_json(const json& j, bool validate = false);

json top_to_json(const FiniteTopSpace& t);
FiniteTopSpace top_from_json(const json& j);

json metric_to_json(const FiniteMetricSpace& m);
FiniteMetricSpace metric_from_json(const json& j);

json structure_to_json(const FiniteStructure& m);
FiniteStructure structure_from_json(const json& j);

// {"maps": {"1": {"a": "x", ...}, ...}}; labels resolved against endpoints.
json morphism_to_json(const SitusMap& f, const Situs& src, const Situs& dst);
SitusMap morphism_from_json(const json& j, const Situs& src, const Situs& dst);

// Self-contained morphism file: {"source": situs, "target": situs, "maps": ...}
struct MorphismFile {
    Situs source, target;
    SitusMap map;
};
json morphism_file_to_json(const MorphismFile& m);
MorphismFile morphism_file_from_json(const json& j);

} // namespace situs

#endif
