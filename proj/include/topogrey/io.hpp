#pragma once

#include <string>

#include <json.hpp>

#include "topogrey/greygroupoid.hpp"
#include "topogrey/katetov.hpp"
#include "topogrey/structure.hpp"

namespace topogrey {

using json = nlohmann::json;

// Rationals serialize as "num/den" strings throughout.
json rat_to_json(const Rational01& r);
Rational01 rat_from_json(const json& j);

json grey_set_to_json(const GreySet& a);
GreySet grey_set_from_json(const json& j);

json grey_relation_to_json(const GreyRelation& r);
GreyRelation grey_relation_from_json(const json& j);

json metric_to_json(const FinMetricSpace& x);
/// Rejects asymmetric or otherwise invalid tables.
FinMetricSpace metric_from_json(const json& j);

json groupoid_to_json(const FinGroupoid& g);
/// Units are recovered as the idempotent endomorphisms; validated on load.
FinGroupoid groupoid_from_json(const json& j);

json norm_to_json(const FinGroupoid& g, const GreyMorphismSet& values, const std::string& groupoid_ref);
GreyMorphismSet norm_values_from_json(const FinGroupoid& g, const json& j);

json tower_to_json(const UrysohnTower& t);
UrysohnTower tower_from_json(const json& j);

json family_to_json(const DiscreteStructureFamily& m);
DiscreteStructureFamily family_from_json(const json& j);

json subgroupoid_to_json(const FinGroupoid& g, const Subgroupoid& u);
Subgroupoid subgroupoid_from_json(const FinGroupoid& g, const json& j);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace topogrey
