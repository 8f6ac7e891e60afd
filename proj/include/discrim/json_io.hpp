#pragma once

#include <json.hpp>

#include <string>

#include "discrim/builder.hpp"
#include "discrim/discriminantal.hpp"
#include "discrim/ktsets.hpp"

namespace discrim {

using Json = nlohmann::ordered_json;

// Parse a JSON document; throws error("parse", ...) on malformed text.
Json parse_json_text(const std::string& text);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& label);

Json arrangement_to_json(const Arrangement& A);
Arrangement arrangement_from_json(const Json& j);

Json translate_to_json(const Vec& t);
Vec translate_from_json(const Json& j);

Json family_to_json(const std::vector<IndexSet>& T);
std::vector<IndexSet> family_from_json(const Json& j);

Json witness_to_json(const WitnessReport& w);
WitnessReport witness_from_json(const Json& j);

Json vector_set_to_json(const KTVectorSet& V);
KTVectorSet vector_set_from_json(const Json& j);

Json configuration_to_json(const KTConfiguration& cfg);
KTConfiguration configuration_from_json(const Json& j);

Json build_spec_to_json(const BuildSpec& spec);
// Reads the input fields (k, T, free_normals, r_prime) and re-plans, so a
// hand-written spec file only needs those four keys.
BuildSpec build_spec_from_json(const Json& j);

Json build_result_to_json(const BuildResult& result);

Json scan_result_to_json(const ScanResult& result);

std::string dump_json(const Json& j, bool pretty);

}  // namespace discrim
