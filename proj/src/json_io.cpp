#include "discrim/json_io.hpp"

#include <utility>

namespace discrim {

namespace {

[[noreturn]] void bad(const std::string& what) { throw error("parse", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) bad(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

int index_from_json(const Json& j, const std::string& label) {
  if (!j.is_number_integer()) bad(label + " must be an integer index");
  long long v = j.get<long long>();
  if (v < 1) bad(label + " must be a positive (1-based) index");
  return static_cast<int>(v);
}

IndexSet index_set_from_json(const Json& j, const std::string& label) {
  if (!j.is_array()) bad(label + " must be an array of indices");
  IndexSet s;
  for (const Json& e : j) s.push_back(index_from_json(e, label));
  return s;
}

Json index_set_to_json(const IndexSet& s) {
  Json j = Json::array();
  for (int i : s) j.push_back(i);
  return j;
}

int parse_key_index(const std::string& key, const std::string& label) {
  try {
    std::size_t used = 0;
    int v = std::stoi(key, &used);
    if (used != key.size() || v < 1) bad(label + " key '" + key + "' is not a positive index");
    return v;
  } catch (const error&) {
    throw;
  } catch (...) {
    bad(label + " key '" + key + "' is not a positive index");
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON input");
  return j;
}

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (const Rat& x : v) j.push_back(format_rat(x));
  return j;
}

Vec vec_from_json(const Json& j, const std::string& label) {
  if (!j.is_array()) bad(label + " must be an array of rational strings");
  Vec v;
  v.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_string()) bad(label + " entries must be strings like \"p/q\"");
    std::optional<Rat> r = parse_rat(e.get<std::string>());
    if (!r) bad(label + " entry '" + e.get<std::string>() + "' is not a rational");
    v.push_back(*r);
  }
  return v;
}

Json arrangement_to_json(const Arrangement& A) {
  Json j = Json::object();
  j["k"] = A.k;
  j["n"] = A.n;
  Json rows = Json::array();
  for (const Vec& v : A.normals) rows.push_back(vec_to_json(v));
  j["normals"] = rows;
  return j;
}

Arrangement arrangement_from_json(const Json& j) {
  Arrangement A;
  A.k = size_field(j, "k");
  A.n = size_field(j, "n");
  const Json& rows = field(j, "normals");
  if (!rows.is_array()) bad("field 'normals' must be an array of vectors");
  for (std::size_t i = 0; i < rows.size(); ++i)
    A.normals.push_back(vec_from_json(rows[i], "normal " + std::to_string(i + 1)));
  validate_arrangement(A);
  return A;
}

Json translate_to_json(const Vec& t) {
  Json j = Json::object();
  j["t"] = vec_to_json(t);
  return j;
}

Vec translate_from_json(const Json& j) { return vec_from_json(field(j, "t"), "translate"); }

Json family_to_json(const std::vector<IndexSet>& T) {
  Json j = Json::array();
  for (const IndexSet& L : T) j.push_back(index_set_to_json(L));
  return j;
}

std::vector<IndexSet> family_from_json(const Json& j) {
  if (!j.is_array()) bad("family must be an array of index sets");
  std::vector<IndexSet> T;
  for (std::size_t i = 0; i < j.size(); ++i)
    T.push_back(index_set_from_json(j[i], "family member " + std::to_string(i + 1)));
  return T;
}

Json witness_to_json(const WitnessReport& w) {
  Json j = Json::object();
  j["T"] = family_to_json(w.T);
  j["multiplicity"] = w.multiplicity;
  j["rank"] = w.rank;
  j["simple"] = w.simple;
  j["non_very_generic"] = w.non_very_generic;
  j["sample_translate"] = vec_to_json(w.sample_translate);
  Json audit = Json::object();
  for (std::size_t i = 0; i < w.audit.size(); ++i)
    audit[std::to_string(i + 1)] = index_set_to_json(w.audit[i]);
  j["audit"] = audit;
  return j;
}

WitnessReport witness_from_json(const Json& j) {
  WitnessReport w;
  w.T = family_from_json(field(j, "T"));
  w.multiplicity = size_field(j, "multiplicity");
  w.rank = size_field(j, "rank");
  w.simple = bool_field(j, "simple");
  w.non_very_generic = bool_field(j, "non_very_generic");
  w.sample_translate = vec_from_json(field(j, "sample_translate"), "sample_translate");
  const Json& audit = field(j, "audit");
  if (!audit.is_object()) bad("field 'audit' must be an object");
  w.audit.assign(audit.size(), IndexSet());
  for (const auto& [key, val] : audit.items()) {
    int i = parse_key_index(key, "audit");
    if (static_cast<std::size_t>(i) > w.audit.size()) bad("audit key '" + key + "' out of range");
    w.audit[static_cast<std::size_t>(i - 1)] = index_set_from_json(val, "audit entry " + key);
  }
  return w;
}

Json vector_set_to_json(const KTVectorSet& V) {
  Json j = Json::object();
  j["i0"] = V.i0;
  Json vectors = Json::object();
  int j_index = 1;
  for (const Vec& v : V.vecs) {
    if (j_index == V.i0) ++j_index;
    vectors[std::to_string(j_index)] = vec_to_json(v);
    ++j_index;
  }
  j["vectors"] = vectors;
  return j;
}

KTVectorSet vector_set_from_json(const Json& j) {
  KTVectorSet V;
  V.i0 = index_from_json(field(j, "i0"), "i0");
  const Json& vectors = field(j, "vectors");
  if (!vectors.is_object()) bad("field 'vectors' must be an object keyed by index");
  V.r = vectors.size() + 1;
  if (static_cast<std::size_t>(V.i0) > V.r) bad("i0 exceeds the number of configuration points");
  V.vecs.assign(vectors.size(), Vec());
  std::vector<bool> seen(vectors.size(), false);
  for (const auto& [key, val] : vectors.items()) {
    int idx = parse_key_index(key, "vectors");
    if (idx == V.i0 || static_cast<std::size_t>(idx) > V.r)
      bad("vectors key '" + key + "' must name a point other than i0 within range");
    std::size_t pos = static_cast<std::size_t>(idx < V.i0 ? idx - 1 : idx - 2);
    seen[pos] = true;
    V.vecs[pos] = vec_from_json(val, "vector " + key);
  }
  for (bool s : seen)
    if (!s) bad("vectors object must cover every point other than i0 exactly once");
  return V;
}

Json configuration_to_json(const KTConfiguration& cfg) {
  Json j = Json::object();
  j["k"] = cfg.k;
  Json points = Json::array();
  for (const Vec& p : cfg.points) points.push_back(vec_to_json(p));
  j["points"] = points;
  Json edges = Json::object();
  for (std::size_t i = 1; i <= cfg.points.size(); ++i)
    for (std::size_t l = i + 1; l <= cfg.points.size(); ++l)
      edges[std::to_string(i) + "," + std::to_string(l)] =
          vec_to_json(cfg.edge(static_cast<int>(i), static_cast<int>(l)));
  j["edges"] = edges;
  return j;
}

KTConfiguration configuration_from_json(const Json& j) {
  KTConfiguration cfg;
  cfg.k = size_field(j, "k");
  const Json& points = field(j, "points");
  if (!points.is_array()) bad("field 'points' must be an array of vectors");
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec p = vec_from_json(points[i], "point " + std::to_string(i + 1));
    if (p.size() != cfg.k) bad("point " + std::to_string(i + 1) + " has wrong dimension");
    cfg.points.push_back(std::move(p));
  }
  return cfg;
}

Json build_spec_to_json(const BuildSpec& spec) {
  Json j = Json::object();
  j["k"] = spec.k;
  j["T"] = family_to_json(spec.T);
  j["m"] = spec.m;
  j["y"] = spec.y;
  j["r_prime"] = spec.r_prime;
  j["d"] = spec.d;
  Json fixed = Json::object();
  for (const auto& [q, v] : spec.free_normals) fixed[std::to_string(q)] = vec_to_json(v);
  j["free_normals"] = fixed;
  j["constrained"] = index_set_to_json(spec.constrained);
  Json constraints = Json::object();
  for (const auto& [q, pairs] : spec.constraints) {
    Json list = Json::array();
    for (const auto& [a, b] : pairs) list.push_back(Json::array({a, b}));
    constraints[std::to_string(q)] = list;
  }
  j["constraints"] = constraints;
  return j;
}

BuildSpec build_spec_from_json(const Json& j) {
  std::size_t k = size_field(j, "k");
  std::vector<IndexSet> T = family_from_json(field(j, "T"));
  std::size_t r_prime = size_field(j, "r_prime");
  const Json& fixed = field(j, "free_normals");
  if (!fixed.is_object()) bad("field 'free_normals' must be an object keyed by index");
  std::map<int, Vec> free_normals;
  for (const auto& [key, val] : fixed.items()) {
    int q = parse_key_index(key, "free_normals");
    free_normals[q] = vec_from_json(val, "free normal " + key);
  }
  return plan_build(k, T, free_normals, r_prime);
}

Json build_result_to_json(const BuildResult& result) {
  Json j = Json::object();
  j["arrangement"] = arrangement_to_json(result.arrangement);
  Json spaces = Json::object();
  for (const auto& [q, basis] : result.solution_spaces) {
    Json list = Json::array();
    for (const Vec& v : basis) list.push_back(vec_to_json(v));
    spaces[std::to_string(q)] = list;
  }
  j["solution_spaces"] = spaces;
  Json sets = Json::array();
  for (const KTVectorSet& V : result.vector_sets) sets.push_back(vector_set_to_json(V));
  j["vector_sets"] = sets;
  j["witness"] = witness_to_json(result.witness);
  return j;
}

Json scan_result_to_json(const ScanResult& result) {
  Json j = Json::object();
  Json list = Json::array();
  for (const WitnessReport& w : result.witnesses) list.push_back(witness_to_json(w));
  j["witnesses"] = list;
  j["truncated"] = result.truncated;
  j["candidates"] = result.candidates;
  j["survivors"] = result.survivors;
  return j;
}

std::string dump_json(const Json& j, bool pretty) {
  return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

}  // namespace discrim
