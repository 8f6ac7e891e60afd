// discrim: exact-arithmetic toolkit for discriminantal arrangements.
//
// Subcommands: check-generic, dl-normal, rank, simple, witness, scan,
// kt-solve, weak-rank, build, example.  All reports are JSON; --pretty adds
// indentation and (for `example`) a human-readable transcript.  Exit codes:
// 0 found/ok, 1 negative result, 2 input error, 3 undecided.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "discrim/json_io.hpp"

namespace {

using namespace discrim;

int exit_code_for(const error& e) {
  const std::string& k = e.kind;
  if (k == "undecided" || k == "no generic point found") return 3;
  if (k == "no construction needed" || k == "over-constrained" ||
      k == "degenerate choice" || k == "constraint violated" ||
      k == "not a K_T translate")
    return 1;
  return 2;  // parse / shape / arity / input / rset / not generic / ...
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("input", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  unsigned budget = 32;
  unsigned workers = 0;
  bool pretty = false;

  RunConfig run_config() const {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.sample_budget = budget;
    cfg.worker_count = workers;
    return cfg;
  }
};

void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
  auto* in = cmd->add_option("--input,-i", c.input, "input JSON file ('-' for stdin)");
  if (needs_input) in->required();
  cmd->add_option("--output,-o", c.output, "write the JSON report here instead of stdout");
  cmd->add_option("--seed", c.seed, "master random seed (fallback: env DISCRIM_SEED, then 0)");
  cmd->add_option("--budget", c.budget, "sampling retry budget")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "worker threads for parallel kernels (0 = default)");
  cmd->add_flag("--pretty", c.pretty, "indent JSON output");
}

void apply_env_seed(const CLI::App* cmd, Common& c) {
  if (cmd->count("--seed") > 0) return;
  if (const char* env = std::getenv("DISCRIM_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (...) {
      throw error("input", "DISCRIM_SEED is not an unsigned integer");
    }
  }
#ifdef _OPENMP
  if (c.workers > 0) omp_set_num_threads(static_cast<int>(c.workers));
#endif
}

void emit(const Json& j, const Common& c) {
  std::string text = dump_json(j, c.pretty);
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw error("input", "cannot write '" + c.output + "'");
  out << text;
}

Arrangement load_arrangement(const Common& c) {
  return arrangement_from_json(parse_json_text(read_text(c.input)));
}

std::vector<IndexSet> parse_family_arg(const std::string& text) {
  return family_from_json(parse_json_text(text));
}

IndexSet parse_index_list(const std::string& text) {
  if (!text.empty() && text[0] == '[') {
    Json j = parse_json_text(text);
    std::vector<IndexSet> wrap = family_from_json(Json::array({j}));
    return wrap.front();
  }
  IndexSet s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      s.push_back(std::stoi(tok));
    } catch (...) {
      throw error("parse", "'" + tok + "' is not an index");
    }
  }
  return s;
}

Json simplicity_to_json(const SimplicityCheck& sc) {
  Json j = Json::object();
  j["simple"] = sc.simple;
  j["sample_translate"] = vec_to_json(sc.sample);
  Json audit = Json::object();
  for (std::size_t i = 0; i < sc.audit.size(); ++i)
    audit[std::to_string(i + 1)] = [&] {
      Json a = Json::array();
      for (int p : sc.audit[i].through) a.push_back(p);
      return a;
    }();
  j["audit"] = audit;
  if (!sc.simple) {
    Json members = Json::array();
    for (int m : sc.violating_members) members.push_back(m);
    j["violating_members"] = members;
    Json S = Json::array();
    for (int p : sc.violating_S) S.push_back(p);
    j["violating_S"] = S;
  }
  return j;
}

void require_rset(const std::vector<IndexSet>& T, std::size_t n) {
  RSetCheck rc = validate_rset(T, n);
  if (!rc.valid) throw error("rset", rc.violation);
}

std::string sanitized(const std::string& name) {
  std::string out;
  for (char ch : name)
    out += (std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact tools for discriminantal arrangements"};
  app.require_subcommand(1);

  // --- check-generic ---
  Common c_gen;
  auto* gen = app.add_subcommand("check-generic", "test central genericity of an arrangement");
  add_common(gen, c_gen);

  // --- dl-normal ---
  Common c_dln;
  std::string dln_L;
  auto* dln = app.add_subcommand("dl-normal", "normal vector of D_L for a (k+1)-subset L");
  add_common(dln, c_dln);
  dln->add_option("--L", dln_L, "the subset, e.g. '1,2,3,4' or '[1,2,3,4]'")->required();

  // --- rank ---
  Common c_rank;
  std::string rank_T;
  bool rank_strict = false;
  auto* rnk = app.add_subcommand("rank", "flat rank and multiplicity of a family of subsets");
  add_common(rnk, c_rank);
  rnk->add_option("--T", rank_T, "family as JSON, e.g. '[[1,2,3],[1,4,5]]'")->required();
  rnk->add_flag("--strict-rset", rank_strict, "reject families that are not r-sets");

  // --- simple ---
  Common c_simp;
  std::string simp_T;
  bool simp_strict = false;
  auto* simp = app.add_subcommand("simple", "decide simplicity of the intersection of a family");
  add_common(simp, c_simp);
  simp->add_option("--T", simp_T, "family as JSON")->required();
  simp->add_flag("--strict-rset", simp_strict, "reject families that are not r-sets");

  // --- witness ---
  Common c_wit;
  std::string wit_T;
  bool wit_scan = false, wit_strict = false, wit_partition = false, wit_all = false;
  std::size_t wit_rmax = 3, wit_maxc = 500000;
  auto* wit = app.add_subcommand("witness", "full non-very-generic witness report");
  add_common(wit, c_wit);
  wit->add_option("--T", wit_T, "family as JSON (omit with --scan)");
  wit->add_flag("--scan", wit_scan, "search for witnesses instead of checking one family");
  wit->add_option("--rmax", wit_rmax, "largest family size tried by --scan");
  wit->add_flag("--strict-rset", wit_strict, "reject families that are not r-sets");
  wit->add_flag("--partition", wit_partition, "scan only partition-complement families");
  wit->add_flag("--all-families", wit_all, "scan all pairwise-intersecting families");
  wit->add_option("--max-candidates", wit_maxc, "candidate cap before truncation");

  // --- scan ---
  Common c_scan;
  bool scan_partition = false, scan_all = false, scan_serial_flag = false;
  std::size_t scan_rmax = 3, scan_maxc = 500000;
  auto* scn = app.add_subcommand("scan", "exhaustive witness scan up to a family size");
  add_common(scn, c_scan);
  scn->add_option("--rmax", scan_rmax, "largest family size tried");
  scn->add_flag("--partition", scan_partition, "only partition-complement families");
  scn->add_flag("--all-families", scan_all, "all pairwise-intersecting families");
  scn->add_option("--max-candidates", scan_maxc, "candidate cap before truncation");
  scn->add_flag("--serial", scan_serial_flag, "use the serial reference kernel");

  // --- kt-solve ---
  Common c_kt;
  std::string kt_T;
  bool kt_strict = false;
  auto* kts = app.add_subcommand("kt-solve", "find a strict K_T translate or prove none exists");
  add_common(kts, c_kt);
  kts->add_option("--T", kt_T, "family as JSON")->required();
  kts->add_flag("--strict-rset", kt_strict, "reject families that are not r-sets");

  // --- weak-rank ---
  Common c_wr;
  auto* wrk = app.add_subcommand("weak-rank", "weak rank of a list of K_T vector sets");
  add_common(wrk, c_wr);

  // --- build ---
  Common c_bld;
  auto* bld = app.add_subcommand("build", "complete an arrangement from a build spec file");
  add_common(bld, c_bld);

  // --- example ---
  Common c_ex;
  std::string ex_name;
  std::string ex_dir = ".";
  auto* exa = app.add_subcommand("example", "emit a built-in dataset and verify it");
  add_common(exa, c_ex, /*needs_input=*/false);
  exa->add_option("name", ex_name, "ex12_8 | ex16_11 | ex10_3 | cyclic(a,b)")->required();
  exa->add_option("--dir", ex_dir, "directory for the emitted files (default '.')");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    apply_env_seed(gen, c_gen);
    Arrangement A = load_arrangement(c_gen);
    GenericityReport rep = is_central_generic(A);
    Json j = Json::object();
    j["generic"] = rep.generic;
    Json wtn = Json::array();
    for (int i : rep.witness) wtn.push_back(i);
    j["witness"] = wtn;
    emit(j, c_gen);
    return rep.generic ? 0 : 1;
  }

  if (dln->parsed()) {
    apply_env_seed(dln, c_dln);
    Arrangement A = load_arrangement(c_dln);
    IndexSet L = parse_index_list(dln_L);
    validate_index_set(A, L);
    DiscHyperplane D = disc_normal(A, L);
    Json j = Json::object();
    Json Lj = Json::array();
    for (int p : D.L) Lj.push_back(p);
    j["L"] = Lj;
    j["w"] = vec_to_json(D.w);
    emit(j, c_dln);
    return 0;
  }

  if (rnk->parsed()) {
    apply_env_seed(rnk, c_rank);
    Arrangement A = load_arrangement(c_rank);
    std::vector<IndexSet> T = parse_family_arg(rank_T);
    for (const IndexSet& L : T) validate_index_set(A, L);
    if (rank_strict) require_rset(T, A.n);
    Flat f = flat_of(A, T);
    Json j = Json::object();
    j["T"] = family_to_json(T);
    j["multiplicity"] = T.size();
    j["rank"] = f.rank;
    emit(j, c_rank);
    return 0;
  }

  if (simp->parsed()) {
    apply_env_seed(simp, c_simp);
    Arrangement A = load_arrangement(c_simp);
    std::vector<IndexSet> T = parse_family_arg(simp_T);
    for (const IndexSet& L : T) validate_index_set(A, L);
    if (simp_strict) require_rset(T, A.n);
    SimplicityCheck sc = is_simple(A, T, c_simp.run_config());
    emit(simplicity_to_json(sc), c_simp);
    return sc.simple ? 0 : 1;
  }

  if (wit->parsed()) {
    apply_env_seed(wit, c_wit);
    Arrangement A = load_arrangement(c_wit);
    if (wit_scan && !wit_T.empty())
      throw error("input", "--T and --scan are mutually exclusive");
    if (!wit_scan && wit_T.empty())
      throw error("input", "witness needs either --T or --scan");
    if (wit_scan) {
      ScanOptions opts;
      opts.r_max = wit_rmax;
      opts.rset_only = !wit_all;
      opts.partition_complement = wit_partition;
      opts.max_candidates = wit_maxc;
      ScanResult res = scan(A, opts, c_wit.run_config());
      emit(scan_result_to_json(res), c_wit);
      if (!res.witnesses.empty()) return 0;
      return res.truncated ? 3 : 1;
    }
    std::vector<IndexSet> T = parse_family_arg(wit_T);
    for (const IndexSet& L : T) validate_index_set(A, L);
    if (wit_strict) require_rset(T, A.n);
    WitnessReport w = detect_nonverygeneric(A, T, c_wit.run_config());
    emit(witness_to_json(w), c_wit);
    return w.non_very_generic ? 0 : 1;
  }

  if (scn->parsed()) {
    apply_env_seed(scn, c_scan);
    Arrangement A = load_arrangement(c_scan);
    ScanOptions opts;
    opts.r_max = scan_rmax;
    opts.rset_only = !scan_all;
    opts.partition_complement = scan_partition;
    opts.max_candidates = scan_maxc;
    ScanResult res = scan_serial_flag ? scan_serial(A, opts, c_scan.run_config())
                                      : scan(A, opts, c_scan.run_config());
    emit(scan_result_to_json(res), c_scan);
    if (!res.witnesses.empty()) return 0;
    return res.truncated ? 3 : 1;
  }

  if (kts->parsed()) {
    apply_env_seed(kts, c_kt);
    Arrangement A = load_arrangement(c_kt);
    std::vector<IndexSet> T = parse_family_arg(kt_T);
    for (const IndexSet& L : T) validate_index_set(A, L);
    if (kt_strict) require_rset(T, A.n);
    std::optional<Vec> t = kt_translate(A, T, c_kt.run_config());
    Json j = Json::object();
    j["found"] = t.has_value();
    if (t) {
      j["t"] = vec_to_json(*t);
      j["configuration"] = configuration_to_json(kt_configuration(A, T, *t));
    }
    emit(j, c_kt);
    return t ? 0 : 1;
  }

  if (wrk->parsed()) {
    apply_env_seed(wrk, c_wr);
    Json j = parse_json_text(read_text(c_wr.input));
    const Json* list = &j;
    if (j.is_object() && j.contains("vector_sets")) list = &j.at("vector_sets");
    if (!list->is_array()) throw error("parse", "expected an array of vector sets");
    std::vector<KTVectorSet> sets;
    for (const Json& e : *list) sets.push_back(vector_set_from_json(e));
    Json out = Json::object();
    out["count"] = sets.size();
    out["weak_rank"] = weak_rank(sets);
    emit(out, c_wr);
    return 0;
  }

  if (bld->parsed()) {
    apply_env_seed(bld, c_bld);
    Json j = parse_json_text(read_text(c_bld.input));
    BuildSpec spec = build_spec_from_json(j);
    std::vector<KTVectorSet> sets;
    if (j.contains("vector_sets")) {
      if (!j.at("vector_sets").is_array())
        throw error("parse", "field 'vector_sets' must be an array");
      for (const Json& e : j.at("vector_sets")) sets.push_back(vector_set_from_json(e));
    } else {
      // Default: the first d basis elements of the valid vector-set space cut
      // out by the fixed normals (their concatenations are independent, so
      // the weak rank is automatically d).
      std::vector<KTVectorSet> basis = vector_set_space(spec.free_normals, spec.T, spec.k);
      if (basis.size() < spec.d)
        throw error("input", "valid vector-set space has dimension " +
                                 std::to_string(basis.size()) + " but d = " +
                                 std::to_string(spec.d));
      sets.assign(basis.begin(), basis.begin() + static_cast<long>(spec.d));
    }
    std::map<int, Vec> preferred;
    if (j.contains("preferred")) {
      const Json& pref = j.at("preferred");
      if (!pref.is_object()) throw error("parse", "field 'preferred' must be an object");
      for (const auto& [key, val] : pref.items())
        preferred[std::stoi(key)] = vec_from_json(val, "preferred normal " + key);
    }
    BuildResult result = complete_arrangement(spec, sets, c_bld.run_config(), preferred);
    VerifyOutcome v = verify_build(result);
    Json out = build_result_to_json(result);
    out["verify"] = Json::object();
    out["verify"]["ok"] = v.ok;
    out["verify"]["reason"] = v.reason;
    emit(out, c_bld);
    return v.ok ? 0 : 1;
  }

  if (exa->parsed()) {
    apply_env_seed(exa, c_ex);
    BuiltinExample ex = builtin_example(ex_name);
    RunConfig cfg = c_ex.run_config();
    std::filesystem::create_directories(ex_dir);
    const std::string base = (std::filesystem::path(ex_dir) / sanitized(ex.name)).string();
    auto write_file = [&](const std::string& suffix, const Json& j) {
      std::ofstream out(base + suffix, std::ios::binary);
      if (!out) throw error("input", "cannot write '" + base + suffix + "'");
      out << dump_json(j, c_ex.pretty);
    };
    write_file("_arrangement.json", arrangement_to_json(ex.arrangement));
    Json fam = Json::object();
    fam["T"] = family_to_json(ex.T);
    write_file("_family.json", fam);
    if (!ex.vector_sets.empty()) {
      Json sets = Json::array();
      for (const KTVectorSet& V : ex.vector_sets) sets.push_back(vector_set_to_json(V));
      write_file("_sets.json", sets);
    }

    std::cout << "example " << ex.name << ": n=" << ex.arrangement.n
              << ", k=" << ex.arrangement.k << ", r=" << ex.T.size() << "\n";
    GenericityReport rep = is_central_generic(ex.arrangement);
    if (rep.generic) {
      std::cout << "central genericity: confirmed\n";
    } else {
      std::cout << "central genericity: FAILED, dependent subset {";
      for (std::size_t i = 0; i < rep.witness.size(); ++i)
        std::cout << (i ? "," : "") << rep.witness[i];
      std::cout << "}\n";
    }
    if (!ex.vector_sets.empty()) {
      std::cout << "vector sets: " << ex.vector_sets.size() << ", weak rank "
                << weak_rank(ex.vector_sets) << "\n";
    }
    WitnessReport w = detect_nonverygeneric(ex.arrangement, ex.T, cfg);
    write_file("_witness.json", witness_to_json(w));
    std::cout << "flat rank " << w.rank << ", multiplicity " << w.multiplicity
              << ", simple: " << (w.simple ? "yes" : "no") << "\n";
    if (w.non_very_generic) {
      std::cout << "OK: rank " << w.rank << " < multiplicity " << w.multiplicity << "\n";
      return 0;
    }
    std::cout << "NO: the family does not certify a non-very-generic arrangement\n";
    return 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
