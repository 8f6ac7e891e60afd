#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "discrim/builder.hpp"
#include "discrim/json_io.hpp"

using namespace discrim;

namespace {

const std::string& cli_path() {
  static std::string path = [] {
    const char* p = std::getenv("DISCRIM_CLI");
    if (!p) throw std::runtime_error("DISCRIM_CLI is not set (run via ctest)");
    return std::string(p);
  }();
  return path;
}

const std::string& tmpdir() {
  static std::string dir = [] {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "discrim_cli_XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    return tmpl;
  }();
  return dir;
}

struct RunOut {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunOut run_cli(const std::string& args, const std::string& env_prefix = "") {
  RunOut r;
  std::string cmd = env_prefix + cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_text(const std::string& name, const std::string& text) {
  std::string path = tmpdir() + "/" + name;
  std::ofstream f(path, std::ios::binary);
  f << text;
  REQUIRE(f.good());
  return path;
}

std::string write_json(const std::string& name, const Json& j) {
  return write_text(name, dump_json(j, false));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string arrangement_file(const std::string& name) {
  BuiltinExample ex = builtin_example(name);
  return write_json(name + "_arr.json", arrangement_to_json(ex.arrangement));
}

std::string last_line(const std::string& text) {
  std::size_t end = text.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  std::size_t start = text.rfind('\n', end);
  return text.substr(start + 1, end - start);
}

}  // namespace

TEST_CASE("cli: check-generic exit codes") {
  RunOut ok = run_cli("check-generic -i " + arrangement_file("cyclic"));
  CHECK(ok.code == 0);
  Json j = parse_json_text(ok.out);
  CHECK(j.at("generic") == true);
  CHECK(j.at("witness").empty());

  RunOut bad = run_cli("check-generic -i " + arrangement_file("ex12_8"));
  CHECK(bad.code == 1);
  j = parse_json_text(bad.out);
  CHECK(j.at("generic") == false);
  CHECK(j.at("witness") == Json::array({1, 3, 4, 5, 6, 7, 8, 10}));

  std::string broken = write_text("broken.json", "{\"k\": 2, \"n\":");
  RunOut err = run_cli("check-generic -i " + broken);
  CHECK(err.code == 2);
  CHECK(err.out.find("error: parse") != std::string::npos);

  RunOut missing = run_cli("check-generic -i " + tmpdir() + "/nonexistent.json");
  CHECK(missing.code == 2);
}

TEST_CASE("cli: dl-normal prints the canonical normal") {
  Json arr = Json::object();
  arr["k"] = 2;
  arr["n"] = 3;
  arr["normals"] = Json::array({Json::array({"1", "0"}), Json::array({"0", "1"}),
                                Json::array({"1", "1"})});
  std::string f = write_json("plane.json", arr);
  RunOut r = run_cli("dl-normal -i " + f + " --L 1,2,3");
  CHECK(r.code == 0);
  CHECK(r.out == "{\"L\":[1,2,3],\"w\":[\"1\",\"1\",\"-1\"]}\n");

  RunOut bad = run_cli("dl-normal -i " + f + " --L 1,2");
  CHECK(bad.code == 2);
}

TEST_CASE("cli: rank and simple") {
  std::string f = arrangement_file("cyclic");
  RunOut r = run_cli("rank -i " + f + " --T '[[1,2,3,4],[1,2,5,6],[3,4,5,6]]'");
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j.at("rank") == 2);
  CHECK(j.at("multiplicity") == 3);

  RunOut s = run_cli("simple -i " + f + " --T '[[1,2,3,4],[1,2,5,6],[3,4,5,6]]'");
  CHECK(s.code == 0);

  RunOut strict =
      run_cli("rank -i " + f + " --strict-rset --T '[[1,2,3,4],[1,2,3,5],[1,2,3,6]]'");
  CHECK(strict.code == 2);
  CHECK(strict.out.find("rset") != std::string::npos);
}

TEST_CASE("cli: witness on a named family") {
  std::string f = arrangement_file("cyclic");
  RunOut r = run_cli("witness -i " + f + " --T '[[1,2,3,4],[1,2,5,6],[3,4,5,6]]'");
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j.at("non_very_generic") == true);
  CHECK(j.at("rank") == 2);
  CHECK(j.at("simple") == true);

  RunOut both = run_cli("witness -i " + f + " --T '[[1,2,3,4]]' --scan");
  CHECK(both.code == 2);
  RunOut neither = run_cli("witness -i " + f);
  CHECK(neither.code == 2);
}

TEST_CASE("cli: witness scan is deterministic") {
  std::string f = arrangement_file("cyclic");
  RunOut a = run_cli("witness -i " + f + " --scan --rmax 3 --seed 5");
  CHECK(a.code == 0);
  Json j = parse_json_text(a.out);
  CHECK(!j.at("witnesses").empty());
  RunOut b = run_cli("witness -i " + f + " --scan --rmax 3 --seed 5");
  CHECK(a.out == b.out);
  RunOut serial = run_cli("scan -i " + f + " --rmax 3 --seed 5 --serial");
  CHECK(serial.code == 0);
  CHECK(serial.out == a.out);
}

TEST_CASE("cli: kt-solve") {
  BuiltinExample e10 = builtin_example("ex10_3");
  std::string f10 = arrangement_file("ex10_3");
  std::string T10 = "'[[1,2,3,4],[1,5,6,7],[2,5,8,9],[3,6,8,10],[4,7,9,10]]'";
  RunOut found = run_cli("kt-solve -i " + f10 + " --T " + T10 + " --seed 2");
  CHECK(found.code == 0);
  Json j = parse_json_text(found.out);
  CHECK(j.at("found") == true);
  CHECK(j.contains("t"));
  CHECK(j.at("configuration").at("points").size() == 5);

  std::string f12 = arrangement_file("ex12_8");
  std::string T12 =
      "'[[1,2,3,4,5,6,7,8,9],[1,2,3,4,5,6,10,11,12],[1,2,3,7,8,9,10,11,12],"
      "[4,5,6,7,8,9,10,11,12]]'";
  RunOut none = run_cli("kt-solve -i " + f12 + " --T " + T12 + " --seed 2");
  CHECK(none.code == 1);
  CHECK(parse_json_text(none.out).at("found") == false);
}

TEST_CASE("cli: weak-rank accepts both input shapes") {
  BuiltinExample ex = builtin_example("ex10_3");
  Json sets = Json::array();
  for (const KTVectorSet& V : ex.vector_sets) sets.push_back(vector_set_to_json(V));
  std::string bare = write_json("sets_bare.json", sets);
  RunOut r = run_cli("weak-rank -i " + bare);
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j.at("count") == 3);
  CHECK(j.at("weak_rank") == 3);

  Json wrapped = Json::object();
  wrapped["vector_sets"] = sets;
  std::string obj = write_json("sets_obj.json", wrapped);
  RunOut r2 = run_cli("weak-rank -i " + obj);
  CHECK(parse_json_text(r2.out) == j);
}

TEST_CASE("cli: build completes the bundled spec") {
  BuiltinExample ex = builtin_example("ex10_3");
  Json spec = build_spec_to_json(
      plan_build(ex.arrangement.k, ex.T, ex.free_normals, ex.r_prime));
  Json sets = Json::array();
  for (const KTVectorSet& V : ex.vector_sets) sets.push_back(vector_set_to_json(V));
  spec["vector_sets"] = sets;
  std::string f = write_json("build_spec.json", spec);
  RunOut r = run_cli("build -i " + f + " --seed 1");
  CHECK(r.code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j.at("verify").at("ok") == true);
  CHECK(j.at("arrangement") == arrangement_to_json(ex.arrangement));
  CHECK(j.at("witness").at("non_very_generic") == true);
}

TEST_CASE("cli: build rejects impossible demands") {
  Json spec = Json::object();
  spec["k"] = 3;
  spec["T"] = Json::array({Json::array({1, 2, 3, 4}), Json::array({1, 2, 3, 5}),
                           Json::array({1, 2, 4, 5}), Json::array({1, 3, 4, 5}),
                           Json::array({2, 3, 4, 5})});
  Json fixed = Json::object();
  for (int q = 1; q <= 5; ++q)
    fixed[std::to_string(q)] =
        Json::array({"1", std::to_string(q), std::to_string(q * q)});
  spec["free_normals"] = fixed;
  spec["r_prime"] = 4;
  std::string f = write_json("build_d0.json", spec);
  RunOut r = run_cli("build -i " + f);
  CHECK(r.code == 1);
  CHECK(r.out.find("no construction needed") != std::string::npos);

  spec["r_prime"] = 7;
  std::string g = write_json("build_rp.json", spec);
  CHECK(run_cli("build -i " + g).code == 2);
}

TEST_CASE("cli: example emits files and a verdict transcript") {
  std::string dir = tmpdir() + "/exA";
  RunOut r = run_cli("example ex10_3 --dir " + dir + " --seed 11");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "OK: rank 4 < multiplicity 5");
  for (const char* suffix :
       {"_arrangement.json", "_family.json", "_sets.json", "_witness.json"})
    CHECK(std::filesystem::exists(dir + "/ex10_3" + std::string(suffix)));
  Json arr = parse_json_text(slurp(dir + "/ex10_3_arrangement.json"));
  CHECK(arr == arrangement_to_json(builtin_example("ex10_3").arrangement));
}

TEST_CASE("cli: example runs are deterministic under a fixed seed") {
  std::string d1 = tmpdir() + "/det1", d2 = tmpdir() + "/det2";
  RunOut a = run_cli("example cyclic --dir " + d1 + " --seed 4");
  RunOut b = run_cli("example cyclic --dir " + d2 + " --seed 4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  for (const char* suffix : {"_arrangement.json", "_family.json", "_witness.json"})
    CHECK(slurp(d1 + "/cyclic_2_3" + std::string(suffix)) ==
          slurp(d2 + "/cyclic_2_3" + std::string(suffix)));
  CHECK(!std::filesystem::exists(d1 + "/cyclic_2_3_sets.json"));
}

TEST_CASE("cli: DISCRIM_SEED is the fallback for --seed") {
  std::string f = arrangement_file("cyclic");
  std::string args = "witness -i " + f + " --T '[[1,2,3,4],[1,2,5,6],[3,4,5,6]]'";
  RunOut flagged = run_cli(args + " --seed 7");
  RunOut env = run_cli(args, "DISCRIM_SEED=7 ");
  CHECK(flagged.code == 0);
  CHECK(flagged.out == env.out);
  RunOut other = run_cli(args, "DISCRIM_SEED=8 ");
  CHECK(parse_json_text(other.out).at("non_very_generic") == true);
}

TEST_CASE("json round-trips are byte-identical") {
  RunConfig cfg;
  cfg.seed = 6;
  BuiltinExample ex = builtin_example("ex10_3");

  Json arr = arrangement_to_json(ex.arrangement);
  CHECK(dump_json(arrangement_to_json(arrangement_from_json(arr)), true) ==
        dump_json(arr, true));

  WitnessReport w = detect_nonverygeneric(ex.arrangement, ex.T, cfg);
  Json wj = witness_to_json(w);
  CHECK(dump_json(witness_to_json(witness_from_json(wj)), false) ==
        dump_json(wj, false));

  Json vs = vector_set_to_json(ex.vector_sets[2]);
  CHECK(dump_json(vector_set_to_json(vector_set_from_json(vs)), true) ==
        dump_json(vs, true));

  Json fam = family_to_json(ex.T);
  CHECK(dump_json(Json(family_to_json(family_from_json(fam))), false) ==
        dump_json(fam, false));
}
