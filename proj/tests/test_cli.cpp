#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qmw/io.hpp"

using namespace qmw;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const char* env = std::getenv("QMW_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "qmw_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string put(const std::string& name, const std::string& content) {
  fs::path p = scratch() / name;
  write_file(p.string(), content);
  return p.string();
}

Quandle aff(int n, long long f) {
  AbelianGroup g = AbelianGroup::cyclic(n);
  return Quandle::affine(g, Homomorphism::scalar(g, f));
}

const char* kThree = "3\n0 1 2\n0 1 2\n1 0 2\n";

}  // namespace

TEST_CASE("verify") {
  Result r = run({"verify", put("three.txt", kThree)});
  CHECK(r.code == 0);
  CHECK(r.out == "quandle: yes, medial: yes, 2-reductive: yes\n");
  Result d = run({"verify", put("d3.txt", print_quandle(aff(3, 2)))});
  CHECK(d.out == "quandle: yes, medial: yes, 2-reductive: no\n");
  Result bad = run({"verify", put("bad.txt", "2\n1 0\n1 0\n")});
  CHECK(bad.code == 1);
  CHECK(bad.out == "quandle: no\n");
  Result parse = run({"verify", put("garbage.txt", "2\n0 x\n")});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("parse error") != std::string::npos);
  CHECK(run({"verify", (scratch() / "missing.txt").string()}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"enumerate"}).code == 2);
  CHECK(run({"enumerate", "0"}).code == 2);
  CHECK(run({"tables", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("decompose and sum round trip") {
  std::string q = put("d6.txt", print_quandle(aff(6, -1)));
  std::string mesh_file = (scratch() / "d6_mesh.json").string();
  Result d = run({"decompose", q, "-o", mesh_file});
  REQUIRE(d.code == 0);
  AffineMesh m = parse_mesh(read_file(mesh_file));
  CHECK(validate_mesh(m).ok());
  Result s = run({"sum", mesh_file});
  REQUIRE(s.code == 0);
  CHECK(oracle::isomorphic(parse_quandle(s.out), aff(6, -1)));
  Result stdout_mesh = run({"decompose", q});
  CHECK(parse_mesh(stdout_mesh.out) == m);

  // a quandle that is not medial
  auto non_medial = brute_force_enumerate(4, [](const Quandle& x) { return !oracle::is_medial(x); });
  REQUIRE(non_medial.size() == 1);
  Result nm = run({"decompose", put("nonmedial.txt", print_quandle(non_medial[0]))});
  CHECK(nm.code == 1);
  Result invalid = run({"sum", put("invalid.json", print_mesh(mesh_from_scalars({2}, {{1}}, {{0}})))});
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("invalid mesh") != std::string::npos);
}

TEST_CASE("iso") {
  Quandle q = aff(6, -1);
  std::vector<int> relabel{3, 5, 0, 1, 4, 2};
  std::string a = put("iso_a.txt", print_quandle(q));
  std::string b = put("iso_b.txt", print_quandle(q.relabelled(relabel)));
  Result r = run({"iso", a, b});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("isomorphic\npath: mesh-homology\n", 0) == 0);
  auto pos = r.out.find("map: [");
  REQUIRE(pos != std::string::npos);
  std::string list = r.out.substr(pos + 6, r.out.find(']', pos) - pos - 6);
  std::vector<int> map;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) map.push_back(std::stoi(item));
  CHECK(oracle::is_isomorphism(q, q.relabelled(relabel), map));

  Result no = run({"iso", a, put("iso_c.txt", print_quandle(Quandle::projection(6)))});
  CHECK(no.out == "non-isomorphic\npath: mesh-homology\n");

  auto non_medial = brute_force_enumerate(4, [](const Quandle& x) { return !oracle::is_medial(x); });
  std::string nm = put("iso_nm.txt", print_quandle(non_medial[0]));
  Result brute = run({"iso", nm, nm});
  CHECK(brute.out.rfind("isomorphic\npath: brute-force\nmap: [", 0) == 0);

  AffineMesh x = mesh_from_scalars({3, 1}, {{0, 0}, {0, 0}}, {{0, 0}, {1, 0}});
  AffineMesh y = mesh_from_scalars({3, 1}, {{0, 0}, {0, 0}}, {{0, 0}, {2, 0}});
  Result meshes = run({"iso", put("mx.json", print_mesh(x)), put("my.json", print_mesh(y))});
  CHECK(meshes.out.rfind("isomorphic\npath: mesh-homology\nwitness: ", 0) == 0);
  CHECK(run({"iso", a, put("small.txt", kThree)}).out == "non-isomorphic\n");
}

TEST_CASE("classify") {
  Result r = run({"classify", put("cl.txt", kThree)});
  CHECK(r.code == 0);
  CHECK(r.out.front() == '{');
  CHECK(r.out.find("\"medial\": true") != std::string::npos);
  Result m = run({"classify", put("cl.json", print_mesh(mesh_from_scalars({3, 3}, {{2, 2}, {2, 2}}, {{0, 2}, {1, 0}})))});
  CHECK(m.code == 0);
  CHECK(m.out.find("\"size\": 6") != std::string::npos);
}

TEST_CASE("enumerate") {
  fs::path dir = scratch() / "enum5";
  fs::remove_all(dir);
  Result r = run({"enumerate", "5", "--output-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == "n,medial,2reductive,involutory,2red_involutory,non2red,red_not_2red,nonred,all_latin,latin\n"
                 "5,18,15,11,10,3,0,3,3,3\n");
  int non2red = 0, two_red = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    AffineMesh m = parse_mesh(read_file(entry.path().string()));
    CHECK(validate_mesh(m).ok());
    CHECK(m.order() == 5);
    if (name.rfind("non2red_5_", 0) == 0) ++non2red;
    if (name.rfind("2red_5_", 0) == 0) ++two_red;
  }
  CHECK(non2red == 3);
  CHECK(two_red == 15);

  Result workers = run({"enumerate", "8", "-w", "3"});
  CHECK(workers.out == run({"enumerate", "8", "-w", "1"}).out);
  Result capped = run({"enumerate", "8", "--non2red-cap", "7"});
  CHECK(capped.out.find("\n8,,1398,,594,,,,3,2\n") != std::string::npos);
}

TEST_CASE("workers from the environment") {
  setenv("QMW_WORKERS", "2", 1);
  CHECK(run({"enumerate", "4"}).code == 0);
  setenv("QMW_WORKERS", "lots", 1);
  CHECK(run({"enumerate", "4"}).code == 2);
  unsetenv("QMW_WORKERS");
}

TEST_CASE("tables") {
  Result r = run({"tables", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "n,medial,2reductive,involutory,2red_involutory,non2red,red_not_2red,nonred,all_latin,latin\n"
                 "1,1,1,1,1,0,0,0,0,1\n"
                 "2,1,1,1,1,0,0,0,0,0\n"
                 "3,3,2,3,2,1,0,1,1,1\n"
                 "4,6,5,4,4,1,0,1,1,1\n");
}
