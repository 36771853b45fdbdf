#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "jtree/errors.hpp"
#include "jtree/gen.hpp"
#include "jtree/json_io.hpp"
#include "jtree/jt2p.hpp"

using namespace jtree;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(JTREE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("io_cli_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("tree json round trip") {
  TreePrefix t = make_random_tree(9, 5);
  Json j = tree_to_json(t);
  TreePrefix back = tree_from_json(j);
  CHECK(back.node_list() == t.node_list());
  for (NodeId v : t.node_list()) CHECK(back.parent(v) == t.parent(v));
}

TEST_CASE("vector json accepts rationals and rejects junk") {
  Json j = Json::parse(R"({"2": 1.5, "3": "-1/4"})");
  SparseVector x = vector_from_json(j);
  CHECK(x[2] == 1.5);
  CHECK(x[3] == -0.25);

  Json round = vector_to_json(x);
  CHECK(vector_from_json(round) == x);

  CHECK_THROWS_AS(vector_from_json(Json::parse(R"({"zero": 1})")), Error);
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"({"2": [1]})")), Error);
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"([1,2])")), Error);
}

TEST_CASE("params json round trip") {
  Json j = Json::parse(R"({"m":[1,2,3],"n":[1,2,3],
                           "gamma":{"root":0,"28":1,"31":2},"strict_growth":false})");
  JTGParams p = params_from_json(j);
  CHECK(p.m == std::vector<int>{1, 2, 3});
  CHECK(p.gamma_root == 0);
  CHECK(p.gamma.at(28) == 1);
  CHECK_FALSE(p.strict_growth);
  JTGParams back = params_from_json(params_to_json(p));
  CHECK(back.gamma == p.gamma);
}

TEST_CASE("certificate json round trip") {
  TreePrefix t = make_chain(5);
  Rng rng(12);
  SparseVector x = random_vector(rng, t);
  NormResult r = jt2p_norm(x, t, Rational(4));
  Jt2pCertificate back = certificate_from_json(certificate_to_json(r.functional));
  CHECK(std::fabs(eval_certificate(back, x, t) - r.value) <= 1e-9);
}

TEST_CASE("round15") {
  CHECK(round15(0.0) == 0.0);
  CHECK(round15(1.0) == 1.0);
  CHECK(round15(0.1234567890123456789) == 0.123456789012346);
}

TEST_CASE("cli norm matches the frozen example") {
  std::string tree = temp_file(
      "fork.json", R"({"nodes":[{"id":1,"parent":null},{"id":2,"parent":1},{"id":3,"parent":1}]})");
  std::string vec = temp_file("ones.json", R"({"1":1,"2":1,"3":1})");

  RunResult r = run_cli("norm --space jt2p --p 4 --tree " + tree + " --vec " + vec);
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.49534878122122).epsilon(1e-14));

  RunResult oracle = run_cli("norm --space jt2p --p 4 --oracle --tree " + tree + " --vec " + vec);
  CHECK(oracle.status == 0);
  CHECK(Json::parse(oracle.out)["value"].get<double>() ==
        doctest::Approx(1.49534878122122).epsilon(1e-14));

  // Byte-identical output on a repeated run.
  RunResult again = run_cli("norm --space jt2p --p 4 --tree " + tree + " --vec " + vec);
  CHECK(again.out == r.out);

  std::remove(tree.c_str());
  std::remove(vec.c_str());
}

TEST_CASE("cli schema errors exit 2") {
  std::string bad = temp_file("bad.json", "{not json");
  std::string tree = temp_file(
      "tree2.json", R"({"nodes":[{"id":1,"parent":null}]})");
  RunResult r = run_cli("norm --space jt2p --p 4 --tree " + tree + " --vec " + bad);
  CHECK(r.status == 2);
  std::remove(bad.c_str());
  std::remove(tree.c_str());
}

TEST_CASE("cli certificate flow") {
  std::string tree = temp_file(
      "chain.json",
      R"({"nodes":[{"id":1,"parent":null},{"id":2,"parent":1},{"id":4,"parent":2}]})");
  std::string vec = temp_file("v.json", R"({"1":1,"2":-2,"4":"1/2"})");

  RunResult norm = run_cli("norm --space jt2p --p 3 --tree " + tree + " --vec " + vec +
                           " --certificate io_cli_cert.json");
  CHECK(norm.status == 0);
  double value = Json::parse(norm.out)["value"].get<double>();

  RunResult check =
      run_cli("certificate --tree " + tree + " --vec " + vec + " --cert io_cli_cert.json");
  CHECK(check.status == 0);
  Json cj = Json::parse(check.out);
  CHECK(cj["valid"].get<bool>());
  CHECK(cj["value"].get<double>() == doctest::Approx(value).epsilon(1e-10));

  std::remove(tree.c_str());
  std::remove(vec.c_str());
  std::remove("io_cli_cert.json");
}

TEST_CASE("cli gen average emits exact rationals") {
  RunResult r = run_cli("gen average --order 1 --window 2,3,4,5,6,7,8 --index 2");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["coefficients"]["4"].get<std::string>() == "1/4");
  CHECK(j["coefficients"]["7"].get<std::string>() == "1/4");
}

TEST_CASE("cli gen tree and jtg norm") {
  RunResult tr = run_cli("gen tree --kind chain --nodes 8 --start 3");
  CHECK(tr.status == 0);
  std::string tree = temp_file("gen_chain.json", tr.out);

  // 8-node chain 3..10: first maximal S_1 block is {3,4,5}.
  std::string params = temp_file(
      "params.json", R"({"m":[1,2,3],"n":[1,2,3],"gamma":{"root":0,"5":1},"strict_growth":false})");
  RunResult nv = run_cli("gen node-vector --tree " + tree + " --params " + params +
                         " --branch 10 --k 1");
  CHECK(nv.status == 0);
  Json xk = Json::parse(nv.out);
  CHECK(xk.size() == 3);

  std::string vec = temp_file("xk.json", nv.out);
  RunResult norm =
      run_cli("norm --space jtg --tree " + tree + " --params " + params + " --vec " + vec);
  CHECK(norm.status == 0);
  CHECK(Json::parse(norm.out)["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  std::remove(tree.c_str());
  std::remove(params.c_str());
  std::remove(vec.c_str());
}

TEST_CASE("cli verify suite runs clean") {
  RunResult r = run_cli("verify --suite tree --seed 4");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["failures"].get<int>() == 0);
}

TEST_CASE("seed determinism and env override") {
  RunResult a = run_cli("gen tree --kind random --nodes 8 --seed 1");
  RunResult b = run_cli("gen tree --kind random --nodes 8 --seed 1");
  CHECK(a.out == b.out);  // byte-identical for a fixed seed

  RunResult other = run_cli("gen tree --kind random --nodes 8 --seed 77");
  CHECK(other.out != a.out);

  // JTREE_SEED wins over --seed.
  RunResult r;
  std::string cmd = std::string("JTREE_SEED=77 ") + JTREE_CLI_PATH +
                    " gen tree --kind random --nodes 8 --seed 1 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  pclose(pipe);
  CHECK(r.out == other.out);
}
