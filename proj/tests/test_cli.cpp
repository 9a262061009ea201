#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "moonlie/cli.hpp"

using namespace moonlie;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "moonlie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MOONLIE_TEST_DATA) + "/" + name; }

std::string line(const std::string& text, int index) {
  std::istringstream is(text);
  std::string l;
  for (int i = 0; i <= index; ++i) std::getline(is, l);
  return l;
}

}  // namespace

TEST_CASE("expand 2B") {
  const Run r = run({"expand", "--class", "2B", "--order", "12"});
  CHECK(r.code == 0);
  CHECK(line(r.out, 0) == "class\tN\tell\tprefactor\teta");
  CHECK(line(r.out, 1).rfind("2B\t2\t1\t4096\t", 0) == 0);
  CHECK(line(r.out, 4) == "1\t24");
  CHECK(line(r.out, 5) == "2\t0");
  CHECK(line(r.out, 6) == "3\t24");
}

TEST_CASE("expand 4D") {
  const Run r = run({"expand", "--class", "4D", "--order", "12", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"N\": 8") != std::string::npos);
  CHECK(r.out.find("\"ell\": 2") != std::string::npos);
  CHECK(r.out.find("\"prefactor\": \"64\"") != std::string::npos);
}

TEST_CASE("bad input exits 2") {
  CHECK(run({"expand", "--class-file", data("empty.cls")}).code == kExitBadInput);
  CHECK(run({"expand", "--class", "9Z"}).code == kExitBadInput);
  CHECK(run({"expand"}).code == kExitBadInput);
  CHECK(run({"expand", "--class", "2B", "--class-file", data("classes.json")}).code == kExitBadInput);
  CHECK(run({"expand", "--class-file", data("classes.json")}).code == kExitBadInput);
  CHECK(run({"expand", "--class-file", data("classes.json"), "--label", "4D"}).code == 0);
  CHECK(run({"expand", "--class", "2B", "--order", "0"}).code == kExitBadInput);
  CHECK(run({"mults", "--class", "2B", "--box", "0", "3"}).code == kExitBadInput);
  CHECK(run({"nosuch"}).code == kExitBadInput);
  CHECK(run({"plot", "--class", "2B", "--out", "/nonexistent-dir/x.svg"}).code == kExitBadInput);
  CHECK(run({"freelie-oracle", "--matrix", "0,-1;-1,0"}).code == kExitBadInput);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("verify") {
  const Run ok = run({"verify", "--class", "4D", "--box", "6", "6"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verify\tPASS") != std::string::npos);
  const Run bad = run({"verify", "--class-file", data("perturbed_2B.json"), "--box", "5", "5"});
  CHECK(bad.code == kExitCheckFailed);
  CHECK(bad.out.find("first disagreement at (1,0): product=24 structure=25") != std::string::npos);
  CHECK(bad.out.find("verify\tFAIL") != std::string::npos);
  const Run js = run({"verify", "--class", "2B", "--box", "4", "4", "--format", "json",
                      "--adams-file", data("adams_small.json")});
  CHECK(js.code == 0);
  CHECK(js.out.find("\"result\": \"PASS\"") != std::string::npos);
  CHECK(js.out.find("twisted_identity_family") != std::string::npos);
}

TEST_CASE("mults and fricke") {
  const Run m = run({"mults", "--class", "2B", "--box", "2", "1", "--route", "both"});
  CHECK(m.code == 0);
  CHECK(m.out == "m\tn\tN\tmult\n1\t0\t2\t24\n1\t1\t2\t4096\n2\t0\t2\t0\n2\t1\t2\t98304\n");
  const Run s = run({"mults", "--class", "2B", "--box", "2", "1", "--route", "structure"});
  CHECK(s.out == m.out);
  const Run f = run({"fricke", "--class", "4D", "--order", "4"});
  CHECK(f.code == 0);
  CHECK(f.out.find("1\t64\n2\t0\n3\t768\n") != std::string::npos);
}

TEST_CASE("cartan and freelie-oracle") {
  const Run c = run({"cartan", "--class", "4D", "--box", "3", "3"});
  CHECK(c.code == 0);
  CHECK(c.out.find("row_relations\tPASS") != std::string::npos);
  const Run o = run({"freelie-oracle", "--random", "5", "--seed", "9", "--maxdeg", "5"});
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
  const Run j = run({"freelie-oracle", "--matrix", "0,0,-1;0,0,-2;-1,-2,-2", "--j", "0,1"});
  CHECK(j.code == 0);
  CHECK(j.out.find("(1,1,1)\t1\t") != std::string::npos);
}

TEST_CASE("plot is deterministic and writes files") {
  const Run a = run({"plot", "--class", "2B", "--box", "7", "4"});
  const Run b = run({"plot", "--class", "2B", "--box", "7", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::string path = "moonlie_cli_test.svg";
  CHECK(run({"plot", "--class", "2B", "--box", "7", "4", "--out", path}).code == 0);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  std::remove(path.c_str());
}

TEST_CASE("default order from the environment") {
  ::setenv(kOrderEnv, "5", 1);
  const Run r = run({"expand", "--class", "2B"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n5\t24\n") != std::string::npos);
  CHECK(r.out.find("\n6\t0\n") == std::string::npos);
  ::setenv(kOrderEnv, "abc", 1);
  CHECK(run({"expand", "--class", "2B"}).code == kExitBadInput);
  ::unsetenv(kOrderEnv);
}
