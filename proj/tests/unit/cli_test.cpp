#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bergman/cli.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bergman_test_" + name);
}

}  // namespace

TEST_CASE("poly prints exact coefficients") {
  const auto r = invoke({"poly", "--n", "2", "--alpha", "0"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["version"] == "1.0.0");
  CHECK(doc["results"]["coefficients"] == nlohmann::json({"192", "1152", "576"}));
  CHECK(doc["config"]["command"] == "poly");
}

TEST_CASE("zeromap count flips at one half") {
  const auto r = invoke({"zeromap", "--weight", "star(std:0)", "--radii", "0.1:0.9:0.05"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int before = 0;
  int after = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("radius", 0) == 0) continue;
    const double radius = std::stod(line.substr(0, line.find(',')));
    const int count = std::stoi(line.substr(line.find(',') + 1));
    if (radius < 0.5 - 1e-12) before += count;
    if (radius > 0.5 + 1e-12) after += count == 1;
  }
  CHECK(before == 0);
  CHECK(after == 8);
  CHECK(r.out.find("\n0.55,1,") != std::string::npos);
}

TEST_CASE("loci file next to the output") {
  const auto out = temp_path("map.csv");
  const auto loci = temp_path("map_loci.csv");
  std::filesystem::remove(loci);
  const auto r = invoke({"zeromap", "--weight", "star(std:0)", "--radii", "0.6,0.8", "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(loci));
  std::filesystem::remove(out);
  std::filesystem::remove(loci);
}

TEST_CASE("usage errors exit 2 with a JSON error") {
  const auto bad_alpha = invoke({"moments", "--weight", "std:-1"});
  CHECK(bad_alpha.code == 2);
  CHECK(nlohmann::json::parse(bad_alpha.err)["error"]["code"] == "alpha_out_of_range");
  const auto bad_syntax = invoke({"kernel", "--weight", "star(std:0", "--z", "0.1"});
  CHECK(bad_syntax.code == 2);
  CHECK(nlohmann::json::parse(bad_syntax.err)["error"]["code"] == "syntax_error");
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"moments", "--weight", "std:0", "--abs-tol", "-1"}).code == 2);
}

TEST_CASE("computation errors exit 1") {
  const auto r = invoke({"kernel", "--weight", "std:0", "--z", "1", "--xi", "1"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"].contains("message"));
}

TEST_CASE("output is byte-stable") {
  const std::vector<std::string> args{"verify", "--suite", "moments", "--seed", "11"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> threaded{"-j", "4", "zeromap", "--weight", "star(std:1)",
                                          "--radii", "0.1:0.9:0.1"};
  const auto a = invoke(threaded);
  const auto b = invoke({"zeromap", "--weight", "star(std:1)", "--radii", "0.1:0.9:0.1"});
  const auto body = [](const std::string& s) { return s.substr(s.find("radius,")); };
  CHECK(body(a.out) == body(b.out));
}

TEST_CASE("configuration precedence") {
  const auto env_file = temp_path("env.json");
  const auto cli_file = temp_path("cli.json");
  std::ofstream(env_file) << R"({"seed": 3, "truncation": 2048, "rel_tol": 1e-10})";
  std::ofstream(cli_file) << R"({"seed": 5})";
  ::setenv(kConfigEnv, env_file.string().c_str(), 1);
  const auto r = invoke({"--config", cli_file.string(), "--rel-tol", "1e-9", "poly", "--n", "1"});
  ::unsetenv(kConfigEnv);
  REQUIRE(r.code == 0);
  const auto cfg = nlohmann::json::parse(r.out)["config"];
  CHECK(cfg["truncation"] == 2048);
  CHECK(cfg["seed"] == 5);
  CHECK(cfg["rel_tol"] == 1e-9);
  std::filesystem::remove(env_file);
  std::filesystem::remove(cli_file);
}

TEST_CASE("parsers") {
  const auto r = parse_range("0.1:0.3:0.1");
  REQUIRE(r.size() == 3);
  CHECK(r[0] == 0.1);
  CHECK(r[2] == 0.3);
  CHECK(parse_range("1,2,5") == std::vector<double>{1, 2, 5});
  CHECK(parse_complex("0.5,-2") == cdouble(0.5, -2.0));
  CHECK(parse_complex("3") == cdouble(3.0, 0.0));
  CHECK_ERROR(parse_complex("a"), ErrorCode::syntax_error);
}

TEST_CASE("full verification suite passes") {
  const auto r = invoke({"verify", "--suite", "all", "--seed", "7"});
  CHECK(r.code == 0);
}
