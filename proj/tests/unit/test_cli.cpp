#include <doctest.h>

#include <commands.hpp>
#include <config.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;

  json record() const { return json::parse(out.substr(0, out.find('\n'))); }
  std::vector<json> records() const {
    std::vector<json> r;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) r.push_back(json::parse(line));
    return r;
  }
};

Invocation invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"moyal"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  Invocation r;
  r.code = moyal::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("distance") {
  auto r = invoke({"distance", "--m", "1", "--n", "0", "--theta", "2"});
  CHECK(r.code == 0);
  auto j = r.record();
  CHECK(j["closed_form"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j["lp_oracle"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["pass"] == true);

  r = invoke({"distance", "--m", "5", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.record()["closed_form"].get<double>() == 0.0);

  r = invoke({"distance", "--m", "30", "--n", "0", "--truncation", "16"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());

  r = invoke({"distance", "--max-index", "4", "--truncation", "8"});
  CHECK(r.code == 0);
  CHECK(r.records().size() == 10);

  r = invoke({"--omega", "0.5", "distance", "--m", "3", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.record()["pass"] == true);
}

TEST_CASE("causal") {
  auto r = invoke({"causal", "--k1", "0", "--k2", "1"});
  CHECK(r.code == 0);
  auto j = r.record();
  CHECK(j["related"] == true);
  CHECK(j["direction"] == "forward");

  r = invoke({"causal", "--k1", "0", "--k2", "0+1i"});
  CHECK(r.code == 0);
  j = r.record();
  CHECK(j["related"] == false);
  CHECK(j["witness_a"].get<double>() == doctest::Approx(-std::sqrt(2.0)));

  r = invoke({"causal", "--k1", "1+1i", "--k2", "1+1i"});
  CHECK(r.record()["direction"] == "equal");

  CHECK(invoke({"causal", "--k1", "x", "--k2", "1"}).code == 2);
  CHECK(invoke({"causal", "--k1", "0"}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"--theta", "-1", "causal", "--k1", "0", "--k2", "1"}).code == 2);
}

TEST_CASE("complex literals") {
  using moyal::cli::parse_complex;
  CHECK(parse_complex("1") == moyal::Complex{1, 0});
  CHECK(parse_complex("-2.5-3i") == moyal::Complex{-2.5, -3});
  CHECK(parse_complex("i") == moyal::Complex{0, 1});
  CHECK(parse_complex("-0.5i") == moyal::Complex{0, -0.5});
  CHECK(parse_complex("1e-3+2e2i") == moyal::Complex{1e-3, 200});
  CHECK_THROWS_AS(parse_complex("1+"), moyal::cli::UsageError);
  CHECK_THROWS_AS(parse_complex(""), moyal::cli::UsageError);
}

TEST_CASE("configuration precedence and provenance") {
  const auto path = temp_file("moyal_cli_config.json", R"({"theta": 8.0, "tol": 1e-6})");
  auto r = invoke({"--config", path.c_str(), "distance", "--m", "1", "--n", "0"});
  CHECK(r.code == 0);
  auto j = r.record();
  CHECK(j["config"]["theta"].get<double>() == 8.0);
  CHECK(j["closed_form"].get<double>() == doctest::Approx(2.0));
  CHECK(j["provenance"]["theta"] == "config");
  CHECK(j["provenance"]["tolerance"]["source"] == "config");
  CHECK(j["provenance"]["truncation"] == "default");

  r = invoke({"--config", path.c_str(), "--theta", "2", "distance", "--m", "1", "--n", "0"});
  j = r.record();
  CHECK(j["config"]["theta"].get<double>() == 2.0);
  CHECK(j["provenance"]["theta"] == "flag");

  const auto bad = temp_file("moyal_cli_bad.json", R"({"thetta": 1.0})");
  CHECK(invoke({"--config", bad.c_str(), "distance", "--m", "1", "--n", "0"}).code == 2);
  CHECK(invoke({"--config", "/nonexistent/moyal.json", "distance", "--m", "1", "--n", "0"})
            .code == 2);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("csv output") {
  auto r = invoke({"--output", "csv", "distance", "--max-index", "2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header_comment, header, row;
  std::getline(in, header_comment);
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header_comment.rfind("# {", 0) == 0);
  CHECK(json::parse(header_comment.substr(2))["command"] == "distance");
  CHECK(header.find("closed_form") != std::string::npos);
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("deterministic output") {
  const auto a = invoke({"--seed", "7", "homothety-check", "--samples", "10"});
  const auto b = invoke({"--seed", "7", "homothety-check", "--samples", "10"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto s1 = invoke({"selftest", "--only", "1,3,5"});
  const auto s2 = invoke({"selftest", "--only", "1,3,5"});
  CHECK(s1.out == s2.out);
  CHECK(s1.code == 0);
}

TEST_CASE("seminorm") {
  auto r = invoke({"seminorm", "--basis", "0,0", "--truncation", "8"});
  CHECK(r.code == 0);
  CHECK(r.record()["l_d0"].get<double>() == doctest::Approx(1.0));
  r = invoke({"--omega", "1", "seminorm", "--optimal", "3", "--truncation", "12"});
  CHECK(r.code == 0);
  CHECK(r.record()["l_dk_direct"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(invoke({"seminorm"}).code == 2);
  CHECK(invoke({"seminorm", "--input", "/nonexistent.json"}).code == 2);
}

TEST_CASE("cone-check") {
  auto r = invoke({"cone-check", "--witness", "a", "--truncation", "16"});
  CHECK(r.code == 0);
  CHECK(r.record()["verdict"] == "in_cone");
  r = invoke({"cone-check", "--witness", "-a", "--truncation", "16"});
  CHECK(r.record()["verdict"] == "not_in_cone");
  CHECK(invoke({"cone-check", "--witness", "b"}).code == 2);
}

TEST_CASE("zeta-divergence, grid and homothety") {
  auto r = invoke({"zeta-divergence", "--m0-list", "100,1000"});
  CHECK(r.code == 0);
  CHECK(invoke({"zeta-divergence", "--s", "0.5"}).code == 2);
  r = invoke({"grid-selftest", "--points", "24"});
  CHECK(r.code == 0);
  CHECK(invoke({"grid-selftest", "--points", "128"}).code == 2);
  r = invoke({"--omega", "0.5", "homothety-check", "--samples", "5"});
  CHECK(r.code == 0);
}

TEST_CASE("selftest exit codes") {
  CHECK(invoke({"--tol", "1e-15", "selftest", "--only", "1,2,10"}).code == 1);
  CHECK(invoke({"--truncation", "8", "selftest", "--only", "1"}).code == 1);
  CHECK(invoke({"--truncation", "8", "selftest", "--only", "7"}).code == 1);
  // Criterion 11 is a documented expected failure.
  const auto r = invoke({"selftest", "--only", "11"});
  CHECK(r.code == 1);
  CHECK(r.err.find("expected failure") != std::string::npos);
  CHECK(invoke({"selftest", "--only", "12"}).code == 2);
}

TEST_CASE("version") {
  const auto r = invoke({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}
