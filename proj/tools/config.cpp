#include "config.hpp"

#include <Eigen/Core>

#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>

namespace moyal::cli {

void RunConfig::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw UsageError("--theta must be positive");
  if (omega && !(*omega > 0.0 && *omega <= 1.0)) throw UsageError("--omega must lie in (0, 1]");
  if (truncation < 2) throw UsageError("--truncation must be >= 2");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("--tol must be positive");
}

void apply_config_json(RunConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "theta") {
        config.theta = value.get<double>();
      } else if (key == "omega") {
        if (value.is_null())
          config.omega.reset();
        else
          config.omega = value.get<double>();
      } else if (key == "truncation") {
        config.truncation = value.get<int>();
      } else if (key == "tol") {
        config.tol = value.get<double>();
      } else if (key == "output") {
        const std::string s = value.get<std::string>();
        if (s == "json")
          config.output = OutputFormat::json;
        else if (s == "csv")
          config.output = OutputFormat::csv;
        else
          throw UsageError("config: output must be json or csv");
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else {
        throw UsageError("config: unknown field '" + key + "'");
      }
      config.provenance[key] = "config";
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  apply_config_json(config, j);
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^([+-]?" + num + ")$");
  static const std::regex imag_only("^([+-]?)(" + num + ")?[ij]$");
  static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?[ij]$");
  std::smatch m;
  if (std::regex_match(s, m, real_only)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(s, m, imag_only)) {
    const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -mag : mag};
  }
  if (std::regex_match(s, m, both)) {
    const double mag = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -mag : mag};
  }
  throw UsageError("cannot parse complex literal '" + text + "' (expected a+bi)");
}

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json j = {{"theta", config.theta},
                      {"omega", config.omega ? nlohmann::json(*config.omega) : nlohmann::json()},
                      {"truncation", config.truncation},
                      {"tol", config.tol},
                      {"output", config.output == OutputFormat::json ? "json" : "csv"},
                      {"seed", config.seed}};
  return j;
}

nlohmann::json version_json() {
  return {{"moyal", MOYAL_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

}  // namespace moyal::cli
