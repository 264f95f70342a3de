#pragma once

// Run configuration shared by every subcommand, with per-field provenance.

#include <moyal/algebra.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace moyal::cli {

enum class OutputFormat { json, csv };

/// Invalid command-line or configuration input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double theta = 2.0;
  std::optional<double> omega;
  int truncation = 64;
  double tol = 1e-9;
  OutputFormat output = OutputFormat::json;
  std::uint64_t seed = 20240611;
  /// Field name -> "default" | "config" | "flag".
  std::map<std::string, std::string> provenance = {
      {"theta", "default"}, {"omega", "default"}, {"truncation", "default"},
      {"tol", "default"},   {"output", "default"}, {"seed", "default"}};

  bool is_set(const std::string& field) const { return provenance.at(field) != "default"; }

  /// Throws UsageError when a field is out of range.
  void validate() const;
};

/// Overlays fields from a JSON object mirroring RunConfig.
void apply_config_json(RunConfig& config, const nlohmann::json& j);
void apply_config_file(RunConfig& config, const std::string& path);

/// "a", "a+bi", "a-bi", "bi", "i", "-i" with optional whitespace.
Complex parse_complex(const std::string& text);

nlohmann::json config_json(const RunConfig& config);

/// Library and dependency versions embedded in every record.
nlohmann::json version_json();

}  // namespace moyal::cli
