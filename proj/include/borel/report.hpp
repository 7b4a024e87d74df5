#pragma once

// Run configuration, report documents and the verification suites behind
// each workbench command.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace borel {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command = "all";
  int p = 2;
  int k = 1;
  int r = 1;
  int m = 0;
  long long i1 = 0;
  long long i2 = 0;
  long long s1 = 1;  // field codes of the values at diag(p, 1), diag(1, p)
  long long s2 = 1;
  std::string ideal = "T";
  int R = 3;
  int R_target = 1;  // target radius of the generation evidence
  int N = 2;
  int trials = 10;
  std::uint64_t seed = 42;
  int bound = 10;
  int L = 4;
  int r_max = 4;
  int n_max = 4;
  bool timing = false;

  /// Throws ConfigError on any out-of-range value.
  void validate() const;
  /// Applies "key" = "value" (flag names without dashes).  Throws
  /// ConfigError on unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);
  /// Applies every key of a JSON object.
  void merge_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

const std::vector<std::string>& command_names();
bool is_command(std::string_view name);

enum class CheckStatus { pass, fail, inconclusive };
const char* status_name(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json certification = nlohmann::json::object();
};

inline constexpr int kSchemaVersion = 1;

struct ReportDocument {
  RunConfig config;
  std::vector<Check> checks;
  long long wall_clock_ms = -1;  // emitted only when config.timing is set

  nlohmann::json to_json() const;
};

enum class ReportFormat { json, text };

/// JSON: sorted keys, two-space indent, trailing newline.  Text: one line
/// per check, "PASS", "FAIL" or "INCONCLUSIVE" first.
std::string emit_report(const ReportDocument& doc, ReportFormat format);

/// 0 when every check passes, 2 on any failure, 3 when the only non-passing
/// checks are inconclusive.
int exit_code(const ReportDocument& doc);
inline constexpr int kExitUsage = 64;

/// Validates the configuration and runs the suite of config.command.
ReportDocument run_command(const RunConfig& config);

// Suites, one per command.
std::vector<Check> suite_identities(const RunConfig& c);
std::vector<Check> suite_weights(const RunConfig& c);
std::vector<Check> suite_hecke(const RunConfig& c);
std::vector<Check> suite_recursion(const RunConfig& c);
std::vector<Check> suite_lemma_s(const RunConfig& c);
std::vector<Check> suite_pseries(const RunConfig& c);
std::vector<Check> suite_generation(const RunConfig& c);
std::vector<Check> suite_hom_transfer(const RunConfig& c);

}  // namespace borel
