#include "borel/report.hpp"

#include <charconv>
#include <chrono>
#include <sstream>

#include "borel/cind.hpp"
#include "borel/field.hpp"

namespace borel {

namespace {

long long parse_int(std::string_view key, std::string_view text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
  return v;
}

int parse_small(std::string_view key, std::string_view text) {
  const long long v = parse_int(key, text);
  if (v < -1000000 || v > 1000000) throw ConfigError("value out of range for " + std::string(key));
  return static_cast<int>(v);
}

std::vector<long long> parse_list(std::string_view key, std::string_view text, std::size_t n) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_int(key, text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != n)
    throw ConfigError(std::string(key) + " expects " + std::to_string(n) + " comma-separated integers");
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"identities", "weights",    "hecke",        "recursion", "lemma-s",
                                                 "pseries",    "generation", "hom-transfer", "all"};
  return names;
}

bool is_command(std::string_view name) {
  for (const auto& n : command_names())
    if (n == name) return true;
  return false;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  if (key == "command") {
    command = std::string(value);
  } else if (key == "p") {
    p = parse_small(key, value);
  } else if (key == "k") {
    k = parse_small(key, value);
  } else if (key == "weight") {
    auto v = parse_list(key, value, 2);
    if (v[0] < -1000 || v[0] > 1000 || v[1] < -1000 || v[1] > 1000) throw ConfigError("weight out of range");
    r = static_cast<int>(v[0]);
    m = static_cast<int>(v[1]);
  } else if (key == "chi") {
    auto v = parse_list(key, value, 4);
    i1 = v[0];
    i2 = v[1];
    s1 = v[2];
    s2 = v[3];
  } else if (key == "ideal") {
    ideal = std::string(value);
  } else if (key == "R") {
    R = parse_small(key, value);
  } else if (key == "R_target") {
    R_target = parse_small(key, value);
  } else if (key == "N") {
    N = parse_small(key, value);
  } else if (key == "trials") {
    trials = parse_small(key, value);
  } else if (key == "seed") {
    const long long s = parse_int(key, value);
    if (s < 0) throw ConfigError("seed must be non-negative");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "bound") {
    bound = parse_small(key, value);
  } else if (key == "L") {
    L = parse_small(key, value);
  } else if (key == "R_max" || key == "r_max") {
    r_max = parse_small(key, value);
  } else if (key == "N_max" || key == "n_max") {
    n_max = parse_small(key, value);
  } else if (key == "timing") {
    timing = parse_bool(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void RunConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("configuration file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      set(key, value.get<std::string>());
    } else if (value.is_boolean()) {
      set(key, value.get<bool>() ? "true" : "false");
    } else if (value.is_number_integer()) {
      set(key, std::to_string(value.get<long long>()));
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& x : value) {
        if (!x.is_number_integer()) throw ConfigError("non-integer entry in " + key);
        joined += (joined.empty() ? "" : ",") + std::to_string(x.get<long long>());
      }
      set(key, joined);
    } else {
      throw ConfigError("unsupported value for " + key);
    }
  }
}

void RunConfig::validate() const {
  if (!is_command(command)) throw ConfigError("unknown command '" + command + "'");
  if (p < 2 || p > 13 || !Field::is_prime(p)) throw ConfigError("p must be a prime <= 13");
  if (k < 1 || k > 4) throw ConfigError("k must be between 1 and 4");
  long long q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (r < 0 || r > p - 1) throw ConfigError("weight r must satisfy 0 <= r <= p-1");
  if (m < 0 || m >= std::max(1, p - 1)) throw ConfigError("weight m must satisfy 0 <= m < p-1");
  if (s1 <= 0 || s1 >= q || s2 <= 0 || s2 >= q) throw ConfigError("character values s1, s2 must be nonzero field codes");
  if (n_max < 1 || n_max > 6) throw ConfigError("N_max must be between 1 and 6");
  if (r_max < 0 || r_max > 6) throw ConfigError("R_max must be between 0 and 6");
  if (R < 0 || R > r_max) throw ConfigError("R must satisfy 0 <= R <= R_max");
  if (R_target < 0 || R_target >= r_max) throw ConfigError("R_target must satisfy 0 <= R_target < R_max");
  if (N < 1 || N > n_max) throw ConfigError("N must satisfy 1 <= N <= N_max");
  if (trials < 1 || trials > 100000) throw ConfigError("trials must be between 1 and 100000");
  if (bound < 1 || bound > 1000) throw ConfigError("bound must be between 1 and 1000");
  if (L < 0 || L > 8) throw ConfigError("L must be between 0 and 8");
  try {
    const HeckeIdeal parsed = HeckeIdeal::parse(Field::prime(p), ideal);
    if (parsed.degree() < 1 || parsed.degree() > 4) throw ConfigError("ideal degree must be between 1 and 4");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["p"] = p;
  j["k"] = k;
  j["weight"] = {r, m};
  j["chi"] = {i1, i2, s1, s2};
  j["ideal"] = ideal;
  j["R"] = R;
  j["R_target"] = R_target;
  j["N"] = N;
  j["trials"] = trials;
  j["seed"] = seed;
  j["bound"] = bound;
  j["L"] = L;
  j["R_max"] = r_max;
  j["N_max"] = n_max;
  return j;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

nlohmann::json ReportDocument::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = config.command;
  j["config"] = config.to_json();
  j["seed"] = config.seed;
  j["checks"] = nlohmann::json::array();
  int counts[3] = {0, 0, 0};
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"status", status_name(c.status)},
                           {"details", c.details},
                           {"certification", c.certification}});
    ++counts[static_cast<int>(c.status)];
  }
  j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}};
  j["exit_code"] = exit_code(*this);
  if (config.timing && wall_clock_ms >= 0) j["wall_clock_ms"] = wall_clock_ms;
  return j;
}

namespace {

std::string flat(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  if (format == ReportFormat::json) return doc.to_json().dump(2) + "\n";
  std::ostringstream os;
  os << "command " << doc.config.command << " (schema " << kSchemaVersion << ", seed " << doc.config.seed << ")\n";
  os << "config";
  const nlohmann::json config = doc.config.to_json();
  for (const auto& [k, v] : config.items())
    if (k != "command" && k != "seed") os << " " << k << "=" << flat(v);
  os << "\n";
  int counts[3] = {0, 0, 0};
  for (const auto& c : doc.checks) {
    static const char* const tags[] = {"PASS", "FAIL", "INCONCLUSIVE"};
    os << tags[static_cast<int>(c.status)] << " " << c.name;
    for (const auto& [k, v] : c.details.items()) os << " " << k << "=" << flat(v);
    for (const auto& [k, v] : c.certification.items()) os << " [" << k << "=" << flat(v) << "]";
    os << "\n";
    ++counts[static_cast<int>(c.status)];
  }
  os << "summary: " << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " inconclusive\n";
  if (doc.config.timing && doc.wall_clock_ms >= 0) os << "wall clock: " << doc.wall_clock_ms << " ms\n";
  return os.str();
}

int exit_code(const ReportDocument& doc) {
  bool inconclusive = false;
  for (const auto& c : doc.checks) {
    if (c.status == CheckStatus::fail) return 2;
    if (c.status == CheckStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

ReportDocument run_command(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ReportDocument doc;
  doc.config = config;
  auto append = [&](std::vector<Check> more) {
    for (auto& c : more) doc.checks.push_back(std::move(c));
  };
  const std::string& cmd = config.command;
  const bool all = cmd == "all";
  if (all || cmd == "identities") append(suite_identities(config));
  if (all || cmd == "weights") append(suite_weights(config));
  if (all || cmd == "hecke") append(suite_hecke(config));
  if (all || cmd == "recursion") append(suite_recursion(config));
  if (all || cmd == "lemma-s") append(suite_lemma_s(config));
  if (all || cmd == "pseries") append(suite_pseries(config));
  if (all || cmd == "generation") append(suite_generation(config));
  if (all || cmd == "hom-transfer") append(suite_hom_transfer(config));
  doc.wall_clock_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

}  // namespace borel
