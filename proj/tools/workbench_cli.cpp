#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "borel/borel.h"

namespace {

struct ConfigHandle {
  bw_config* ptr = nullptr;
  ~ConfigHandle() { bw_config_destroy(ptr); }
};

struct ReportHandle {
  bw_report* ptr = nullptr;
  ~ReportHandle() { bw_report_destroy(ptr); }
};

int usage_error(const CLI::App& app, const std::string& message) {
  std::cerr << "error: " << message << "\n\n" << app.help();
  return BW_EXIT_USAGE;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification workbench for mod p representations of GL_2(Q_p) and their Borel restrictions.",
               "borel-workbench"};
  app.set_help_flag("-h,--help", "Print this help and exit");

  std::string command;
  std::string commands;
  for (size_t i = 0; i < bw_command_count(); ++i) commands += std::string(i ? ", " : "") + bw_command_name(i);
  app.add_option("command", command, "One of: " + commands)->required();

  // Flag name -> configuration key.  Stored as text and validated by the library.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--p", "p"},           {"--k", "k"},         {"--weight", "weight"}, {"--chi", "chi"},
      {"--ideal", "ideal"},   {"--R", "R"},         {"--R-target", "R_target"}, {"--N", "N"},           {"--trials", "trials"},
      {"--seed", "seed"},     {"--bound", "bound"}, {"--L", "L"},           {"--R-max", "R_max"},
      {"--N-max", "N_max"}};
  const std::vector<std::string> help = {"prime p <= 13",
                                         "field degree k, coefficients in F_{p^k}",
                                         "weight r,m",
                                         "torus character i1,i2,s1,s2",
                                         "Hecke ideal: T, T^n, T+c or T-c",
                                         "frame radius of the compact induction models",
                                         "target radius of the generation evidence",
                                         "principal series level",
                                         "random samples per check",
                                         "random seed (default: $WORKBENCH_SEED, else 42)",
                                         "recursion bound",
                                         "word length for generation and relation solves",
                                         "largest radius used by quotient computations",
                                         "largest principal series level"};
  std::vector<std::optional<std::string>> values(flags.size());
  for (size_t i = 0; i < flags.size(); ++i) app.add_option(flags[i].first, values[i], help[i]);

  std::string format = "json";
  app.add_option("--format", format, "Report format: json or text")->check(CLI::IsMember({"json", "text"}));
  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "JSON file with configuration keys; flags override it");
  bool timing = false;
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return usage_error(app, e.what());
  }

  ConfigHandle config;
  if (bw_config_create(&config.ptr) != BW_OK) return usage_error(app, bw_last_error());
  auto set = [&](const std::string& key, const std::string& value) {
    return bw_config_set(config.ptr, key.c_str(), value.c_str()) == BW_OK;
  };

  if (const char* env = std::getenv("WORKBENCH_SEED"); env && *env) {
    if (!set("seed", env)) return usage_error(app, std::string("WORKBENCH_SEED: ") + bw_last_error());
  }
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) return usage_error(app, "cannot read " + *config_path);
    std::stringstream text;
    text << in.rdbuf();
    if (bw_config_load_json(config.ptr, text.str().c_str()) != BW_OK)
      return usage_error(app, *config_path + ": " + bw_last_error());
  }
  if (!set("command", command)) return usage_error(app, bw_last_error());
  for (size_t i = 0; i < flags.size(); ++i)
    if (values[i] && !set(flags[i].second, *values[i])) return usage_error(app, bw_last_error());
  if (timing && !set("timing", "true")) return usage_error(app, bw_last_error());
  if (bw_config_validate(config.ptr) != BW_OK) return usage_error(app, bw_last_error());

  ReportHandle report;
  if (bw_run(config.ptr, &report.ptr) != BW_OK) {
    std::cerr << "error: " << bw_last_error() << "\n";
    return 1;
  }
  char* text = nullptr;
  if (bw_report_serialize(report.ptr, format == "text" ? BW_FORMAT_TEXT : BW_FORMAT_JSON, &text) != BW_OK) {
    std::cerr << "error: " << bw_last_error() << "\n";
    return 1;
  }
  std::fwrite(text, 1, std::strlen(text), stdout);
  bw_string_free(text);
  return bw_report_exit_code(report.ptr);
}
