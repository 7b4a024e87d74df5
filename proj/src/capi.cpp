#include "borel/borel.h"

#include <cstring>
#include <string>

#include "borel/report.hpp"

struct bw_config {
  borel::RunConfig config;
};

struct bw_report {
  borel::ReportDocument doc;
};

namespace {

thread_local std::string last_error;

bw_status fail(bw_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class Body>
bw_status wrap(Body body) {
  try {
    last_error.clear();
    return body();
  } catch (const borel::ConfigError& e) {
    return fail(BW_CONFIG_ERROR, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(BW_PARSE_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(BW_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(BW_INTERNAL_ERROR, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* bw_version(void) { return "1.0.0"; }

const char* bw_last_error(void) { return last_error.c_str(); }

bw_status bw_config_create(bw_config** out) {
  if (!out) return fail(BW_INVALID_ARGUMENT, "null output pointer");
  return wrap([&] {
    *out = new bw_config();
    return BW_OK;
  });
}

void bw_config_destroy(bw_config* config) { delete config; }

bw_status bw_config_set(bw_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(BW_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    config->config.set(key, value);
    return BW_OK;
  });
}

bw_status bw_config_load_json(bw_config* config, const char* json_text) {
  if (!config || !json_text) return fail(BW_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    config->config.merge_json(nlohmann::json::parse(json_text));
    return BW_OK;
  });
}

bw_status bw_config_validate(const bw_config* config) {
  if (!config) return fail(BW_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    config->config.validate();
    return BW_OK;
  });
}

size_t bw_command_count(void) { return borel::command_names().size(); }

const char* bw_command_name(size_t index) {
  const auto& names = borel::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

bw_status bw_run(const bw_config* config, bw_report** out) {
  if (!config || !out) return fail(BW_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    auto* report = new bw_report{borel::run_command(config->config)};
    *out = report;
    return BW_OK;
  });
}

int bw_report_exit_code(const bw_report* report) { return report ? borel::exit_code(report->doc) : BW_EXIT_USAGE; }

size_t bw_report_check_count(const bw_report* report) { return report ? report->doc.checks.size() : 0; }

bw_status bw_report_serialize(const bw_report* report, bw_format format, char** out) {
  if (!report || !out) return fail(BW_INVALID_ARGUMENT, "null argument");
  if (format != BW_FORMAT_JSON && format != BW_FORMAT_TEXT) return fail(BW_INVALID_ARGUMENT, "unknown format");
  return wrap([&] {
    *out = copy_string(borel::emit_report(
        report->doc, format == BW_FORMAT_JSON ? borel::ReportFormat::json : borel::ReportFormat::text));
    return BW_OK;
  });
}

void bw_report_destroy(bw_report* report) { delete report; }

void bw_string_free(char* s) { delete[] s; }

}  // extern "C"
