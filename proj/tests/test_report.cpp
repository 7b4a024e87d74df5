#include <doctest.h>

#include "borel/report.hpp"

using namespace borel;

namespace {

RunConfig with(std::initializer_list<std::pair<const char*, const char*>> kv) {
  RunConfig c;
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

ReportDocument synthetic(std::vector<CheckStatus> statuses) {
  ReportDocument doc;
  int i = 0;
  for (CheckStatus s : statuses) doc.checks.push_back({"c" + std::to_string(i++), s, {{"x", 1}}, {}});
  return doc;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("defaults validate") {
    CHECK_NOTHROW(RunConfig{}.validate());
    for (const auto& name : command_names()) CHECK_NOTHROW(with({{"command", name.c_str()}}).validate());
  }

  TEST_CASE("invalid configurations") {
    const std::vector<std::vector<std::pair<const char*, const char*>>> bad = {
        {{"command", "nope"}},
        {{"p", "4"}},
        {{"p", "17"}},
        {{"p", "7"}, {"weight", "9,0"}},
        {{"weight", "0,5"}},
        {{"k", "5"}},
        {{"chi", "0,0,0,1"}},
        {{"chi", "0,0,1,2"}},
        {{"R", "9"}},
        {{"R_target", "4"}},
        {{"N", "5"}},
        {{"trials", "0"}},
        {{"bound", "0"}},
        {{"L", "9"}},
        {{"ideal", "T^5"}},
        {{"ideal", "X+1"}},
    };
    for (const auto& kv : bad) {
      RunConfig c;
      for (const auto& [k, v] : kv) c.set(k, v);
      INFO(kv.back().first, "=", kv.back().second);
      CHECK_THROWS_AS(c.validate(), ConfigError);
    }
  }

  TEST_CASE("malformed values and keys") {
    RunConfig c;
    CHECK_THROWS_AS(c.set("p", "three"), ConfigError);
    CHECK_THROWS_AS(c.set("p", "3x"), ConfigError);
    CHECK_THROWS_AS(c.set("p", ""), ConfigError);
    CHECK_THROWS_AS(c.set("weight", "1"), ConfigError);
    CHECK_THROWS_AS(c.set("chi", "1,2,3"), ConfigError);
    CHECK_THROWS_AS(c.set("seed", "-1"), ConfigError);
    CHECK_THROWS_AS(c.set("timing", "yes"), ConfigError);
    CHECK_THROWS_WITH_AS(c.set("colour", "1"), "unknown configuration key 'colour'", ConfigError);
    c.set("weight", "2,1");
    CHECK(c.r == 2);
    CHECK(c.m == 1);
    c.set("n_max", "5");
    CHECK(c.n_max == 5);
  }

  TEST_CASE("json configuration") {
    RunConfig c;
    c.merge_json(nlohmann::json::parse(R"({"p": 5, "weight": [3, 1], "ideal": "T^2", "timing": true, "chi": "0,1,2,3"})"));
    CHECK(c.p == 5);
    CHECK(c.r == 3);
    CHECK(c.m == 1);
    CHECK(c.ideal == "T^2");
    CHECK(c.timing);
    CHECK(c.s2 == 3);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(c.merge_json(nlohmann::json::array()), ConfigError);
    CHECK_THROWS_AS(c.merge_json(nlohmann::json::parse(R"({"p": 2.5})")), ConfigError);
    CHECK_THROWS_AS(c.merge_json(nlohmann::json::parse(R"({"weight": [1, "a"]})")), ConfigError);
    // Round trip through the emitted configuration.
    RunConfig d;
    nlohmann::json j = c.to_json();
    d.merge_json(j);
    CHECK(d.to_json() == j);
  }

  TEST_CASE("exit code contract") {
    using S = CheckStatus;
    const std::vector<S> all = {S::pass, S::fail, S::inconclusive};
    // Every multiset of up to three statuses.
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> idx(n, 0);
      while (true) {
        std::vector<S> st;
        bool any_fail = false, any_inc = false;
        for (int i : idx) {
          st.push_back(all[i]);
          any_fail |= all[i] == S::fail;
          any_inc |= all[i] == S::inconclusive;
        }
        const int expected = any_fail ? 2 : any_inc ? 3 : 0;
        const ReportDocument doc = synthetic(st);
        CHECK(exit_code(doc) == expected);
        CHECK(doc.to_json()["exit_code"] == expected);
        int k = n - 1;
        while (k >= 0 && idx[k] == 2) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
      }
    }
  }

  TEST_CASE("json report shape") {
    const ReportDocument doc = synthetic({CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive});
    const auto j = doc.to_json();
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["checks"].size() == 3);
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["summary"]["inconclusive"] == 1);
    CHECK_FALSE(j.contains("wall_clock_ms"));
    const std::string text = emit_report(doc, ReportFormat::json);
    CHECK(text == emit_report(doc, ReportFormat::json));
    CHECK(text.find("\"checks\"") < text.find("\"command\""));
    const auto empty = synthetic({}).to_json();
    CHECK(empty["checks"].is_array());
    CHECK(empty["checks"].empty());
    CHECK(empty["exit_code"] == 0);
  }

  TEST_CASE("text report") {
    ReportDocument doc = synthetic({CheckStatus::pass, CheckStatus::fail, CheckStatus::fail});
    const std::string text = emit_report(doc, ReportFormat::text);
    std::size_t fails = 0;
    for (std::size_t at = text.find("\nFAIL "); at != std::string::npos; at = text.find("\nFAIL ", at + 1)) ++fails;
    CHECK(fails == 2);
    CHECK(text.find("summary: 1 passed, 2 failed, 0 inconclusive") != std::string::npos);
    CHECK(text.find("wall clock") == std::string::npos);
    doc.config.timing = true;
    doc.wall_clock_ms = 12;
    CHECK(emit_report(doc, ReportFormat::text).find("wall clock: 12 ms") != std::string::npos);
    CHECK(doc.to_json()["wall_clock_ms"] == 12);
  }

  TEST_CASE("runs are deterministic") {
    const RunConfig c = with({{"command", "identities"}, {"trials", "20"}, {"seed", "7"}});
    const ReportDocument a = run_command(c), b = run_command(c);
    CHECK(emit_report(a, ReportFormat::json) == emit_report(b, ReportFormat::json));
    CHECK(exit_code(a) == 0);
    const ReportDocument other = run_command(with({{"command", "identities"}, {"trials", "20"}, {"seed", "8"}}));
    CHECK(other.to_json()["seed"] == 8);
    CHECK_THROWS_AS(run_command(with({{"p", "4"}})), ConfigError);
  }
}
