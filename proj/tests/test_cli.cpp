#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "kummer/report_io.hpp"
#include "kummer/verify.hpp"

using namespace kummer;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(KUMMER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

VerificationReport without_runtime(VerificationReport r) {
  r.runtime_ms = 0;
  return r;
}

VerifyOptions suites(std::set<Suite> s) {
  VerifyOptions o;
  o.suites = std::move(s);
  return o;
}

}  // namespace

TEST(ReportJson, RoundTripIsByteExact) {
  const auto r = cmd_verify(2).report;
  const std::string a = serialize_json(r);
  const auto back = parse_json(a);
  EXPECT_EQ(serialize_json(back), a);
  EXPECT_EQ(back.checks.size(), r.checks.size());
  const Json j = Json::parse(a);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"k", "t", "checks", "runtime_ms", "version"}));
  keys.clear();
  for (const auto& [key, value] : j["checks"][0].items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "expected", "actual", "citation", "status"}));
  for (const auto& c : j["checks"])
    EXPECT_TRUE(c["status"] == "pass" || c["status"] == "fail" || c["status"] == "paper-established" ||
                c["status"] == "not-applicable")
        << c["status"];
}

TEST(ReportJson, AllTHasNullT) {
  auto o = cmd_verify_all_t(1, suites({Suite::pell}));
  EXPECT_FALSE(o.report.t.has_value());
  EXPECT_TRUE(Json::parse(serialize_json(o.report))["t"].is_null());
  EXPECT_NE(o.report.find("t=16:L^2"), nullptr);
}

TEST(ReportText, HeaderAndFooter) {
  const auto r = cmd_verify(1, suites({Suite::covers})).report;
  const std::string s = render_text(r);
  EXPECT_EQ(s.rfind("k = 1, t = 1, version ", 0), 0u);
  EXPECT_NE(s.find(std::to_string(r.checks.size()) + " checks, 0 failed\n"), std::string::npos);
}

TEST(Verify, Deterministic) {
  for (long k : {1L, 3L}) {
    const auto a = without_runtime(cmd_verify(k).report);
    const auto b = without_runtime(cmd_verify(k).report);
    EXPECT_EQ(serialize_json(a), serialize_json(b));
    VerifyOptions threaded;
    threaded.threads = 4;
    EXPECT_EQ(serialize_json(a), serialize_json(without_runtime(cmd_verify(k, threaded).report)));
  }
}

TEST(Verify, PassesForSmallK) {
  for (long k = 1; k <= 6; ++k) {
    const auto o = cmd_verify(k);
    EXPECT_FALSE(o.budget_exceeded);
    for (const auto& c : o.report.checks) EXPECT_NE(c.status, Status::fail) << k << " " << c.name << " " << c.actual;
  }
}

TEST(Verify, LabelEquivariance) {
  for (long k = 1; k <= 3; ++k) {
    VerifyOptions one = suites({Suite::nikulin, Suite::isometry, Suite::glue});
    VerifyOptions seven = one;
    seven.t = 7;
    const auto r1 = relabel(cmd_verify(k, one).report, 1, 1);
    const auto r7 = relabel(cmd_verify(k, seven).report, 1, 7);
    EXPECT_EQ(serialize_json(r1), serialize_json(r7)) << k;
  }
}

TEST(Verify, FaultInjectionFails) {
  VerifyOptions o;
  o.inject_fault = true;
  const auto r = cmd_verify(2, o).report;
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("A1'_orthogonal_to_other_A")->status, Status::fail);
}

TEST(Verify, BudgetStopsEarly) {
  VerifyOptions o;
  o.budget = 5;
  const auto out = cmd_verify(2, o);
  EXPECT_TRUE(out.budget_exceeded);
  EXPECT_EQ(out.report.find("budget")->status, Status::fail);
}

TEST(Verify, Validation) {
  EXPECT_THROW(cmd_verify(0), UsageError);
  EXPECT_THROW(cmd_verify(kMaxK + 1), UsageError);
  VerifyOptions o;
  o.t = 17;
  EXPECT_THROW(cmd_verify(2, o), UsageError);
  EXPECT_THROW(suite_from_string("lattice"), std::invalid_argument);
  EXPECT_THROW(cmd_sweep(3, 2), UsageError);
  const auto empty = cmd_verify(2, suites({}));
  EXPECT_TRUE(empty.report.checks.empty());
}

TEST(Verify, Relabel) {
  EXPECT_EQ(swap_curve_labels("2L-5A1, A7, A17", 1, 7), "2L-5A7, A1, A17");
  EXPECT_EQ(sort_list_string("[A9, A10, A2]"), "[A10, A2, A9]");
  EXPECT_EQ(sort_list_string("plain"), "plain");
}

TEST(Sweep, AscendingAndConsistent) {
  const auto outs = cmd_sweep(1, 4, suites({Suite::nikulin, Suite::pell}));
  ASSERT_EQ(outs.size(), 4u);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    EXPECT_EQ(outs[i].report.k, static_cast<long>(i + 1));
    EXPECT_EQ(serialize_json(without_runtime(outs[i].report)),
              serialize_json(without_runtime(cmd_verify(i + 1, suites({Suite::nikulin, Suite::pell})).report)));
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify --k 2").code, 0);
  EXPECT_EQ(run_cli("verify --k 2 --inject-fault").code, 1);
  EXPECT_EQ(run_cli("nikulin --k 2 --inject-fault").code, 1);
  EXPECT_EQ(run_cli("covers --k 2 --inject-fault").code, 0);
  EXPECT_EQ(run_cli("verify --k 0").code, 2);
  EXPECT_EQ(run_cli("verify --k 2 --t 17").code, 2);
  EXPECT_EQ(run_cli("verify").code, 2);
  EXPECT_EQ(run_cli("verify --k 2 --format xml").code, 2);
  EXPECT_EQ(run_cli("verify --k 2 --suites lattice").code, 2);
  EXPECT_EQ(run_cli("frobnicate --k 2").code, 2);
  EXPECT_EQ(run_cli("sweep --k-min 3 --k-max 2").code, 2);
  EXPECT_EQ(run_cli("nikulin --k 2 --budget 5").code, 3);
  EXPECT_EQ(run_cli("pell --k 2 --out /nonexistent-dir/report.json").code, 4);
}

TEST(Cli, JsonOutputMatchesLibrary) {
  const auto run = run_cli("pell --k 3 --format json");
  ASSERT_EQ(run.code, 0);
  const auto cli = without_runtime(parse_json(run.out));
  const auto lib = without_runtime(cmd_verify(3, suites({Suite::pell})).report);
  EXPECT_EQ(serialize_json(cli), serialize_json(lib));
}

TEST(Cli, OutFileAndSweep) {
  const auto path = std::filesystem::temp_directory_path() / "kummer_cli_test_report.json";
  std::filesystem::remove(path);
  ASSERT_EQ(run_cli("covers --k 2 --format json --out " + path.string()).code, 0);
  std::ifstream f(path);
  const Json j = Json::parse(f);
  EXPECT_EQ(j["k"], 2);
  std::filesystem::remove(path);

  const auto sweep = run_cli("sweep --k-min 1 --k-max 3 --format json");
  ASSERT_EQ(sweep.code, 0);
  const Json s = Json::parse(sweep.out);
  ASSERT_EQ(s["reports"].size(), 3u);
  EXPECT_EQ(s["reports"][2]["k"], 3);
  const auto text = run_cli("sweep --k-min 1 --k-max 2");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("A1.A1'"), std::string::npos);
}
