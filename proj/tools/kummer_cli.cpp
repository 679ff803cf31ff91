#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kummer/report_io.hpp"
#include "kummer/verify.hpp"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3, kIo = 4 };

struct Common {
  long k = 1;
  int t = 1;
  std::string format = "text";
  std::string out;
  std::uint64_t budget = kummer::kDefaultBudget;
  unsigned threads = 1;
  bool all_t = false;
  bool inject_fault = false;
  std::vector<std::string> suites;
  bool suites_given = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_k) {
  if (with_k) cmd->add_option("--k", c.k, "polarization parameter, M^2 = k(k+1)")->required();
  cmd->add_option("--t", c.t, "index of the curve A_t (1..16)");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", c.out, "write the report to this path instead of stdout");
  cmd->add_option("--budget", c.budget, "candidate budget for enumerations");
  cmd->add_option("--threads", c.threads, "worker threads for (-2)-class enumeration");
  cmd->add_flag("--all-t", c.all_t, "run t = 1..16");
  cmd->add_flag("--inject-fault", c.inject_fault)->group("");
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kPass;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    std::cerr << "error: cannot write " << out << "\n";
    return kIo;
  }
  return kPass;
}

std::string render(const kummer::VerificationReport& r, const std::string& format) {
  return format == "json" ? kummer::serialize_json(r) : kummer::render_text(r);
}

kummer::VerifyOptions options_from(const Common& c, std::set<kummer::Suite> suites) {
  kummer::VerifyOptions o;
  o.t = c.t;
  o.suites = std::move(suites);
  o.budget = c.budget;
  o.threads = c.threads;
  o.inject_fault = c.inject_fault;
  return o;
}

int run_verify(const Common& c, std::set<kummer::Suite> suites) {
  if (c.suites_given) {
    suites.clear();
    for (const auto& s : c.suites)
      if (!s.empty()) suites.insert(kummer::suite_from_string(s));
  }
  const auto opt = options_from(c, std::move(suites));
  const auto outcome = c.all_t ? kummer::cmd_verify_all_t(c.k, opt) : kummer::cmd_verify(c.k, opt);
  if (int rc = emit(render(outcome.report, c.format), c.out); rc != kPass) return rc;
  if (outcome.budget_exceeded) {
    std::cerr << "error: " << outcome.error << "\n";
    return kBudget;
  }
  return outcome.report.passed() ? kPass : kCheckFailed;
}

std::string cell(const kummer::VerificationReport& r, const std::string& name) {
  const auto* c = r.find(name);
  return c ? c->actual : "-";
}

int run_sweep(const Common& c, long k_min, long k_max) {
  const auto outcomes = kummer::cmd_sweep(k_min, k_max, options_from(c, kummer::all_suites()));
  std::string text;
  if (c.format == "json") {
    kummer::Json j;
    j["k_min"] = k_min;
    j["k_max"] = k_max;
    j["reports"] = kummer::Json::array();
    for (const auto& o : outcomes) j["reports"].push_back(kummer::to_json(o.report));
    text = j.dump(2) + "\n";
  } else {
    const std::string tn = std::to_string(c.t);
    std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
        {"k", {}}, {"A" + tn + ".A" + tn + "'", {}}, {"L^2", {}}, {"salem_trace", {}},
        {"kummer_structure_count", {}}, {"status", {}}};
    for (const auto& o : outcomes) {
      const auto& r = o.report;
      rows[0].second.push_back(std::to_string(r.k));
      rows[1].second.push_back(cell(r, "A" + tn + ".A" + tn + "'"));
      rows[2].second.push_back(cell(r, "L^2"));
      rows[3].second.push_back(cell(r, "salem_trace"));
      rows[4].second.push_back(cell(r, "kummer_structure_count"));
      rows[5].second.push_back(o.budget_exceeded ? "budget" : (r.passed() ? "pass" : "fail"));
    }
    std::size_t w0 = 0, w = 0;
    for (const auto& [name, vals] : rows) {
      w0 = std::max(w0, name.size());
      for (const auto& v : vals) w = std::max(w, v.size());
    }
    std::ostringstream os;
    for (const auto& [name, vals] : rows) {
      os << name << std::string(w0 - name.size(), ' ');
      for (const auto& v : vals) os << "  " << std::string(w - v.size(), ' ') << v;
      os << '\n';
    }
    for (const auto& o : outcomes)
      for (const auto& ch : o.report.checks)
        if (ch.status == kummer::Status::fail)
          os << "k=" << o.report.k << " failed: " << ch.name << " expected " << ch.expected << " actual " << ch.actual
             << '\n';
    text = os.str();
  }
  if (int rc = emit(text, c.out); rc != kPass) return rc;
  bool budget = false, pass = true;
  for (const auto& o : outcomes) {
    budget = budget || o.budget_exceeded;
    pass = pass && o.report.passed();
  }
  if (budget) return kBudget;
  return pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Neron-Severi lattice of Km(B), M^2 = k(k+1)"};
  app.set_version_flag("--version", std::string(kummer::kToolVersion));
  app.require_subcommand(1);

  Common c;
  long k_min = 1, k_max = 1;
  struct Sub {
    const char* name;
    const char* help;
    std::set<kummer::Suite> suites;
  };
  using kummer::Suite;
  const std::vector<Sub> subs = {
      {"verify", "run every suite for one k", kummer::all_suites()},
      {"ns", "NS lattice: discriminant group, form and coefficient patterns", {Suite::ns}},
      {"nikulin", "second Nikulin configuration, nef/big and model certificates", {Suite::nikulin}},
      {"isometry", "involutions, Salem factor and discriminant action", {Suite::isometry}},
      {"covers", "bidouble cover invariants and singularity configurations", {Suite::covers}},
      {"pell", "Pell equation, rank-2 (-2)-classes and the obstruction", {Suite::pell}},
      {"glue", "gluing with T_X, isometry extension and Lefschetz number", {Suite::glue}},
  };
  std::vector<CLI::App*> cmds;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, c, true);
    cmds.push_back(cmd);
  }
  cmds[0]->add_option("--suites", c.suites, "comma-separated subset of ns,nikulin,isometry,pell,glue,covers")
      ->delimiter(',')
      ->each([&](const std::string&) { c.suites_given = true; });
  CLI::App* sweep = app.add_subcommand("sweep", "run verify for a range of k");
  add_common(sweep, c, false);
  sweep->add_option("--k-min", k_min, "first k")->required();
  sweep->add_option("--k-max", k_max, "last k")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  // "--suites ''" selects nothing
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--suites") c.suites_given = true;

  try {
    if (sweep->parsed()) return run_sweep(c, k_min, k_max);
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (cmds[i]->parsed()) return run_verify(c, subs[i].suites);
  } catch (const kummer::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const kummer::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  }
  return kUsage;
}
