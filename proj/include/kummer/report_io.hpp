#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kummer/report.hpp"

namespace kummer {

using Json = nlohmann::ordered_json;

inline Json to_json(const Check& c) {
  return Json{{"name", c.name},
              {"expected", c.expected},
              {"actual", c.actual},
              {"citation", c.citation},
              {"status", to_string(c.status)}};
}

inline Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json j;
  j["k"] = r.k;
  j["t"] = r.t ? Json(*r.t) : Json(nullptr);
  j["checks"] = std::move(checks);
  j["runtime_ms"] = r.runtime_ms;
  j["version"] = r.version;
  return j;
}

inline Check check_from_json(const Json& j) {
  return {j.at("name").get<std::string>(), j.at("expected").get<std::string>(), j.at("actual").get<std::string>(),
          j.at("citation").get<std::string>(), status_from_string(j.at("status").get<std::string>())};
}

inline VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.k = j.at("k").get<long>();
  if (!j.at("t").is_null()) r.t = j.at("t").get<int>();
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  r.version = j.at("version").get<std::string>();
  return r;
}

inline std::string serialize_json(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

inline VerificationReport parse_json(const std::string& s) { return report_from_json(Json::parse(s)); }

/// Aligned table: status, name, expected, actual, citation.
inline std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "k = " << r.k;
  if (r.t) os << ", t = " << *r.t;
  os << ", version " << r.version << ", " << r.runtime_ms << " ms\n";
  // long values overflow their column rather than widening it
  const std::size_t cap = 40;
  std::size_t ws = 6, wn = 4, we = 8, wa = 6;
  for (const auto& c : r.checks) {
    ws = std::max(ws, std::string(to_string(c.status)).size());
    wn = std::max(wn, std::min(cap, c.name.size()));
    we = std::max(we, std::min(cap, c.expected.size()));
    wa = std::max(wa, std::min(cap, c.actual.size()));
  }
  auto row = [&](const std::string& s, const std::string& n, const std::string& e, const std::string& a,
                 const std::string& c) {
    auto pad = [](const std::string& x, std::size_t w) { return std::string(x.size() < w ? w - x.size() + 2 : 2, ' '); };
    os << s << pad(s, ws) << n << pad(n, wn) << e << pad(e, we) << a << pad(a, wa) << c << '\n';
  };
  row("status", "name", "expected", "actual", "citation");
  for (const auto& c : r.checks) row(to_string(c.status), c.name, c.expected, c.actual, c.citation);
  std::size_t failed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.status == Status::fail; });
  os << r.checks.size() << " checks, " << failed << " failed\n";
  return os.str();
}

}  // namespace kummer
