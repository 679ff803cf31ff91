#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kummer {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Thrown when an enumeration would exceed its candidate budget.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error(what + ": needs " + std::to_string(needed) + " candidates, budget " + std::to_string(budget)),
        needed(needed),
        budget(budget) {}
  std::uint64_t needed;
  std::uint64_t budget;
};

enum class Status { pass, fail, not_applicable, paper_established };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not-applicable";
    case Status::paper_established: return "paper-established";
  }
  return "fail";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "not-applicable") return Status::not_applicable;
  if (s == "paper-established") return Status::paper_established;
  throw std::invalid_argument("unknown status '" + s + "'");
}

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  std::string citation;
  Status status = Status::fail;

  friend bool operator==(const Check&, const Check&) = default;
};

struct VerificationReport {
  long k = 0;
  std::optional<int> t;
  std::vector<Check> checks;
  std::int64_t runtime_ms = 0;
  std::string version = kToolVersion;

  /// Records a check whose status is expected == actual.
  Check& expect(std::string name, std::string expected, std::string actual, std::string citation) {
    Status s = expected == actual ? Status::pass : Status::fail;
    checks.push_back({std::move(name), std::move(expected), std::move(actual), std::move(citation), s});
    return checks.back();
  }

  Check& expect_true(std::string name, bool ok, std::string citation) {
    return expect(std::move(name), "true", ok ? "true" : "false", std::move(citation));
  }

  Check& note(std::string name, std::string expected, std::string actual, std::string citation, Status s) {
    checks.push_back({std::move(name), std::move(expected), std::move(actual), std::move(citation), s});
    return checks.back();
  }

  void append(const VerificationReport& other, const std::string& prefix = "") {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

}  // namespace kummer
