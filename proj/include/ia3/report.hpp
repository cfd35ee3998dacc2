// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ia3 {

enum class Status { Pass, Fail, Finding };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Finding: return "finding";
  }
  return "?";
}

inline Status status_of(bool ok) { return ok ? Status::Pass : Status::Fail; }

struct Check {
  std::string id;
  Status status = Status::Pass;
  std::string summary;
  nlohmann::json details = nlohmann::json::object();
};

// Ordered check records plus metadata. Everything nondeterministic
// (timestamps, wall clock) lives under "metadata" only.
class Report {
 public:
  explicit Report(std::string suite) : suite_(std::move(suite)), start_(std::chrono::steady_clock::now()) {}

  const std::string& suite() const noexcept { return suite_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }

  Check& add(Check c) { return checks_.emplace_back(std::move(c)); }
  void add_all(const std::vector<Check>& cs) { checks_.insert(checks_.end(), cs.begin(), cs.end()); }
  void merge(const Report& other) { add_all(other.checks_); }

  // Deterministic facts about the run (selected conventions, inputs).
  nlohmann::json& facts() { return facts_; }

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.status == s;
    return n;
  }
  bool ok() const { return count(Status::Fail) == 0; }
  int exit_code() const { return ok() ? 0 : 1; }

  nlohmann::json to_json(bool with_metadata = true) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_)
      checks.push_back({{"id", c.id}, {"status", to_string(c.status)}, {"summary", c.summary}, {"details", c.details}});
    nlohmann::json out = {{"suite", suite_},
                          {"checks", checks},
                          {"facts", facts_},
                          {"totals",
                           {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"finding", count(Status::Finding)}}}};
    if (with_metadata) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      const std::time_t now = std::time(nullptr);
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      out["metadata"] = {{"timestamp", stamp}, {"wall_clock_seconds", secs}, {"compiler", __VERSION__}};
    }
    return out;
  }

  std::string to_text() const {
    std::string out = "suite: " + suite_ + "\n";
    for (const auto& c : checks_) out += "[" + to_string(c.status) + "] " + c.id + ": " + c.summary + "\n";
    out += "totals: " + std::to_string(count(Status::Pass)) + " pass, " + std::to_string(count(Status::Fail)) +
           " fail, " + std::to_string(count(Status::Finding)) + " finding\n";
    return out;
  }

 private:
  std::string suite_;
  std::vector<Check> checks_;
  nlohmann::json facts_ = nlohmann::json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ia3
