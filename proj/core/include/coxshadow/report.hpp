#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace coxshadow {

/// Vacuous: the property held because no instance met its hypothesis.
/// Inconclusive: the ball was too small to decide.
enum class CheckStatus { Pass, Vacuous, Inconclusive, Fail };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::size_t instances = 0;
  std::string detail;
  std::vector<std::string> witnesses;

  bool ok() const { return status == CheckStatus::Pass || status == CheckStatus::Vacuous; }
};

class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  void add(CheckResult r) { checks_.push_back(std::move(r)); }
  void merge(const Report& other);
  /// First check with this name, or nullptr.
  const CheckResult* find(const std::string& name) const;

  /// Fail beats Inconclusive beats Pass; an empty report passes.
  CheckStatus overall() const;
  bool ok() const;
  /// 0 pass, 3 inconclusive, 4 property failure.
  int exit_code() const;
  std::string to_json() const;
  std::string to_text() const;

 private:
  std::string title_;
  std::vector<CheckResult> checks_;
};

/// Builds a result from counts: Fail if any failure, Inconclusive if any
/// undecided instance, Vacuous if nothing was checked.
CheckResult make_check(std::string name, std::size_t instances, std::size_t failures,
                       std::vector<std::string> witnesses, std::size_t undecided = 0,
                       std::string detail = {});

}  // namespace coxshadow
