#include "coxshadow/report.hpp"

#include <sstream>

#include "json.hpp"

namespace coxshadow {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Vacuous: return "vacuous";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::Fail: return "fail";
  }
  return "?";
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks_) {
    CheckResult r = c;
    if (!other.title_.empty()) r.name = other.title_ + "." + r.name;
    checks_.push_back(std::move(r));
  }
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

CheckStatus Report::overall() const {
  bool inconclusive = false;
  for (const auto& c : checks_) {
    if (c.status == CheckStatus::Fail) return CheckStatus::Fail;
    if (c.status == CheckStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? CheckStatus::Inconclusive : CheckStatus::Pass;
}

bool Report::ok() const { return overall() == CheckStatus::Pass; }

int Report::exit_code() const {
  switch (overall()) {
    case CheckStatus::Fail: return 4;
    case CheckStatus::Inconclusive: return 3;
    default: return 0;
  }
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["status"] = to_string(overall());
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json x;
    x["name"] = c.name;
    x["status"] = to_string(c.status);
    x["instances"] = c.instances;
    if (!c.detail.empty()) x["detail"] = c.detail;
    if (!c.witnesses.empty()) x["witnesses"] = c.witnesses;
    arr.push_back(std::move(x));
  }
  j["checks"] = std::move(arr);
  return j.dump(2);
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << to_string(c.status) << "  " << c.name << "  (" << c.instances << ")";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
    for (const auto& w : c.witnesses) os << "    " << w << '\n';
  }
  return os.str();
}

CheckResult make_check(std::string name, std::size_t instances, std::size_t failures,
                       std::vector<std::string> witnesses, std::size_t undecided,
                       std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.instances = instances;
  r.detail = std::move(detail);
  if (witnesses.size() > 10) witnesses.resize(10);
  r.witnesses = std::move(witnesses);
  if (failures > 0) r.status = CheckStatus::Fail;
  else if (undecided > 0) r.status = CheckStatus::Inconclusive;
  else if (instances == 0) r.status = CheckStatus::Vacuous;
  else r.status = CheckStatus::Pass;
  return r;
}

}  // namespace coxshadow
