#include "clnode/report.hpp"

namespace clnode {

bool Report::passed(bool strict_conjectures) const { return first_failure(strict_conjectures) == nullptr; }

const Check* Report::first_failure(bool strict_conjectures) const {
  for (const auto& c : checks)
    if (!c.pass && (strict_conjectures || !c.conjectural)) return &c;
  return nullptr;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

void Report::add(std::string id, std::string ref, Json lhs, Json rhs, bool pass, bool conjectural) {
  checks.push_back(Check{std::move(id), std::move(ref), std::move(lhs), std::move(rhs), pass, conjectural});
}

Json certificate_json(const Report& r, bool strict_conjectures) {
  Json j;
  j["suite"] = r.name;
  j["status"] = r.passed(strict_conjectures) ? "pass" : "fail";
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += !c.pass;
  j["check-count"] = r.checks.size();
  j["failed-count"] = failed;
  auto& checks = j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["check-id"] = c.id;
    e["paper-ref"] = c.ref;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["status"] = c.pass ? "pass" : (c.conjectural ? "fail (conjectural)" : "fail");
    checks.push_back(e);
  }
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace clnode
