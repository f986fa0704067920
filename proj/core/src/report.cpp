#include "dias/report.hpp"

#include <algorithm>
#include <limits>

namespace dias {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kOutsideRegime:
      return "outside-regime";
  }
  return "unknown";
}

double InequalityReport::value(std::string_view key) const {
  auto it = std::find_if(values.begin(), values.end(),
                         [&](const auto& kv) { return kv.first == key; });
  return it == values.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

InequalityReport make_report(std::string name, double lhs, double rhs, double tolerance) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.verdict = lhs <= rhs + tolerance ? Verdict::kHolds : Verdict::kFails;
  return r;
}

}  // namespace dias
