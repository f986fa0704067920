#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dias {

enum class Verdict { kHolds, kFails, kOutsideRegime };

std::string_view to_string(Verdict v);

// A checked relation of the form lhs <= rhs + tolerance. Every report type fixes
// which quantity sits on which side; `margin` is rhs - lhs.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::kHolds;
  bool equality = false;
  // Auxiliary quantities (inputs echo, intermediate values) in insertion order.
  std::vector<std::pair<std::string, double>> values;
  // Numeric settings that produced the result.
  std::vector<std::pair<std::string, double>> settings;
  std::string note;

  bool holds() const { return verdict == Verdict::kHolds; }
  double value(std::string_view key) const;
};

// Fills margin and verdict from lhs, rhs and tolerance.
InequalityReport make_report(std::string name, double lhs, double rhs, double tolerance);

}  // namespace dias
