#include "isogauge/report.hpp"

#include <cmath>
#include <stdexcept>

namespace isogauge {

void InequalityReport::add(std::string name, double value) {
  functionals.emplace_back(std::move(name), value);
}

bool InequalityReport::has(std::string_view name) const {
  for (const auto& [n, v] : functionals) {
    if (n == name) return true;
  }
  return false;
}

double InequalityReport::get(std::string_view name) const {
  for (const auto& [n, v] : functionals) {
    if (n == name) return v;
  }
  throw std::out_of_range("report " + check + " has no functional " + std::string(name));
}

void InequalityReport::settle(double left, double right, double scale_hint) {
  lhs = left;
  rhs = right;
  margin = rhs - lhs;
  scale = scale_hint;
  equality = std::abs(margin) <= tolerance * scale;
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    require(false, "non-finite side");
    return;
  }
  if (relation == Relation::Identity) {
    require(equality, "identity residual exceeds tolerance");
  } else {
    require(margin >= -tolerance * scale, "inequality violated beyond tolerance");
  }
}

void InequalityReport::require(bool condition, std::string message) {
  if (!condition) {
    passed = false;
    diagnostics.push_back(std::move(message));
  }
}

}  // namespace isogauge
