#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isogauge {

enum class Relation {
  Identity,    // lhs = rhs is asserted
  Inequality,  // lhs <= rhs is asserted
};

/// Outcome of one certification: named functionals, the two compared sides,
/// margin = rhs - lhs, and the resolution and tolerance that produced them.
///
/// `equality` holds when |margin| <= tolerance * scale. An identity passes
/// only with equality; an inequality passes when margin >= -tolerance * scale.
/// Extra assertions (sign conditions, side chains) are folded in with
/// `require`, each failing one leaving a diagnostic line.
struct InequalityReport {
  std::string check;
  Relation relation = Relation::Inequality;
  std::vector<std::pair<std::string, double>> functionals;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double scale = 1.0;
  bool equality = false;
  bool passed = true;
  std::size_t resolution = 0;
  double tolerance = 0.0;
  std::vector<std::string> diagnostics;

  void add(std::string name, double value);
  bool has(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  double get(std::string_view name) const;

  /// Sets lhs, rhs, margin and equality, and applies the relation's verdict.
  void settle(double left, double right, double scale_hint);

  void require(bool condition, std::string message);
};

}  // namespace isogauge
