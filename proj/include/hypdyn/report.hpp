#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hypdyn/hypgeo.hpp"

namespace hypdyn {

/// A scenario could not be set up or violated one of its own guards.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lhs OP rhs, with margin oriented so that a passing check has margin >= 0
/// (> 0 for the strict operators).
struct Assertion {
  std::string name;
  std::string op;  // "le", "lt", "ge", "gt", "true"
  double lhs;
  double rhs;
  double margin;
  bool pass;
};

/// Structured pass/fail record of one scenario. Every assertion keeps both
/// sides, so a report can be re-checked from its JSON alone.
class ScenarioReport {
 public:
  explicit ScenarioReport(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }

  void param(const std::string& name, nlohmann::ordered_json value) { params_[name] = std::move(value); }
  void measure(const std::string& name, double value);
  void measure(const std::string& name, Point value);
  void measure(const std::string& name, const std::vector<double>& values);
  void measure(const std::string& name, const std::string& value) { measured_[name] = value; }

  const Assertion& check_le(const std::string& name, double lhs, double rhs);
  const Assertion& check_lt(const std::string& name, double lhs, double rhs);
  const Assertion& check_ge(const std::string& name, double lhs, double rhs);
  const Assertion& check_gt(const std::string& name, double lhs, double rhs);
  const Assertion& check(const std::string& name, bool condition);

  /// Conjunction of all assertions; a report without assertions fails.
  bool pass() const;
  const std::vector<Assertion>& assertions() const { return assertions_; }
  /// Assertion by name; throws std::out_of_range.
  const Assertion& assertion(const std::string& name) const;
  const nlohmann::ordered_json& measured() const { return measured_; }
  const nlohmann::ordered_json& params() const { return params_; }

  /// {"scenario", "params", "measured", "assertions", "pass"}.
  nlohmann::ordered_json to_json() const;

  /// Appends `other`'s content under `prefix/`.
  void merge(const ScenarioReport& other, const std::string& prefix);
  /// Same, without the assertions.
  void merge_measured(const ScenarioReport& other, const std::string& prefix);

 private:
  const Assertion& add(Assertion a);

  std::string id_;
  nlohmann::ordered_json params_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json measured_ = nlohmann::ordered_json::object();
  std::vector<Assertion> assertions_;
};

/// JSON-safe number: non-finite values become the strings "inf", "-inf", "nan".
nlohmann::ordered_json json_number(double x);

}  // namespace hypdyn
