#include "hypdyn/report.hpp"

#include <cmath>
#include <stdexcept>

namespace hypdyn {

nlohmann::ordered_json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

void ScenarioReport::measure(const std::string& name, double value) { measured_[name] = json_number(value); }

void ScenarioReport::measure(const std::string& name, Point value) {
  measured_[name] = nlohmann::ordered_json::array({json_number(value.real()), json_number(value.imag())});
}

void ScenarioReport::measure(const std::string& name, const std::vector<double>& values) {
  auto arr = nlohmann::ordered_json::array();
  for (const double v : values) arr.push_back(json_number(v));
  measured_[name] = std::move(arr);
}

const Assertion& ScenarioReport::add(Assertion a) {
  assertions_.push_back(std::move(a));
  return assertions_.back();
}

const Assertion& ScenarioReport::check_le(const std::string& name, double lhs, double rhs) {
  const double margin = rhs - lhs;
  return add({name, "le", lhs, rhs, margin, margin >= 0.0});
}

const Assertion& ScenarioReport::check_lt(const std::string& name, double lhs, double rhs) {
  const double margin = rhs - lhs;
  return add({name, "lt", lhs, rhs, margin, margin > 0.0});
}

const Assertion& ScenarioReport::check_ge(const std::string& name, double lhs, double rhs) {
  const double margin = lhs - rhs;
  return add({name, "ge", lhs, rhs, margin, margin >= 0.0});
}

const Assertion& ScenarioReport::check_gt(const std::string& name, double lhs, double rhs) {
  const double margin = lhs - rhs;
  return add({name, "gt", lhs, rhs, margin, margin > 0.0});
}

const Assertion& ScenarioReport::check(const std::string& name, bool condition) {
  const double lhs = condition ? 1.0 : 0.0;
  return add({name, "true", lhs, 1.0, lhs - 1.0, condition});
}

bool ScenarioReport::pass() const {
  if (assertions_.empty()) return false;
  for (const auto& a : assertions_) {
    if (!a.pass) return false;
  }
  return true;
}

const Assertion& ScenarioReport::assertion(const std::string& name) const {
  for (const auto& a : assertions_) {
    if (a.name == name) return a;
  }
  throw std::out_of_range("no assertion named '" + name + "' in scenario " + id_);
}

nlohmann::ordered_json ScenarioReport::to_json() const {
  nlohmann::ordered_json out;
  out["scenario"] = id_;
  out["params"] = params_;
  out["measured"] = measured_;
  auto list = nlohmann::ordered_json::array();
  for (const auto& a : assertions_) {
    nlohmann::ordered_json item;
    item["name"] = a.name;
    item["op"] = a.op;
    item["lhs"] = json_number(a.lhs);
    item["rhs"] = json_number(a.rhs);
    item["margin"] = json_number(a.margin);
    item["pass"] = a.pass;
    list.push_back(std::move(item));
  }
  out["assertions"] = std::move(list);
  out["pass"] = pass();
  return out;
}

void ScenarioReport::merge(const ScenarioReport& other, const std::string& prefix) {
  for (const auto& item : other.params_.items()) params_[prefix + "/" + item.key()] = item.value();
  for (const auto& item : other.measured_.items()) measured_[prefix + "/" + item.key()] = item.value();
  for (Assertion a : other.assertions_) {
    a.name = prefix + "/" + a.name;
    assertions_.push_back(std::move(a));
  }
}

void ScenarioReport::merge_measured(const ScenarioReport& other, const std::string& prefix) {
  for (const auto& item : other.params_.items()) params_[prefix + "/" + item.key()] = item.value();
  for (const auto& item : other.measured_.items()) measured_[prefix + "/" + item.key()] = item.value();
  measured_[prefix + "/pass"] = other.pass();
}

}  // namespace hypdyn
