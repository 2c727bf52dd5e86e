#include "hml/report.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hml {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

EstimateReport& EstimateReport::param(std::string key, ParamValue value) {
  for (auto& [k, v] : parameters)
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  parameters.emplace_back(std::move(key), std::move(value));
  return *this;
}

EstimateReport& EstimateReport::fit(std::string key, double value) {
  for (auto& [k, v] : fitted)
    if (k == key) {
      v = value;
      return *this;
    }
  fitted.emplace_back(std::move(key), value);
  return *this;
}

EstimateReport& EstimateReport::measure(std::string input, double value) {
  measurements.push_back({std::move(input), value});
  return *this;
}

EstimateReport& EstimateReport::note(std::string text) {
  notes.push_back(std::move(text));
  return *this;
}

double EstimateReport::fitted_value(const std::string& key) const {
  for (const auto& [k, v] : fitted)
    if (k == key) return v;
  throw std::out_of_range("EstimateReport: no fitted constant named " + key);
}

bool EstimateReport::has_fitted(const std::string& key) const {
  for (const auto& [k, v] : fitted)
    if (k == key) return true;
  return false;
}

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

nlohmann::ordered_json param_json(const ParamValue& p) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return number(v);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          auto a = nlohmann::ordered_json::array();
          for (double x : v) a.push_back(number(x));
          return a;
        } else {
          return v;
        }
      },
      p);
}

std::string param_text(const ParamValue& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        std::ostringstream s;
        s << std::setprecision(6);
        if constexpr (std::is_same_v<T, std::vector<double>>) {
          s << '[';
          for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
          s << ']';
        } else {
          s << v;
        }
        return s.str();
      },
      p);
}

}  // namespace

std::string EstimateReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["verdict"] = to_string(verdict);
  j["provenance"] = provenance;
  auto& params = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = param_json(v);
  auto& fits = j["fitted_constants"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fitted) fits[k] = number(v);
  auto& ms = j["measurements"] = nlohmann::ordered_json::array();
  for (const auto& m : measurements) ms.push_back({{"input", m.input}, {"value", number(m.value)}});
  j["notes"] = notes;
  return j.dump(indent);
}

std::string EstimateReport::to_table() const {
  std::ostringstream s;
  s << std::setprecision(6);
  s << name << "  [" << to_string(verdict) << "]\n";
  if (!provenance.empty()) s << "  checks: " << provenance << '\n';
  for (const auto& [k, v] : parameters) s << "  " << std::left << std::setw(28) << k << param_text(v) << '\n';
  for (const auto& [k, v] : fitted) s << "  " << std::left << std::setw(28) << k << v << '\n';
  for (const auto& n : notes) s << "  note: " << n << '\n';
  return s.str();
}

std::string EstimateReport::to_csv() const {
  std::ostringstream s;
  s << std::setprecision(17);
  if (!lattice_columns.empty()) {
    for (std::size_t i = 0; i < lattice_columns.size(); ++i) s << (i ? "," : "") << lattice_columns[i];
    s << '\n';
    for (const auto& row : lattice_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
      s << '\n';
    }
    return s.str();
  }
  s << "input,value\n";
  for (const auto& m : measurements) s << '"' << m.input << "\"," << m.value << '\n';
  return s.str();
}

}  // namespace hml
