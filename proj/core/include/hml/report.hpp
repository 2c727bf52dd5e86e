#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hml {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// Worst-of combination: fail > inconclusive > pass.
Verdict combine(Verdict a, Verdict b);

using ParamValue = std::variant<double, std::int64_t, std::string, std::vector<double>>;

struct Measurement {
  std::string input;
  double value;
};

/// Structured outcome of one numerical check.  Field order in the JSON
/// form is fixed: name, verdict, provenance, parameters, fitted_constants,
/// measurements, notes.
struct EstimateReport {
  std::string name;
  std::string provenance;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::pair<std::string, ParamValue>> parameters;
  std::vector<std::pair<std::string, double>> fitted;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;

  /// Optional raw lattice for plotting: column names and rows.
  std::vector<std::string> lattice_columns;
  std::vector<std::vector<double>> lattice_rows;

  EstimateReport& param(std::string key, ParamValue value);
  EstimateReport& fit(std::string key, double value);
  EstimateReport& measure(std::string input, double value);
  EstimateReport& note(std::string text);

  /// Looks up a fitted constant; throws when absent.
  double fitted_value(const std::string& key) const;
  bool has_fitted(const std::string& key) const;
  bool passed() const { return verdict == Verdict::pass; }

  std::string to_json(int indent = 2) const;
  /// Two-column human-readable table.
  std::string to_table() const;
  /// Lattice rows when present, otherwise the measurement list.
  std::string to_csv() const;
};

}  // namespace hml
