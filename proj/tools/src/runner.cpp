#include "runner.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hml/parallel.hpp"

#ifndef HML_VERSION
#define HML_VERSION "0.0.0"
#endif

namespace hml::cli {

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
}

std::string header_line(const RunConfig& cfg) {
  return "hml " + tool_version() + " config_hash=" + config_hash(cfg);
}

}  // namespace

std::string tool_version() { return HML_VERSION; }

int exit_status(const std::vector<SuiteOutcome>& outcomes) {
  Verdict v = Verdict::pass;
  for (const auto& o : outcomes) v = combine(v, o.verdict);
  if (v == Verdict::fail) return kExitFail;
  return v == Verdict::inconclusive ? kExitInconclusive : kExitPass;
}

std::string summary_text(const RunConfig& cfg, const std::vector<SuiteOutcome>& outcomes) {
  std::ostringstream s;
  s << "# " << header_line(cfg) << "\n";
  std::istringstream kv(to_key_values(cfg));
  for (std::string line; std::getline(kv, line);) s << "# " << line << "\n";
  s << std::left << std::setw(14) << "suite" << std::setw(34) << "report" << "verdict\n";
  for (const auto& o : outcomes) {
    for (const auto& r : o.reports) {
      s << std::setw(14) << o.name << std::setw(34) << r.name << to_string(r.verdict) << "\n";
    }
    s << std::setw(14) << o.name << std::setw(34) << "(suite)" << to_string(o.verdict) << "\n";
  }
  s << "overall: " << exit_status(outcomes) << "\n";
  return s.str();
}

std::string report_json(const RunConfig& cfg, const SuiteOutcome& outcome) {
  nlohmann::ordered_json j;
  j["tool"] = "hml";
  j["version"] = tool_version();
  j["config_hash"] = config_hash(cfg);
  nlohmann::ordered_json c;
  std::istringstream kv(to_key_values(cfg));
  for (std::string line; std::getline(kv, line);) {
    const auto eq = line.find('=');
    c[line.substr(0, eq)] = line.substr(eq + 1);
  }
  j["config"] = c;
  j["suite"] = outcome.name;
  j["verdict"] = to_string(outcome.verdict);
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : outcome.reports) j["reports"].push_back(nlohmann::ordered_json::parse(r.to_json()));
  return j.dump(2) + "\n";
}

std::string data_csv(const RunConfig& cfg, const SuiteOutcome& outcome) {
  std::ostringstream s;
  s << "# " << header_line(cfg) << " suite=" << outcome.name << "\n";
  for (const auto& r : outcome.reports) {
    s << "# report=" << r.name << "\n" << r.to_csv();
  }
  return s.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double mb = estimated_memory_mb(cfg);
  if (mb > cfg.memory_limit_mb) {
    err << "hml: estimated memory " << mb << " MiB exceeds the limit of " << cfg.memory_limit_mb
        << " MiB; reduce n or dims, or raise --memory-limit-mb\n";
    return kExitFail;
  }
  set_thread_count(cfg.threads);
  out << "hml " << tool_version() << " effective configuration (hash " << config_hash(cfg) << "):\n"
      << to_key_values(cfg) << "threads=" << cfg.threads << "\n";

  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  std::vector<SuiteOutcome> outcomes;
  for (const auto& name : cfg.suites) {
    SuiteOutcome o;
    try {
      o = run_suite(name, cfg);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      o.name = name;
      o.verdict = Verdict::fail;
      EstimateReport r;
      r.name = "error";
      r.verdict = Verdict::fail;
      r.note(e.what());
      o.reports.push_back(std::move(r));
      err << "hml: suite " << name << " aborted: " << e.what() << "\n";
    }
    out << std::left << std::setw(12) << name << to_string(o.verdict) << "  (" << std::fixed << std::setprecision(1)
        << o.seconds << " s)\n";
    out.unsetf(std::ios::floatfield);
    write_file(dir / ("report-" + name + ".json"), report_json(cfg, o));
    write_file(dir / ("data-" + name + ".csv"), data_csv(cfg, o));
    outcomes.push_back(std::move(o));
  }
  const std::string summary = summary_text(cfg, outcomes);
  write_file(dir / "summary.txt", summary);
  out << summary;
  return exit_status(outcomes);
}

}  // namespace hml::cli
