#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "hml/hankel.hpp"

namespace hml::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw UsageError(key + ": expected a number, got '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw UsageError(key + ": expected an integer, got '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < 0) throw UsageError(key + ": must be non-negative");
  return static_cast<std::size_t>(x);
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

std::vector<std::string> known_suites() { return {"transform", "heat", "multiplier", "cz", "h1", "lp", "negative"}; }

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "command") {
    cfg.command = v;
  } else if (key == "alpha") {
    cfg.alpha.clear();
    for (const auto& a : split(v, ',')) cfg.alpha.push_back(to_double(key, a));
    if (cfg.alpha.empty()) throw UsageError("alpha: empty list");
  } else if (key == "dims") {
    cfg.dims = to_count(key, v);
  } else if (key == "n") {
    cfg.n = to_count(key, v);
  } else if (key == "R") {
    cfg.R = to_double(key, v);
  } else if (key == "Lambda") {
    cfg.Lambda = to_double(key, v);
  } else if (key == "grading") {
    cfg.grading = to_count(key, v);
  } else if (key == "symbol") {
    cfg.symbol = v;
  } else if (key == "suite") {
    cfg.suites = split(v, ',');
  } else if (key == "beta") {
    cfg.beta = to_double(key, v);
  } else if (key == "jmin") {
    cfg.j_range.first = static_cast<int>(to_integer(key, v));
  } else if (key == "jmax") {
    cfg.j_range.second = static_cast<int>(to_integer(key, v));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_count(key, v));
  } else if (key == "p") {
    cfg.p = to_double(key, v);
  } else if (key == "k-max") {
    cfg.k_max = static_cast<int>(to_integer(key, v));
  } else if (key == "output") {
    cfg.output = v;
  } else if (key == "threads") {
    cfg.threads = to_count(key, v);
  } else if (key == "memory-limit-mb") {
    cfg.memory_limit_mb = to_double(key, v);
  } else {
    throw UsageError("unknown configuration key '" + key + "'");
  }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig effective(RunConfig cfg) {
  if (cfg.dims < 1 || cfg.dims > 3) throw UsageError("dims: must be 1, 2 or 3");
  if (cfg.alpha.size() == 1 && cfg.dims > 1) cfg.alpha.assign(cfg.dims, cfg.alpha.front());
  if (cfg.alpha.size() != cfg.dims) throw UsageError("alpha: expected " + std::to_string(cfg.dims) + " values");
  for (double a : cfg.alpha) {
    if (!(a > -0.5)) throw UsageError("alpha: every component must exceed -1/2");
  }
  if (cfg.n == 0) cfg.n = cfg.dims == 1 ? 1024 : (cfg.dims == 2 ? 256 : 64);
  if (cfg.n % 16 != 0 || cfg.n < 16 * (cfg.grading + 1)) {
    throw UsageError("n: must be a multiple of 16 and at least 16 * (grading + 1)");
  }
  if (!(cfg.R > 0.0)) throw UsageError("R: must be positive");
  const double uniform_panels = static_cast<double>(cfg.n / 16 - cfg.grading + 1);
  const double max_lambda = uniform_panels * TransformPlan::kDefaultMaxPhase / cfg.R * (1.0 - 1e-12);
  if (cfg.Lambda == 0.0) cfg.Lambda = std::floor(max_lambda * 1e6) / 1e6;
  if (!(cfg.Lambda > 0.0)) throw UsageError("Lambda: must be positive");
  if (cfg.Lambda > max_lambda) {
    throw UsageError("Lambda: R * Lambda exceeds what n = " + std::to_string(cfg.n) + " nodes resolve");
  }
  if (cfg.j_range.second < cfg.j_range.first) throw UsageError("jmin/jmax: empty range");
  if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) throw UsageError("p: must lie in (1, inf)");
  if (cfg.beta < 0.0) throw UsageError("beta: must be non-negative");
  if (cfg.k_max < 1) throw UsageError("k-max: must be positive");
  if (cfg.threads == 0) {
    if (const char* env = std::getenv("HML_THREADS")) {
      const std::string e = env;
      cfg.threads = e.empty() ? 0 : to_count("HML_THREADS", e);
    }
    if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  }
  std::vector<std::string> expanded;
  for (const auto& s : cfg.suites) {
    if (s == "all") {
      for (const auto& k : known_suites()) expanded.push_back(k);
      continue;
    }
    const auto ks = known_suites();
    if (std::find(ks.begin(), ks.end(), s) == ks.end()) throw UsageError("suite: unknown suite '" + s + "'");
    expanded.push_back(s);
  }
  if (expanded.empty()) throw UsageError("suite: nothing to run");
  cfg.suites = expanded;
  return cfg;
}

std::string to_key_values(const RunConfig& cfg) {
  std::ostringstream s;
  s << std::setprecision(17);
  s << "command=" << cfg.command << "\n";
  s << "alpha=" << join(cfg.alpha) << "\n";
  s << "dims=" << cfg.dims << "\n";
  s << "n=" << cfg.n << "\n";
  s << "R=" << cfg.R << "\n";
  s << "Lambda=" << cfg.Lambda << "\n";
  s << "grading=" << cfg.grading << "\n";
  s << "symbol=" << cfg.symbol << "\n";
  s << "suite=";
  for (std::size_t i = 0; i < cfg.suites.size(); ++i) s << (i ? "," : "") << cfg.suites[i];
  s << "\n";
  s << "beta=" << cfg.beta << "\n";
  s << "jmin=" << cfg.j_range.first << "\n";
  s << "jmax=" << cfg.j_range.second << "\n";
  s << "seed=" << cfg.seed << "\n";
  s << "p=" << cfg.p << "\n";
  s << "k-max=" << cfg.k_max << "\n";
  s << "output=" << cfg.output << "\n";
  s << "memory-limit-mb=" << cfg.memory_limit_mb << "\n";
  return s.str();
}

std::string config_hash(const RunConfig& cfg) {
  // Thread count does not change any result, so it stays out of the hash.
  const std::string text = to_key_values(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

double estimated_memory_mb(const RunConfig& cfg) {
  const double n = static_cast<double>(cfg.n);
  const double d = static_cast<double>(cfg.dims);
  const double matrices = 2.0 * d * n * n * 8.0;
  const double functions = 64.0 * std::pow(n, d) * 16.0;
  return (matrices + functions) / (1024.0 * 1024.0);
}

}  // namespace hml::cli
