#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hml::cli {

/// Effective configuration of one run.  Zero means "derive from the other
/// fields" for n, Lambda and threads; `effective()` fills those in.
struct RunConfig {
  std::string command = "suite";
  std::vector<double> alpha = {0.5};
  std::size_t dims = 1;
  std::size_t n = 0;
  double R = 16.0;
  double Lambda = 0.0;
  std::size_t grading = 3;
  std::string symbol = "laplace_type{phi=imag_power:gamma=1}";
  std::vector<std::string> suites = {"all"};
  /// 0 selects the three indices 1, Q/2 + 0.1 and 4.
  double beta = 0.0;
  std::pair<int, int> j_range = {-10, 10};
  std::uint64_t seed = 20240611;
  double p = 4.0;
  int k_max = 32;
  std::string output = "hml-out";
  std::size_t threads = 0;
  double memory_limit_mb = 4096.0;
};

/// Thrown for malformed flags, keys or values; maps to exit status 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sets one field from its key=value spelling (the long flag name without
/// dashes).  Throws UsageError for unknown keys and unparsable values.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key=value file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Resolves derived defaults (alpha broadcast to dims, n by dimension,
/// Lambda as the largest band the n-node plan resolves, threads) and checks
/// consistency.  Throws UsageError.
RunConfig effective(RunConfig cfg);

/// Canonical key=value lines, one per field, in a fixed order.
std::string to_key_values(const RunConfig& cfg);

/// 64-bit FNV-1a of the canonical form, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Dense plan matrices plus working grid functions, in MiB.
double estimated_memory_mb(const RunConfig& cfg);

std::vector<std::string> known_suites();

}  // namespace hml::cli
