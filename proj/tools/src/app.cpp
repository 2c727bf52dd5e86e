#include "app.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "runner.hpp"

namespace hml::cli {

namespace {

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> suites;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> c = {
      {"transform-selftest", "Transform, translation and convolution identities", {"transform"}},
      {"heat-selftest", "Heat kernel normalization, bounds and maximal function", {"heat"}},
      {"multiplier-check", "Hormander profiles, kernel pieces and weighted bounds for --symbol", {"multiplier"}},
      {"cz-check", "Kernel integral condition and kernel association (d = 1)", {"cz"}},
      {"h1-check", "Maximal function of T_m on atoms and the M_{j,t} kernels (d = 1)", {"h1"}},
      {"lp-probe", "L^p and weak (1,1) probes of T_m", {"lp"}},
      {"suite", "Run named suites (transform heat multiplier cz h1 lp negative, or all)", {}},
  };
  return c;
}

const std::vector<std::pair<std::string, std::string>>& flag_help() {
  static const std::vector<std::pair<std::string, std::string>> f = {
      {"alpha", "alpha per axis, comma separated (one value is broadcast)"},
      {"dims", "dimension d in {1, 2, 3}"},
      {"n", "nodes per axis (multiple of 16; 0 picks by dimension)"},
      {"R", "spatial truncation radius"},
      {"Lambda", "dual truncation radius (0 picks the largest resolved)"},
      {"grading", "geometric panels toward the origin"},
      {"symbol", "symbol expression"},
      {"beta", "Sobolev index (0 uses 1, Q/2 + 0.1 and 4)"},
      {"jmin", "smallest dyadic index"},
      {"jmax", "largest dyadic index"},
      {"seed", "seed of the random test battery"},
      {"p", "exponent of the L^p probe"},
      {"k-max", "largest frequency of the oscillatory family"},
      {"output", "output directory"},
      {"threads", "worker threads (falls back to HML_THREADS)"},
      {"memory-limit-mb", "refuse runs whose memory estimate exceeds this"},
  };
  return f;
}

}  // namespace

int app_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for Hankel multipliers on (0, inf)^d", "hml"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> flags;
  std::string config_file;
  std::vector<std::string> suite_names;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_file, "key=value file; flags override it")->check(CLI::ExistingFile);
    for (const auto& [key, help] : flag_help()) sub->add_option("--" + key, flags[key], help);
    if (std::string(c.name) == "suite") sub->add_option("names", suite_names, "suites to run")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "hml: " << e.what() << "\n" << "run 'hml --help' for usage\n";
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    RunConfig cfg;
    cfg.command = chosen->get_name();
    if (!config_file.empty()) {
      for (const auto& [key, value] : read_config_file(config_file)) set_field(cfg, key, value);
    }
    for (const auto& [key, help] : flag_help()) {
      if (chosen->get_option("--" + key)->count() > 0) set_field(cfg, key, flags[key]);
    }
    if (cfg.command == "suite") {
      std::string joined;
      for (const auto& s : suite_names) joined += (joined.empty() ? "" : ",") + s;
      set_field(cfg, "suite", joined);
    } else {
      for (const auto& c : commands()) {
        if (cfg.command == c.name) cfg.suites = c.suites;
      }
    }
    cfg = effective(cfg);
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "hml: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hml: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace hml::cli
