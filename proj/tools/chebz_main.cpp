// Command-line front end. Arguments are turned into the JSON run
// configuration understood by chebz_run; all work happens behind the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chebz/chebz.h"
#include "json.hpp"

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<int> threads;
  std::string out;
  std::string format = "json";
  std::string config;
  bool timing = false;
};

// Command-specific flags forwarded verbatim as strings.
struct OptionHelp {
  const char* name;
  const char* help;
};

const OptionHelp kValueOptions[] = {
    {"system", "poly:N, trig:K or power:a1,a2,..."},
    {"interval", "lo,hi replacing the system's default interval"},
    {"points", "comma-separated sign-change locations"},
    {"func", "sin:K, cos:K, legendre:N or poly:c0,c1,..."},
    {"simple", "simple roots for synth annihilator"},
    {"double", "double roots for synth annihilator"},
    {"curve", "moment:d,a,b  trig:k  circle  power:a,b,alpha...  exp:a,b  sine:c,a,b  polygon:m,r"},
    {"polygon", "polygon file, one vertex per line"},
    {"polygon2", "second polygon file"},
    {"oval", "support-function file: h0, then \"m a_m b_m\" lines"},
    {"oval2", "second oval file"},
    {"n", "polynomial degree or harmonic count"},
    {"k", "polygon vertex count"},
    {"m", "polygon side count"},
    {"harmonics", "harmonic count"},
    {"probes", "probe trials per curve"},
    {"samples", "rows in the sampled-function table"},
    {"c", "sine graph offset"},
    {"a", "parameter interval start"},
    {"b", "parameter interval end"}};
const std::map<std::string, const char*> kVerbHelp = {
    {"verify", "seeded sweeps checking sign-change bounds"},
    {"synth", "build one orthogonal function, weight, mass vector or annihilator"},
    {"curve", "convexity and polynomial-dimension checks for a curve"}};
const OptionHelp kFlagOptions[] = {{"homogeneous", "homogeneous polynomials of exact degree n"}};

std::vector<std::string> split(const char* list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero counting and orthogonality checks for Chebyshev systems and convex curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(chebz_version()));

  Common common;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::string subject;

  for (const char* verb : {"verify", "synth", "curve"}) {
    const auto names = split(chebz_subcommands(verb));
    auto* sub = app.add_subcommand(verb, kVerbHelp.at(verb));
    sub->add_option("subject", subject, "what to run")->required()->check(CLI::IsMember(names));
    sub->add_option("--seed", common.seed, "64-bit seed (default 1)");
    sub->add_option("--trials", common.trials, "instance count (per-command default)");
    sub->add_option("--tol", common.tol, "residual tolerance (default 1e-8)");
    sub->add_option("--grid", common.grid, "sign-change sampling grid (default 2048)");
    sub->add_option("--threads", common.threads, "worker threads (default: all cores)");
    sub->add_option("--out", common.out, "write the report here instead of stdout");
    sub->add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", common.config, "JSON file with defaults for any of these keys");
    sub->add_flag("--timing", common.timing, "record wall time in the report");
    for (const auto& [name, help] : kValueOptions) {
      sub->add_option(std::string("--") + name, values[name], help);
    }
    for (const auto& [name, help] : kFlagOptions) {
      sub->add_flag(std::string("--") + name, flags[name], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  nlohmann::json cfg = nlohmann::json::object();
  if (!common.config.empty()) {
    std::ifstream in(common.config);
    if (!in) {
      std::cerr << "chebz: cannot open config file '" << common.config << "'\n";
      return 2;
    }
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "chebz: config file '" << common.config << "' is not valid JSON\n";
      return 2;
    }
    if (!cfg.is_object()) {
      std::cerr << "chebz: config file must hold a JSON object\n";
      return 2;
    }
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  cfg["command"] = verb + " " + subject;
  if (common.seed) cfg["seed"] = *common.seed;
  if (common.trials) cfg["trials"] = *common.trials;
  if (common.tol) cfg["tol"] = *common.tol;
  if (common.grid) cfg["grid"] = *common.grid;
  if (common.threads) cfg["threads"] = *common.threads;
  if (common.timing) cfg["timing"] = true;
  cfg["format"] = common.format;
  if (!cfg.contains("options")) cfg["options"] = nlohmann::json::object();
  for (const auto& [k, v] : values) {
    if (!v.empty()) cfg["options"][k] = v;
  }
  for (const auto& [k, v] : flags) {
    if (v) cfg["options"][k] = "true";
  }

  chebz_report* report = nullptr;
  int exit_code = 2;
  if (chebz_run(cfg.dump().c_str(), &report, &exit_code) != CHEBZ_OK) {
    std::cerr << "chebz: " << chebz_last_error() << '\n';
    return 2;
  }
  const std::string text =
      common.format == "csv" ? chebz_report_csv(report) : chebz_report_json(report);
  chebz_report_free(report);
  if (exit_code == 2 && *chebz_last_error()) std::cerr << "chebz: " << chebz_last_error() << '\n';

  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(common.out);
    if (!out || !(out << text)) {
      std::cerr << "chebz: cannot write '" << common.out << "'\n";
      return 2;
    }
  }
  return exit_code;
}
