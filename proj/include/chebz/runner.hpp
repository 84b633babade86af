#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace chebz {

struct RunConfig {
  enum class Format { Json, Csv };

  std::string verb;  // verify | synth | curve
  std::string subject;
  std::uint64_t seed = 1;
  std::optional<int> trials;  // per-command default when absent
  double tol = 1e-8;
  int grid = 2048;
  std::string output_path;
  Format format = Format::Json;
  bool timing = false;  // wall_time_ms stays 0 otherwise, keeping reports byte-identical
  int threads = 0;      // 0: one worker per hardware thread
  std::map<std::string, std::string> options;  // command flags such as "n" -> "2"
};

// Keys: command ("verify theorem6") or verb + subject, seed, trials, tol,
// grid, out, format, timing, threads, options (object of strings).
RunConfig config_from_json(const nlohmann::json& j);

struct InstanceRecord {
  std::string instance;
  int expected_bound = 0;
  int observed = 0;
  std::string status;  // pass | fail | error | not-applicable | degenerate
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  int trials_run = 0;
  int pass_count = 0;
  int fail_count = 0;
  int not_applicable_count = 0;
  std::vector<InstanceRecord> records;  // every instance, in trial order
  double wall_time_ms = 0.0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::string error;
  int exit_code = 0;

  std::vector<InstanceRecord> failures() const;
  std::string to_json() const;
  std::string to_csv() const;
};

// Exit code 0: every bound held; 1: some bound failed; 2: invalid input or a
// hypothesis that did not apply.
RunReport run(const RunConfig& config);

std::vector<std::string> subcommands(const std::string& verb);

}  // namespace chebz
