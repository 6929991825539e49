#pragma once

#include <string>
#include <vector>

#include "ddaqc/experiment.hpp"

namespace ddaqc {

/// Experiment configuration plus the output path.
struct RunConfig {
  ExperimentConfig experiment;
  std::string output;  // CSV path; empty means stdout
};

/// Parses a JSON document. Unknown keys and type mismatches raise InputError
/// naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// JSON rendering of a configuration; parse_config(config_to_json(c)) == c.
std::string config_to_json(const RunConfig& config);

/// "X", "Y" or "Z" (either case); `field` names the source in errors.
Pauli parse_axis(const std::string& text, const std::string& field);

/// Parses "CDD:4", "QDD:3:7", "UDD:2:X" (axis optional, default X).
SequenceSpec parse_sequence(const std::string& text);

inline constexpr const char* kVersion = "0.1.0";

struct ManifestInfo {
  std::string command;
  double wall_time = 0.0;
  double min_gap = 0.0;
  std::vector<RunRecord> records;
  std::vector<std::string> warnings;
};

/// Run manifest: resolved config, seeds, per-row timing and diagnostics.
std::string manifest_json(const RunConfig& config, const ManifestInfo& info);

}  // namespace ddaqc
