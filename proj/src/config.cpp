#include "ddaqc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ddaqc {

Pauli parse_axis(const std::string& s, const std::string& field) {
  if (s == "X" || s == "x") return Pauli::X;
  if (s == "Y" || s == "y") return Pauli::Y;
  if (s == "Z" || s == "z") return Pauli::Z;
  throw InputError(field + ": expected X, Y or Z, got '" + s + "'");
}

namespace {

using nlohmann::json;

std::string axis_name(Pauli p) { return std::string(1, pauli_label(p)); }

template <typename T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(field + ": wrong type (" + std::string(j.type_name()) + ")");
  }
}

// Accepts a scalar or an array of numbers.
std::vector<double> number_list(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw InputError(field + ": expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(field + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw InputError(field + ": expected an integer");
  return j.get<int>();
}

SequenceSpec sequence_from_json(const json& j, std::size_t idx) {
  const std::string where = "sequences[" + std::to_string(idx) + "]";
  if (j.is_string()) return parse_sequence(j.get<std::string>());
  if (!j.is_object()) throw InputError(where + ": expected an object or a string");
  static const std::set<std::string> allowed{"family", "level", "order", "m1", "m2", "axis"};
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw InputError(where + "." + k + ": unknown field");
  }
  if (!j.contains("family")) throw InputError(where + ".family: missing");
  SequenceSpec s;
  s.family = parse_family(get_as<std::string>(j["family"], where + ".family"));
  switch (s.family) {
    case SequenceFamily::CDD:
      if (!j.contains("level")) throw InputError(where + ".level: missing");
      s.p1 = int_field(j["level"], where + ".level");
      break;
    case SequenceFamily::UDD:
      if (!j.contains("order")) throw InputError(where + ".order: missing");
      s.p1 = int_field(j["order"], where + ".order");
      if (j.contains("axis")) s.axis = parse_axis(get_as<std::string>(j["axis"], where + ".axis"), where + ".axis");
      break;
    case SequenceFamily::QDD:
      if (j.contains("order")) {
        s.p1 = s.p2 = int_field(j["order"], where + ".order");
      } else {
        if (!j.contains("m1") || !j.contains("m2")) throw InputError(where + ": QDD needs order or m1 and m2");
        s.p1 = int_field(j["m1"], where + ".m1");
        s.p2 = int_field(j["m2"], where + ".m2");
      }
      break;
    case SequenceFamily::None:
      throw InputError(where + ".family: 'none' is implied by include_faulty");
  }
  if (s.p1 < 0 || s.p2 < 0) throw InputError(where + ": levels and orders must be >= 0");
  return s;
}

json sequence_to_json(const SequenceSpec& s) {
  json j;
  j["family"] = to_string(s.family);
  switch (s.family) {
    case SequenceFamily::CDD: j["level"] = s.p1; break;
    case SequenceFamily::UDD:
      j["order"] = s.p1;
      j["axis"] = axis_name(s.axis);
      break;
    case SequenceFamily::QDD:
      j["m1"] = s.p1;
      j["m2"] = s.p2;
      break;
    case SequenceFamily::None: break;
  }
  return j;
}

}  // namespace

SequenceSpec parse_sequence(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2) throw InputError("sequence '" + text + "': expected FAMILY:PARAM[:PARAM]");
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size() || v < 0) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("sequence '" + text + "': '" + s + "' is not a non-negative integer");
    }
  };
  SequenceSpec s;
  s.family = parse_family(parts[0]);
  switch (s.family) {
    case SequenceFamily::CDD:
      if (parts.size() != 2) throw InputError("sequence '" + text + "': CDD takes one level");
      s.p1 = to_int(parts[1]);
      break;
    case SequenceFamily::UDD:
      if (parts.size() > 3) throw InputError("sequence '" + text + "': UDD takes ORDER[:AXIS]");
      s.p1 = to_int(parts[1]);
      if (parts.size() == 3) s.axis = parse_axis(parts[2], "sequence '" + text + "'");
      break;
    case SequenceFamily::QDD:
      if (parts.size() > 3) throw InputError("sequence '" + text + "': QDD takes M1[:M2]");
      s.p1 = to_int(parts[1]);
      s.p2 = parts.size() == 3 ? to_int(parts[2]) : s.p1;
      break;
    case SequenceFamily::None: throw InputError("sequence '" + text + "': family 'none' is not a sequence");
  }
  return s;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("config: top level must be an object");

  RunConfig rc;
  ExperimentConfig& c = rc.experiment;
  for (const auto& [key, v] : root.items()) {
    if (key == "algorithm") {
      c.algorithm = parse_algorithm(get_as<std::string>(v, key));
    } else if (key == "n_logical") {
      c.n_logical = int_field(v, key);
    } else if (key == "marked") {
      if (v.is_string()) {
        c.marked.clear();
        for (char ch : v.get<std::string>()) {
          if (ch != '0' && ch != '1') throw InputError("marked: expected a bit string");
          c.marked.push_back(ch - '0');
        }
      } else {
        c.marked = get_as<std::vector<int>>(v, key);
      }
    } else if (key == "sequences") {
      if (!v.is_array()) throw InputError("sequences: expected an array");
      c.sequences.clear();
      for (std::size_t i = 0; i < v.size(); ++i) c.sequences.push_back(sequence_from_json(v[i], i));
    } else if (key == "include_ideal") {
      c.include_ideal = get_as<bool>(v, key);
    } else if (key == "include_faulty") {
      c.include_faulty = get_as<bool>(v, key);
    } else if (key == "t_grid") {
      c.t_grid = number_list(v, key);
    } else if (key == "beta_ratio" || key == "beta_ratios") {
      c.beta_ratios = number_list(v, key);
    } else if (key == "tau_grid") {
      c.tau_grid = number_list(v, key);
    } else if (key == "tau_level") {
      c.tau_level = int_field(v, key);
    } else if (key == "realizations") {
      c.realizations = int_field(v, key);
    } else if (key == "master_seed") {
      if (!v.is_number_unsigned()) throw InputError("master_seed: expected a non-negative integer");
      c.master_seed = v.get<std::uint64_t>();
    } else if (key == "noise_amplitude") {
      c.noise_amplitude = get_as<double>(v, key);
    } else if (key == "min_steps_per_segment") {
      c.min_steps_per_segment = int_field(v, key);
    } else if (key == "max_step") {
      c.max_step = get_as<double>(v, key);
    } else if (key == "workers") {
      c.workers = int_field(v, key);
    } else if (key == "qdd_inner") {
      c.qdd_axes.inner = parse_axis(get_as<std::string>(v, key), key);
    } else if (key == "qdd_outer") {
      c.qdd_axes.outer = parse_axis(get_as<std::string>(v, key), key);
    } else if (key == "output") {
      rc.output = get_as<std::string>(v, key);
    } else {
      throw InputError(key + ": unknown configuration field");
    }
  }
  c.validate();
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json config_object(const RunConfig& rc) {
  const ExperimentConfig& c = rc.experiment;
  json j;
  j["algorithm"] = to_string(c.algorithm);
  j["n_logical"] = c.n_logical;
  j["marked"] = c.marked;
  json seqs = json::array();
  for (const auto& s : c.sequences) seqs.push_back(sequence_to_json(s));
  j["sequences"] = seqs;
  j["include_ideal"] = c.include_ideal;
  j["include_faulty"] = c.include_faulty;
  j["t_grid"] = c.t_grid;
  j["beta_ratios"] = c.beta_ratios;
  j["tau_grid"] = c.tau_grid;
  j["tau_level"] = c.tau_level;
  j["realizations"] = c.realizations;
  j["master_seed"] = c.master_seed;
  j["noise_amplitude"] = c.noise_amplitude;
  j["min_steps_per_segment"] = c.min_steps_per_segment;
  j["max_step"] = c.max_step;
  j["workers"] = c.workers;
  j["qdd_inner"] = axis_name(c.qdd_axes.inner);
  j["qdd_outer"] = axis_name(c.qdd_axes.outer);
  j["output"] = rc.output;
  return j;
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_object(config).dump(2); }

std::string manifest_json(const RunConfig& config, const ManifestInfo& info) {
  json j;
  j["version"] = kVersion;
  j["command"] = info.command;
  j["config"] = config_object(config);
  j["master_seed"] = config.experiment.master_seed;
  j["min_gap"] = info.min_gap;
  j["wall_time_seconds"] = info.wall_time;
  j["warnings"] = info.warnings;
  json rows = json::array();
  for (const auto& r : info.records) {
    rows.push_back({{"sequence", r.sequence},
                    {"level_or_order", r.level_or_order},
                    {"T_over_invgap", r.t_over_invgap},
                    {"beta_over_gap", r.beta_over_gap},
                    {"R", r.realizations},
                    {"D_mean", r.d_mean},
                    {"wall_time_seconds", r.wall_time},
                    {"noise_strength", r.noise_strength}});
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace ddaqc
