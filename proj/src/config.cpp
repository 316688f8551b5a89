#include "robmap/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace robmap {

namespace {

using nlohmann::json;

void require_known_keys(const json& obj, std::initializer_list<const char*> known,
                        const char* where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " + where);
    }
  }
}

std::uint64_t get_u64(const json& obj, const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::vector<Value> get_value_array(const json& obj, const char* key) {
  std::vector<Value> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(std::string(key) + " must be an array of integers");
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_unsigned()) {
      throw ConfigError(std::string(key) + " must contain non-negative integers");
    }
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

DatasetConfig parse_dataset(const json& obj) {
  require_known_keys(obj,
                     {"row_count", "rows_per_table_page", "entries_per_index_page", "distinct_a",
                      "distinct_b", "seed", "value_mode", "col_a", "col_b"},
                     "dataset");
  DatasetConfig ds;
  ds.row_count = get_u64(obj, "row_count", ds.row_count);
  ds.rows_per_table_page = get_u64(obj, "rows_per_table_page", ds.rows_per_table_page);
  ds.entries_per_index_page = get_u64(obj, "entries_per_index_page", ds.entries_per_index_page);
  ds.distinct_a = get_u64(obj, "distinct_a", ds.distinct_a);
  ds.distinct_b = get_u64(obj, "distinct_b", ds.distinct_b);
  ds.seed = get_u64(obj, "seed", ds.seed);
  const std::string mode = get_string(obj, "value_mode", "permutation");
  if (mode == "permutation") {
    ds.value_mode = ValueMode::kPermutation;
  } else if (mode == "explicit") {
    ds.value_mode = ValueMode::kExplicit;
  } else {
    throw ConfigError("value_mode must be \"permutation\" or \"explicit\"");
  }
  ds.explicit_a = get_value_array(obj, "col_a");
  ds.explicit_b = get_value_array(obj, "col_b");
  return ds;
}

ExecConfig parse_exec(const json& obj) {
  require_known_keys(obj, {"hash_memory", "spill_policy", "weights"}, "exec");
  ExecConfig exec;
  exec.hash_memory = get_u64(obj, "hash_memory", exec.hash_memory);
  const std::string policy = get_string(obj, "spill_policy", "abrupt");
  if (policy == "abrupt") {
    exec.spill_policy = SpillPolicy::kAbrupt;
  } else if (policy == "graceful") {
    exec.spill_policy = SpillPolicy::kGraceful;
  } else {
    throw ConfigError("spill_policy must be \"abrupt\" or \"graceful\"");
  }
  if (obj.contains("weights")) {
    const json& w = obj.at("weights");
    if (!w.is_object()) throw ConfigError("weights must be an object");
    require_known_keys(w, {"seq_weight", "rand_weight", "scratch_weight"}, "weights");
    exec.weights.seq_weight = get_u64(w, "seq_weight", exec.weights.seq_weight);
    exec.weights.rand_weight = get_u64(w, "rand_weight", exec.weights.rand_weight);
    exec.weights.scratch_weight = get_u64(w, "scratch_weight", exec.weights.scratch_weight);
  }
  return exec;
}

AxisSpec parse_axis(const json& obj) {
  if (!obj.is_object()) throw ConfigError("grid axis must be an object");
  require_known_keys(obj, {"dimension", "exponent_min", "exponent_max", "step"}, "grid axis");
  AxisSpec axis;
  const std::string dim = get_string(obj, "dimension", "a");
  if (dim == "a") {
    axis.dimension = Dimension::kA;
  } else if (dim == "b") {
    axis.dimension = Dimension::kB;
  } else {
    throw ConfigError("axis dimension must be \"a\" or \"b\"");
  }
  axis.exponent_min = static_cast<std::uint32_t>(get_u64(obj, "exponent_min", 0));
  axis.exponent_max = static_cast<std::uint32_t>(get_u64(obj, "exponent_max", 16));
  axis.step = static_cast<std::uint32_t>(get_u64(obj, "step", 1));
  return axis;
}

GridSpec default_grid() {
  GridSpec grid;
  grid.axes.push_back(AxisSpec{Dimension::kA, 0, 16, 1});
  grid.axes.push_back(AxisSpec{Dimension::kB, 0, 16, 1});
  grid.output_flavor = OutputFlavor::kRowIds;
  return grid;
}

GridSpec parse_grid(const json& obj) {
  require_known_keys(obj, {"axes", "output_flavor", "plans"}, "grid");
  GridSpec grid = default_grid();
  if (obj.contains("axes")) {
    const json& axes = obj.at("axes");
    if (!axes.is_array() || axes.empty()) throw ConfigError("grid axes must be a non-empty array");
    grid.axes.clear();
    for (const json& a : axes) grid.axes.push_back(parse_axis(a));
  }
  const std::string flavor = get_string(obj, "output_flavor", "rowids");
  if (flavor == "rowids") {
    grid.output_flavor = OutputFlavor::kRowIds;
  } else if (flavor == "rows") {
    grid.output_flavor = OutputFlavor::kRows;
  } else {
    throw ConfigError("output_flavor must be \"rowids\" or \"rows\"");
  }
  if (obj.contains("plans")) {
    const json& plans = obj.at("plans");
    if (!plans.is_array() || plans.empty()) {
      throw ConfigError("grid plans must be a non-empty array of plan names");
    }
    grid.plans.clear();
    for (const json& p : plans) {
      if (!p.is_string()) throw ConfigError("plan names must be strings");
      const auto plan = plan_from_name(p.get<std::string>());
      if (!plan.has_value()) {
        throw ConfigError("unknown plan name \"" + p.get<std::string>() + "\"");
      }
      grid.plans.push_back(*plan);
    }
  }
  return grid;
}

Tolerance parse_tolerance(const json& obj) {
  require_known_keys(obj, {"mode", "value"}, "tolerance");
  Tolerance tol;
  const std::string mode = get_string(obj, "mode", "relative");
  if (mode == "relative") {
    tol.mode = Tolerance::Mode::kRelative;
  } else if (mode == "absolute") {
    tol.mode = Tolerance::Mode::kAbsolute;
  } else {
    throw ConfigError("tolerance mode must be \"relative\" or \"absolute\"");
  }
  tol.value = get_number(obj, "value", tol.value);
  if (tol.value < 0) throw ConfigError("tolerance value must be >= 0");
  return tol;
}

// Every plan the grid's query form admits, sorted by name.
std::vector<PlanId> applicable_plans(const GridSpec& grid) {
  const Query form = grid.query_form();
  std::vector<PlanId> plans;
  for (PlanId p : kAllPlans) {
    if (plan_applicable(p, form)) plans.push_back(p);
  }
  std::sort(plans.begin(), plans.end(),
            [](PlanId a, PlanId b) { return plan_name(a) < plan_name(b); });
  return plans;
}

}  // namespace

void RunConfig::validate() const {
  dataset.validate();
  exec.validate();
  grid.validate(dataset);
  if (!(jump_factor > 1.0)) throw ConfigError("jump_factor must be > 1");
  if (tolerance.value < 0) throw ConfigError("tolerance value must be >= 0");
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  require_known_keys(doc, {"dataset", "exec", "grid", "tolerance", "jump_factor", "output"},
                     "config");

  RunConfig cfg;
  if (doc.contains("dataset")) {
    if (!doc.at("dataset").is_object()) throw ConfigError("dataset must be an object");
    cfg.dataset = parse_dataset(doc.at("dataset"));
  }
  if (doc.contains("exec")) {
    if (!doc.at("exec").is_object()) throw ConfigError("exec must be an object");
    cfg.exec = parse_exec(doc.at("exec"));
  }
  cfg.grid = default_grid();
  if (doc.contains("grid")) {
    if (!doc.at("grid").is_object()) throw ConfigError("grid must be an object");
    cfg.grid = parse_grid(doc.at("grid"));
  }
  if (cfg.grid.plans.empty()) cfg.grid.plans = applicable_plans(cfg.grid);
  if (doc.contains("tolerance")) {
    if (!doc.at("tolerance").is_object()) throw ConfigError("tolerance must be an object");
    cfg.tolerance = parse_tolerance(doc.at("tolerance"));
  }
  cfg.jump_factor = get_number(doc, "jump_factor", cfg.jump_factor);
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    if (!out.is_object()) throw ConfigError("output must be an object");
    require_known_keys(out, {"outdir"}, "output");
    cfg.outdir = get_string(out, "outdir", cfg.outdir);
  }

  cfg.validate();
  return cfg;
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace robmap
