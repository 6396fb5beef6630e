#include "skualloc/config.hpp"

#include <fstream>

#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

AnnealConfig RunConfig::anneal_config() const {
  AnnealConfig a;
  a.num_reads = reads;
  a.sweeps_per_read = sweeps;
  a.beta_start = beta_start;
  a.beta_end = beta_end;
  a.sqa_trotter_slices = trotter_slices;
  a.sqa_beta = sqa_beta;
  a.sqa_gamma_start = gamma_start;
  a.sqa_gamma_end = gamma_end;
  a.seed = seed;
  a.threads = threads;
  return a;
}

MetaheuristicConfig RunConfig::metaheuristic_config() const {
  MetaheuristicConfig m;
  m.pop_size = pop_size;
  m.iterations = iterations;
  m.weights = classical_weights;
  m.seed = seed;
  return m;
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
  auto to_int = [&](const std::string& v) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw ArgumentError("bad integer for " + key + ": " + v);
    }
  };
  auto to_double = [&](const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw ArgumentError("bad number for " + key + ": " + v);
    }
  };
  auto to_bool = [&](const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ArgumentError("bad boolean for " + key + ": " + v);
  };

  if (key == "periods") cfg.periods = to_int(value);
  else if (key == "slack_bits" || key == "num_slack_bits")
    cfg.slack_bits = to_int(value);
  else if (key == "capacity_per_period") cfg.capacity = to_double(value);
  else if (key == "max_skus_per_period") cfg.sku_target = to_int(value);
  else if (key == "margin_weight") cfg.qubo_weights.margin = to_double(value);
  else if (key == "similarity_weight")
    cfg.qubo_weights.similarity = to_double(value);
  else if (key == "penalty_risk") cfg.qubo_weights.risk = to_double(value);
  else if (key == "penalty_inventory")
    cfg.qubo_weights.inventory = to_double(value);
  else if (key == "penalty_defect") cfg.qubo_weights.defect = to_double(value);
  else if (key == "penalty_capacity")
    cfg.qubo_weights.capacity = to_double(value);
  else if (key == "penalty_k") cfg.qubo_weights.cardinality = to_double(value);
  else if (key == "penalty_sku_limit")
    cfg.qubo_weights.sku_limit = to_double(value);
  else if (key == "enforce_p") cfg.qubo_weights.top5 = to_double(value);
  else if (key == "classical_similarity_weight")
    cfg.classical_weights.similarity = to_double(value);
  else if (key == "penalty_sku_excess")
    cfg.classical_weights.sku_excess = to_double(value);
  else if (key == "capacity_scale")
    cfg.classical_weights.capacity_scale = to_double(value);
  else if (key == "similarity_method") cfg.similarity_method = value;
  else if (key == "angle_scale") cfg.angle_scale = to_double(value);
  else if (key == "unit_cost_ratio") cfg.unit_cost_ratio = to_bool(value);
  else if (key == "solver") cfg.solver = value;
  else if (key == "reads") cfg.reads = to_int(value);
  else if (key == "sweeps") cfg.sweeps = to_int(value);
  else if (key == "threads") cfg.threads = to_int(value);
  else if (key == "beta_start") cfg.beta_start = to_double(value);
  else if (key == "beta_end") cfg.beta_end = to_double(value);
  else if (key == "trotter_slices") cfg.trotter_slices = to_int(value);
  else if (key == "sqa_beta") cfg.sqa_beta = to_double(value);
  else if (key == "gamma_start") cfg.gamma_start = to_double(value);
  else if (key == "gamma_end") cfg.gamma_end = to_double(value);
  else if (key == "pop_size") cfg.pop_size = to_int(value);
  else if (key == "iterations") cfg.iterations = to_int(value);
  else if (key == "skus") cfg.skus = to_int(value);
  else if (key == "base_count") cfg.base_count = to_int(value);
  else if (key == "base_catalog") cfg.base_catalog = value;
  else if (key == "tau") cfg.tau = to_double(value);
  else if (key == "repeats") cfg.repeats = to_int(value);
  else if (key == "variants") cfg.variants = value;
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "fold_offset") cfg.fold_offset = to_bool(value);
  else throw ArgumentError("unknown config key: " + key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("config line " + std::to_string(line_no) +
                          " is not `key = value`");
    apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::map<std::string, std::string> config_echo(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  m["periods"] = std::to_string(cfg.periods);
  m["slack_bits"] = std::to_string(cfg.slack_bits);
  m["capacity_per_period"] = format_double(cfg.capacity);
  m["max_skus_per_period"] = std::to_string(cfg.sku_target);
  m["margin_weight"] = format_double(cfg.qubo_weights.margin);
  m["similarity_weight"] = format_double(cfg.qubo_weights.similarity);
  m["penalty_risk"] = format_double(cfg.qubo_weights.risk);
  m["penalty_inventory"] = format_double(cfg.qubo_weights.inventory);
  m["penalty_defect"] = format_double(cfg.qubo_weights.defect);
  m["penalty_capacity"] = format_double(cfg.qubo_weights.capacity);
  m["penalty_k"] = format_double(cfg.qubo_weights.cardinality);
  m["penalty_sku_limit"] = format_double(cfg.qubo_weights.sku_limit);
  m["enforce_p"] = format_double(cfg.qubo_weights.top5);
  m["classical_similarity_weight"] =
      format_double(cfg.classical_weights.similarity);
  m["penalty_sku_excess"] = format_double(cfg.classical_weights.sku_excess);
  m["capacity_scale"] = format_double(cfg.classical_weights.capacity_scale);
  m["similarity_method"] = cfg.similarity_method;
  m["angle_scale"] = format_double(cfg.angle_scale);
  m["unit_cost_ratio"] = cfg.unit_cost_ratio ? "true" : "false";
  m["solver"] = cfg.solver;
  m["reads"] = std::to_string(cfg.reads);
  m["sweeps"] = std::to_string(cfg.sweeps);
  m["threads"] = std::to_string(cfg.threads);
  m["beta_start"] = format_double(cfg.beta_start);
  m["beta_end"] = format_double(cfg.beta_end);
  m["trotter_slices"] = std::to_string(cfg.trotter_slices);
  m["sqa_beta"] = format_double(cfg.sqa_beta);
  m["gamma_start"] = format_double(cfg.gamma_start);
  m["gamma_end"] = format_double(cfg.gamma_end);
  m["pop_size"] = std::to_string(cfg.pop_size);
  m["iterations"] = std::to_string(cfg.iterations);
  m["skus"] = std::to_string(cfg.skus);
  m["base_count"] = std::to_string(cfg.base_count);
  m["base_catalog"] = cfg.base_catalog;
  m["tau"] = format_double(cfg.tau);
  m["repeats"] = std::to_string(cfg.repeats);
  m["variants"] = cfg.variants;
  m["seed"] = std::to_string(cfg.seed);
  // out_dir is deliberately omitted: artifacts must be byte-identical when
  // the same run is written to two different directories
  m["fold_offset"] = cfg.fold_offset ? "true" : "false";
  return m;
}

}  // namespace skualloc
