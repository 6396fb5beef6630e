// Command-line entry point chaining the allocation pipeline:
// generate, features, kernel, build, solve, audit, pipeline, ablate.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "skualloc/ablation.hpp"
#include "skualloc/audit.hpp"
#include "skualloc/config.hpp"
#include "skualloc/errors.hpp"
#include "skualloc/results.hpp"
#include "skualloc/util.hpp"

namespace fs = std::filesystem;
using namespace skualloc;

namespace {

// stage-named exit codes
constexpr int kExitArgument = 2;
constexpr int kExitData = 3;
constexpr int kExitKernel = 4;
constexpr int kExitBuild = 5;
constexpr int kExitSolve = 6;

struct StageError {
  int code;
  std::string message;
};

void echo_header(std::ostream& out, const RunConfig& cfg) {
  for (const auto& [k, v] : config_echo(cfg)) out << "# " << k << " = " << v << "\n";
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

SimilarityMethod parse_method(const std::string& s) {
  if (s == "quantum") return SimilarityMethod::QuantumFidelity;
  if (s == "cosine") return SimilarityMethod::Cosine;
  throw ArgumentError("similarity_method must be quantum or cosine");
}

std::vector<SkuRecord> load_or_generate_catalog(const RunConfig& cfg,
                                                const std::string& catalog) {
  if (!catalog.empty()) return ingest_catalog(catalog).records;
  auto base = cfg.base_catalog.empty()
                  ? make_base_catalog(cfg.seed, cfg.base_count)
                  : ingest_catalog(cfg.base_catalog).records;
  SynthesisSpec spec;
  spec.target_count = cfg.skus;
  spec.seed = cfg.seed;
  return synthesize_catalog(base, spec);
}

struct PipelineData {
  std::vector<SkuRecord> records;
  FeatureSet features;
  Matrix raw_kernel;  // z-scored pre-PCA columns
  EmbeddingMatrix embedding;
  SimilarityMatrix similarity;
  ProblemInstance instance;
};

ProblemInstance make_instance(const RunConfig& cfg, const FeatureSet& fs,
                              SimilarityMatrix sim) {
  ProblemInstance inst;
  inst.n_skus = static_cast<int>(fs.rows.size());
  inst.periods = cfg.periods;
  inst.slack_bits = cfg.slack_bits;
  inst.capacity = cfg.capacity;
  inst.sku_target = cfg.sku_target;
  inst.weights = cfg.qubo_weights;
  for (const auto& f : fs.rows) {
    inst.unit_margin.push_back(f.unit_margin);
    inst.demand.push_back(f.demand);
    inst.unified_risk.push_back(f.unified_risk);
    inst.inventory_risk.push_back(f.inventory_risk);
    inst.defect_risk.push_back(f.defect_risk);
  }
  inst.similarity = std::move(sim);
  finalize_instance(inst);
  return inst;
}

PipelineData prepare(const RunConfig& cfg, const std::string& catalog) {
  PipelineData d;
  try {
    d.records = load_or_generate_catalog(cfg, catalog);
    d.features = engineer_features(d.records);
  } catch (const ArgumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError{kExitData, e.what()};
  }
  try {
    d.raw_kernel = kernel_feature_matrix(d.features, cfg.unit_cost_ratio);
    d.embedding = pca_reduce(d.raw_kernel, kKernelQubits);
    d.similarity = similarity_matrix(
        d.embedding, parse_method(cfg.similarity_method), cfg.angle_scale);
  } catch (const std::exception& e) {
    throw StageError{kExitKernel, e.what()};
  }
  d.instance = make_instance(cfg, d.features, d.similarity);
  return d;
}

void write_with_echo(const RunConfig& cfg, const std::string& path,
                     const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  echo_header(out, cfg);
  body(out);
}

void cmd_generate(const RunConfig& cfg) {
  auto catalog = load_or_generate_catalog(cfg, "");
  const auto path = out_path(cfg, "catalog.csv");
  write_with_echo(cfg, path,
                  [&](std::ostream& o) { write_catalog(catalog, o); });
  std::cout << "wrote " << path << " (" << catalog.size() << " rows)\n";
}

void cmd_features(const RunConfig& cfg, const std::string& catalog) {
  IngestResult result;
  FeatureSet fs_set;
  try {
    result = ingest_catalog(catalog);
    fs_set = engineer_features(result.records);
  } catch (const std::exception& e) {
    throw StageError{kExitData, e.what()};
  }
  const auto path = out_path(cfg, "features.csv");
  write_with_echo(cfg, path,
                  [&](std::ostream& o) { write_features(fs_set, o); });
  std::cout << "wrote " << path << " (" << fs_set.rows.size() << " rows, "
            << result.dropped_rows << " dropped, " << fs_set.excluded.size()
            << " excluded)\n";
}

void cmd_kernel(const RunConfig& cfg, const std::string& catalog) {
  auto d = prepare(cfg, catalog);
  const auto emb_path = out_path(cfg, "embedding.csv");
  write_with_echo(cfg, emb_path,
                  [&](std::ostream& o) { write_embedding(d.embedding, o); });
  const auto sim_path = out_path(cfg, "similarity.csv");
  write_with_echo(cfg, sim_path, [&](std::ostream& o) {
    write_similarity_csv(d.similarity, o);
  });
  write_similarity_bin(d.similarity, out_path(cfg, "similarity.bin"));
  std::cout << "wrote " << emb_path << ", " << sim_path
            << " and similarity.bin (n=" << d.similarity.n << ")\n";
}

void cmd_build(const RunConfig& cfg, const std::string& catalog) {
  auto d = prepare(cfg, catalog);
  QuboModel model;
  try {
    model = build_qubo(d.instance);
  } catch (const std::exception& e) {
    throw StageError{kExitBuild, e.what()};
  }
  const auto path = out_path(cfg, "qubo.txt");
  write_with_echo(cfg, path, [&](std::ostream& o) {
    write_qubo(model, d.instance, o, cfg.fold_offset);
  });
  std::cout << "wrote " << path << " (" << model.coefficients.size()
            << " entries, " << model.n_vars << " vars)\n";
}

void write_solution(const RunConfig& cfg, const std::string& solver,
                    double best, const std::vector<std::uint8_t>& bits,
                    const std::vector<double>& per_read) {
  const auto path = out_path(cfg, "solution.json");
  write_result_json(path, solver, cfg.seed, config_echo(cfg), best, bits,
                    per_read);
  std::cout << "wrote " << path << " (best " << format_double(best) << ")\n";
}

void solve_annealer(const RunConfig& cfg, const QuboModel& model) {
  SampleSet set;
  try {
    set = cfg.solver == "sa" ? solve_sa(model, cfg.anneal_config())
                             : solve_sqa(model, cfg.anneal_config());
  } catch (const std::exception& e) {
    throw StageError{kExitSolve, e.what()};
  }
  std::vector<double> energies;
  energies.reserve(set.samples.size());
  for (const auto& s : set.samples) energies.push_back(s.energy);
  write_solution(cfg, cfg.solver, set.best().energy, set.best().bits, energies);
}

void solve_metaheuristic(const RunConfig& cfg, const ProblemInstance& inst) {
  MetaheuristicResult res;
  try {
    if (cfg.solver == "pso")
      res = solve_pso(inst, cfg.metaheuristic_config());
    else if (cfg.solver == "ga")
      res = solve_ga(inst, cfg.metaheuristic_config());
    else
      res = solve_aco(inst, cfg.metaheuristic_config());
  } catch (const std::exception& e) {
    throw StageError{kExitSolve, e.what()};
  }
  write_solution(cfg, cfg.solver, res.fitness, res.bits, {});
}

void cmd_solve(const RunConfig& cfg, const std::string& qubo_path,
               const std::string& catalog) {
  if (cfg.solver == "sa" || cfg.solver == "sqa") {
    if (qubo_path.empty())
      throw ArgumentError("solver " + cfg.solver + " needs --qubo");
    QuboFile qf;
    try {
      qf = read_qubo(qubo_path);
    } catch (const std::exception& e) {
      throw StageError{kExitData, e.what()};
    }
    solve_annealer(cfg, qf.model);
  } else if (cfg.solver == "pso" || cfg.solver == "ga" ||
             cfg.solver == "aco") {
    if (catalog.empty())
      throw ArgumentError("solver " + cfg.solver + " needs --catalog");
    solve_metaheuristic(cfg, prepare(cfg, catalog).instance);
  } else {
    throw ArgumentError("unknown solver: " + cfg.solver);
  }
}

void audit_plan(const RunConfig& cfg, const PipelineData& d,
                const AllocationPlan& plan) {
  const auto report = compute_kpis(plan, d.features, d.instance, cfg.tau);
  const auto kpi_path = out_path(cfg, "kpi.json");
  write_kpi_json(report, kpi_path);
  write_with_echo(cfg, out_path(cfg, "utilization.csv"),
                  [&](std::ostream& o) { write_utilization_csv(report, o); });
  write_with_echo(cfg, out_path(cfg, "selected_similarity.csv"),
                  [&](std::ostream& o) {
                    write_selected_similarity_csv(plan, d.instance, o);
                  });
  std::cout << "wrote " << kpi_path << " (profit "
            << format_double(report.net_profit) << ", violations "
            << report.capacity_violations << ")\n";
}

AllocationPlan plan_from_bits(const PipelineData& d,
                              const std::vector<std::uint8_t>& bits) {
  const auto n_full = static_cast<size_t>(d.instance.n_vars());
  const auto n_dec =
      static_cast<size_t>(d.instance.periods) * d.instance.n_skus;
  if (bits.size() == n_full) return decode(bits, d.instance);
  if (bits.size() == n_dec) return decode_decisions(bits, d.instance);
  throw ArgumentError("solution bit length matches neither the QUBO nor the "
                      "decision-only layout");
}

void cmd_audit(const RunConfig& cfg, const std::string& catalog,
               const std::string& solution_path) {
  auto d = prepare(cfg, catalog);
  std::vector<std::uint8_t> bits;
  try {
    std::ifstream in(solution_path);
    if (!in) throw IoError("cannot open solution file: " + solution_path);
    nlohmann::json j;
    in >> j;
    bits = rle_decode(j.at("best_bits").get<std::string>());
  } catch (const std::exception& e) {
    throw StageError{kExitData, e.what()};
  }
  audit_plan(cfg, d, plan_from_bits(d, bits));
}

void cmd_pipeline(const RunConfig& cfg, const std::string& catalog) {
  auto d = prepare(cfg, catalog);
  if (catalog.empty())
    write_with_echo(cfg, out_path(cfg, "catalog.csv"),
                    [&](std::ostream& o) { write_catalog(d.records, o); });
  write_with_echo(cfg, out_path(cfg, "features.csv"),
                  [&](std::ostream& o) { write_features(d.features, o); });
  write_with_echo(cfg, out_path(cfg, "embedding.csv"),
                  [&](std::ostream& o) { write_embedding(d.embedding, o); });
  write_with_echo(cfg, out_path(cfg, "similarity.csv"), [&](std::ostream& o) {
    write_similarity_csv(d.similarity, o);
  });
  write_similarity_bin(d.similarity, out_path(cfg, "similarity.bin"));

  AllocationPlan plan;
  if (cfg.solver == "sa" || cfg.solver == "sqa") {
    QuboModel model;
    try {
      model = build_qubo(d.instance);
    } catch (const std::exception& e) {
      throw StageError{kExitBuild, e.what()};
    }
    write_with_echo(cfg, out_path(cfg, "qubo.txt"), [&](std::ostream& o) {
      write_qubo(model, d.instance, o, cfg.fold_offset);
    });
    SampleSet set;
    try {
      set = cfg.solver == "sa" ? solve_sa(model, cfg.anneal_config())
                               : solve_sqa(model, cfg.anneal_config());
    } catch (const std::exception& e) {
      throw StageError{kExitSolve, e.what()};
    }
    std::vector<double> energies;
    for (const auto& s : set.samples) energies.push_back(s.energy);
    const auto bits = refine_solution(d.instance, set.best().bits);
    write_solution(cfg, cfg.solver, energy(model, bits), bits, energies);
    plan = decode(bits, d.instance);
  } else if (cfg.solver == "pso" || cfg.solver == "ga" ||
             cfg.solver == "aco") {
    MetaheuristicResult res;
    try {
      if (cfg.solver == "pso")
        res = solve_pso(d.instance, cfg.metaheuristic_config());
      else if (cfg.solver == "ga")
        res = solve_ga(d.instance, cfg.metaheuristic_config());
      else
        res = solve_aco(d.instance, cfg.metaheuristic_config());
    } catch (const std::exception& e) {
      throw StageError{kExitSolve, e.what()};
    }
    write_solution(cfg, cfg.solver, res.fitness, res.bits, {});
    plan = decode_decisions(res.bits, d.instance);
  } else {
    throw ArgumentError("unknown solver: " + cfg.solver);
  }
  audit_plan(cfg, d, plan);
}

void cmd_ablate(const RunConfig& cfg, const std::string& catalog) {
  auto d = prepare(cfg, catalog);
  AblationInput input;
  input.instance = d.instance;
  input.features = d.features;
  input.raw_kernel_features = d.raw_kernel;
  input.method = parse_method(cfg.similarity_method);
  input.angle_scale = cfg.angle_scale;

  std::vector<AblationVariant> variants;
  if (cfg.variants.empty()) {
    variants = all_ablation_variants();
  } else {
    std::string token;
    std::istringstream iss(cfg.variants);
    while (std::getline(iss, token, ','))
      variants.push_back(ablation_variant_from_string(trim(token)));
  }

  AblationSummary summary;
  try {
    summary =
        run_ablation(input, variants, cfg.repeats, cfg.seed, cfg.anneal_config());
  } catch (const ArgumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError{kExitSolve, e.what()};
  }
  const auto path = out_path(cfg, "ablation.csv");
  write_with_echo(cfg, path,
                  [&](std::ostream& o) { write_ablation_csv(summary, o); });
  write_ablation_cells_json(summary, out_path(cfg, "ablation_cells.json"));
  std::cout << "wrote " << path << " (" << summary.variants.size()
            << " variants x " << cfg.repeats << " repeats)\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  // config file first, flags override
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") load_config_file(cfg, argv[i + 1]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  }

  CLI::App app{"multi-period SKU allocation toolkit"};
  app.require_subcommand(1);
  std::string config_path, catalog, qubo_path, solution_path;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--seed", cfg.seed, "global random seed");
  app.add_option("--out-dir", cfg.out_dir, "artifact output directory");

  auto add_instance_flags = [&](CLI::App* sub) {
    sub->add_option("--periods", cfg.periods, "planning periods T");
    sub->add_option("--slack-bits", cfg.slack_bits, "capacity slack bits B");
    sub->add_option("--capacity", cfg.capacity, "capacity per period C");
    sub->add_option("--sku-target", cfg.sku_target, "SKU count target K");
    sub->add_option("--lambda-m", cfg.qubo_weights.margin, "margin weight");
    sub->add_option("--lambda-s", cfg.qubo_weights.similarity,
                    "similarity weight");
    sub->add_option("--lambda-r", cfg.qubo_weights.risk, "risk weight");
    sub->add_option("--lambda-inv", cfg.qubo_weights.inventory,
                    "inventory risk weight");
    sub->add_option("--lambda-def", cfg.qubo_weights.defect,
                    "defect risk weight");
    sub->add_option("--lambda-c", cfg.qubo_weights.capacity,
                    "capacity penalty weight");
    sub->add_option("--lambda-k", cfg.qubo_weights.cardinality,
                    "cardinality weight");
    sub->add_option("--lambda-sku-limit", cfg.qubo_weights.sku_limit,
                    "SKU limit fine-tune weight");
    sub->add_option("--lambda-top5", cfg.qubo_weights.top5,
                    "top-5 weight (negative = auto)");
    sub->add_option("--similarity", cfg.similarity_method,
                    "quantum | cosine");
    sub->add_option("--angle-scale", cfg.angle_scale,
                    "kernel angle scale factor");
  };
  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--solver", cfg.solver, "sa | sqa | pso | ga | aco");
    sub->add_option("--reads", cfg.reads, "annealer reads");
    sub->add_option("--sweeps", cfg.sweeps, "sweeps per read (0 = default)");
    sub->add_option("--threads", cfg.threads, "solver threads (0 = auto)");
  };

  auto* generate = app.add_subcommand("generate", "synthesize a catalog CSV");
  generate->add_option("--skus", cfg.skus, "target SKU count");
  generate->add_option("--base", cfg.base_catalog, "base catalog CSV");
  generate->add_option("--base-count", cfg.base_count,
                       "built-in base catalog size");

  auto* features = app.add_subcommand("features", "engineer features");
  features->add_option("--catalog", catalog, "input catalog CSV")->required();

  auto* kernel = app.add_subcommand("kernel", "embeddings and similarity");
  kernel->add_option("--catalog", catalog, "input catalog CSV")->required();
  add_instance_flags(kernel);

  auto* build = app.add_subcommand("build", "assemble the QUBO");
  build->add_option("--catalog", catalog, "input catalog CSV")->required();
  build->add_flag("--fold-offset", cfg.fold_offset,
                  "fold the constant offset into entry (0,0)");
  add_instance_flags(build);

  auto* solve = app.add_subcommand("solve", "minimize a QUBO or instance");
  solve->add_option("--qubo", qubo_path, "QUBO file (sa/sqa)");
  solve->add_option("--catalog", catalog, "catalog CSV (pso/ga/aco)");
  add_instance_flags(solve);
  add_solver_flags(solve);

  auto* audit = app.add_subcommand("audit", "KPIs for a stored solution");
  audit->add_option("--catalog", catalog, "input catalog CSV")->required();
  audit->add_option("--solution", solution_path, "solution JSON")->required();
  audit->add_option("--tau", cfg.tau, "redundant-pair threshold");
  add_instance_flags(audit);

  auto* pipeline = app.add_subcommand("pipeline", "end-to-end run");
  pipeline->add_option("--catalog", catalog,
                       "input catalog CSV (omit to synthesize)");
  pipeline->add_option("--skus", cfg.skus, "synthesis target SKU count");
  pipeline->add_option("--tau", cfg.tau, "redundant-pair threshold");
  add_instance_flags(pipeline);
  add_solver_flags(pipeline);

  auto* ablate = app.add_subcommand("ablate", "term-removal study");
  ablate->add_option("--catalog", catalog,
                     "input catalog CSV (omit to synthesize)");
  ablate->add_option("--skus", cfg.skus, "synthesis target SKU count");
  ablate->add_option("--variants", cfg.variants,
                     "comma-separated variant names (default all)");
  ablate->add_option("--repeats", cfg.repeats, "seeded repeats per variant");
  add_instance_flags(ablate);
  add_solver_flags(ablate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) cmd_generate(cfg);
    else if (features->parsed()) cmd_features(cfg, catalog);
    else if (kernel->parsed()) cmd_kernel(cfg, catalog);
    else if (build->parsed()) cmd_build(cfg, catalog);
    else if (solve->parsed()) cmd_solve(cfg, qubo_path, catalog);
    else if (audit->parsed()) cmd_audit(cfg, catalog, solution_path);
    else if (pipeline->parsed()) cmd_pipeline(cfg, catalog);
    else if (ablate->parsed()) cmd_ablate(cfg, catalog);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
