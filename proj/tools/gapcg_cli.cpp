// Copyright 2026 The gapcg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gapcg: run, bench, sweep and generate on top of the C API.
//
// Exit codes: 0 ok, 1 solver failure, 2 usage error, 3 invalid instance,
// 4 unreadable or malformed file.

#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gapcg/gapcg.h"

namespace {

constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidInstance = 3;
constexpr int kExitFile = 4;

int ExitCodeFor(gapcg_status s) {
  switch (s) {
    case GAPCG_OK:
      return 0;
    case GAPCG_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case GAPCG_ERR_VALIDATION:
      return kExitInvalidInstance;
    case GAPCG_ERR_PARSE:
    case GAPCG_ERR_IO:
      return kExitFile;
    default:
      return kExitSolver;
  }
}

int Report(gapcg_status s) {
  std::fprintf(stderr, "gapcg: %s: %s\n", gapcg_status_string(s), gapcg_last_error());
  return ExitCodeFor(s);
}

struct ConfigDeleter {
  void operator()(gapcg_config* c) const { gapcg_config_free(c); }
};
struct InstanceDeleter {
  void operator()(gapcg_instance* i) const { gapcg_instance_free(i); }
};
struct ReportDeleter {
  void operator()(gapcg_report* r) const { gapcg_report_free(r); }
};
using ConfigPtr = std::unique_ptr<gapcg_config, ConfigDeleter>;
using InstancePtr = std::unique_ptr<gapcg_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<gapcg_report, ReportDeleter>;

const std::vector<std::string> kMethods = {"dantzig", "pessoa", "lt", "mt", "lr"};

// Flags shared by run, bench and sweep.
struct SolverFlags {
  double time_limit = 60.0;
  double epsilon = 1e-6;
  double delta = 1e-6;
  double mip_gap = 1e-5;
  std::optional<double> a2, a1, a0;
  int workers = 1;
  std::string format = "single";

  void Attach(CLI::App* app) {
    app->add_option("--time-limit", time_limit, "Time limit per run in seconds")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--epsilon", epsilon, "Reduced-cost acceptance margin")
        ->check(CLI::PositiveNumber);
    app->add_option("--delta", delta, "Template similarity threshold")
        ->check(CLI::Range(0.0, 0.4999999));
    app->add_option("--mip-gap", mip_gap, "Relative integer gap for early stop")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--age-a2", a2, "Age threshold coefficient on ratio^2");
    app->add_option("--age-a1", a1, "Age threshold coefficient on ratio");
    app->add_option("--age-a0", a0, "Age threshold constant term");
    app->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--format", format, "Instance file format")
        ->check(CLI::IsMember({"orlib", "single"}));
  }

  gapcg_format Format() const {
    return format == "orlib" ? GAPCG_FORMAT_ORLIB : GAPCG_FORMAT_SINGLE;
  }

  // Builds a config; the per-cell method and seed are set by the caller.
  gapcg_status Build(ConfigPtr* out, bool pricing_workers) const {
    gapcg_config* raw = nullptr;
    gapcg_status s = gapcg_config_create(&raw);
    if (s != GAPCG_OK) return s;
    out->reset(raw);
    if ((s = gapcg_config_set_time_limit(raw, time_limit)) != GAPCG_OK) return s;
    if ((s = gapcg_config_set_epsilon(raw, epsilon)) != GAPCG_OK) return s;
    if ((s = gapcg_config_set_delta(raw, delta)) != GAPCG_OK) return s;
    if ((s = gapcg_config_set_mip_gap(raw, mip_gap)) != GAPCG_OK) return s;
    if (a2 || a1 || a0) {
      s = gapcg_config_set_age_policy(raw, a2.value_or(0.0), a1.value_or(0.0),
                                      a0.value_or(1.0));
      if (s != GAPCG_OK) return s;
    }
    if (pricing_workers) s = gapcg_config_set_workers(raw, workers);
    return s;
  }
};

const char* OutputPath(const std::string& path) {
  return path.empty() || path == "-" ? nullptr : path.c_str();
}

int CmdRun(const SolverFlags& flags, const std::string& path, size_t index,
           const std::string& method, uint64_t seed, const std::string& output) {
  ConfigPtr cfg;
  gapcg_status s = flags.Build(&cfg, true);
  if (s != GAPCG_OK) return Report(s);
  if ((s = gapcg_config_set_method(cfg.get(), method.c_str())) != GAPCG_OK) {
    return Report(s);
  }
  if ((s = gapcg_config_set_seed(cfg.get(), seed)) != GAPCG_OK) return Report(s);
  gapcg_instance* inst_raw = nullptr;
  if ((s = gapcg_instance_load(path.c_str(), flags.Format(), index, &inst_raw)) !=
      GAPCG_OK) {
    return Report(s);
  }
  InstancePtr inst(inst_raw);
  if ((s = gapcg_instance_validate(inst.get())) != GAPCG_OK) return Report(s);
  gapcg_report* report_raw = nullptr;
  if ((s = gapcg_run(inst.get(), cfg.get(), &report_raw)) != GAPCG_OK) {
    return Report(s);
  }
  ReportPtr report(report_raw);
  if ((s = gapcg_report_write_tsv(report.get(), OutputPath(output))) != GAPCG_OK) {
    return Report(s);
  }
  return 0;
}

int CmdBench(const SolverFlags& flags, const std::vector<std::string>& paths,
             const std::vector<std::string>& methods,
             const std::vector<uint64_t>& seeds, const std::string& output) {
  // Cells run in parallel; each one prices on a single thread.
  ConfigPtr cfg;
  gapcg_status s = flags.Build(&cfg, false);
  if (s != GAPCG_OK) return Report(s);
  std::vector<const char*> path_ptrs;
  for (const std::string& p : paths) path_ptrs.push_back(p.c_str());
  std::vector<const char*> method_ptrs;
  for (const std::string& m : methods) method_ptrs.push_back(m.c_str());
  s = gapcg_bench(path_ptrs.data(), path_ptrs.size(), flags.Format(),
                  method_ptrs.data(), method_ptrs.size(), seeds.data(), seeds.size(),
                  cfg.get(), flags.workers, OutputPath(output));
  return s == GAPCG_OK ? 0 : Report(s);
}

struct SweepFlags {
  std::vector<int> taus;
  int replications = 5;
  int window = 5;
  double relative_tie = 0.01;
  double absolute_tie = 1.0;
};

int CmdSweep(const SolverFlags& flags, const SweepFlags& sweep,
             const std::string& path, size_t index, const std::string& method,
             uint64_t seed, const std::string& output) {
  ConfigPtr cfg;
  gapcg_status s = flags.Build(&cfg, true);
  if (s != GAPCG_OK) return Report(s);
  if ((s = gapcg_config_set_seed(cfg.get(), seed)) != GAPCG_OK) return Report(s);
  gapcg_instance* inst_raw = nullptr;
  if ((s = gapcg_instance_load(path.c_str(), flags.Format(), index, &inst_raw)) !=
      GAPCG_OK) {
    return Report(s);
  }
  InstancePtr inst(inst_raw);
  gapcg_sweep_spec spec;
  gapcg_sweep_spec_default(&spec);
  spec.tau_values = sweep.taus.data();
  spec.num_tau_values = sweep.taus.size();
  spec.replications = sweep.replications;
  spec.time_limit = flags.time_limit;
  spec.smoothing_window = sweep.window;
  spec.relative_tie = sweep.relative_tie;
  spec.absolute_tie = sweep.absolute_tie;
  int selected = 0;
  s = gapcg_sweep(inst.get(), method.c_str(), &spec, cfg.get(), OutputPath(output),
                  &selected);
  if (s != GAPCG_OK) return Report(s);
  std::fprintf(stderr, "selected tau: %d\n", selected);
  return 0;
}

int CmdGenerate(const gapcg_generator_spec& spec, const std::string& name,
                const std::string& output) {
  gapcg_instance* raw = nullptr;
  gapcg_status s = gapcg_instance_generate(&spec, &raw);
  if (s != GAPCG_OK) return Report(s);
  InstancePtr inst(raw);
  if (!name.empty() && (s = gapcg_instance_set_name(inst.get(), name.c_str())) != GAPCG_OK) {
    return Report(s);
  }
  if ((s = gapcg_instance_save(inst.get(), output.c_str())) != GAPCG_OK) {
    return Report(s);
  }
  double ratio = 0.0;
  gapcg_instance_ratio(inst.get(), &ratio);
  std::printf("ratio\t%.10g\n", ratio);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Column generation for the generalized assignment problem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gapcg_version()));

  SolverFlags solver;
  std::string output;
  size_t index = 0;

  CLI::App* run = app.add_subcommand("run", "Solve one instance, write the trace TSV");
  std::string run_path;
  std::string run_method = "dantzig";
  uint64_t run_seed = 0;
  run->add_option("instance", run_path, "Instance file")->required();
  run->add_option("--method", run_method, "Pricing method")
      ->check(CLI::IsMember(kMethods));
  run->add_option("--seed", run_seed, "Random seed");
  run->add_option("--index", index, "Instance index inside an orlib file");
  run->add_option("--output", output, "Output file (default stdout)");
  solver.Attach(run);

  CLI::App* bench = app.add_subcommand("bench", "Compare methods across instances");
  std::vector<std::string> bench_paths;
  std::vector<std::string> bench_methods = {"dantzig", "lt"};
  std::vector<uint64_t> bench_seeds = {0};
  bench->add_option("instances", bench_paths, "Instance files")->required();
  bench->add_option("--method", bench_methods, "Methods, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethods));
  bench->add_option("--seed", bench_seeds, "Seeds, comma separated")->delimiter(',');
  bench->add_option("--output", output, "Output file (default stdout)");
  solver.Attach(bench);

  CLI::App* sweep = app.add_subcommand("sweep", "Age-threshold sweep for one method");
  std::string sweep_path;
  std::string sweep_method = "lt";
  uint64_t sweep_seed = 0;
  SweepFlags sweep_flags;
  sweep->add_option("instance", sweep_path, "Instance file")->required();
  sweep->add_option("--method", sweep_method, "Pricing method")
      ->check(CLI::IsMember(kMethods));
  sweep->add_option("--seed", sweep_seed, "Base seed; replication r uses seed + r");
  sweep->add_option("--index", index, "Instance index inside an orlib file");
  sweep->add_option("--tau", sweep_flags.taus, "Age thresholds, comma separated")
      ->delimiter(',')
      ->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--replications", sweep_flags.replications, "Runs per threshold")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--window", sweep_flags.window, "Smoothing window (odd)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--rel-tie", sweep_flags.relative_tie, "Relative tie margin")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--abs-tie", sweep_flags.absolute_tie, "Absolute tie margin (s)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--output", output, "Output file (default stdout)");
  solver.Attach(sweep);

  CLI::App* generate = app.add_subcommand("generate", "Write a random instance");
  gapcg_generator_spec gen;
  gapcg_generator_spec_default(&gen);
  std::string gen_name;
  generate->add_option("--machines", gen.num_machines, "Number of machines")
      ->check(CLI::PositiveNumber);
  generate->add_option("--jobs", gen.num_jobs, "Number of jobs")
      ->check(CLI::PositiveNumber);
  generate->add_option("--cost-min", gen.cost_min, "Smallest cost");
  generate->add_option("--cost-max", gen.cost_max, "Largest cost");
  generate->add_option("--resource-min", gen.resource_min, "Smallest resource use");
  generate->add_option("--resource-max", gen.resource_max, "Largest resource use");
  generate->add_option("--slack", gen.capacity_slack,
                       "Capacity as a fraction of the mean machine load")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--name", gen_name, "Instance name");
  generate->add_option("--output", output, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*run) return CmdRun(solver, run_path, index, run_method, run_seed, output);
  if (*bench) return CmdBench(solver, bench_paths, bench_methods, bench_seeds, output);
  if (*sweep) {
    return CmdSweep(solver, sweep_flags, sweep_path, index, sweep_method, sweep_seed,
                    output);
  }
  return CmdGenerate(gen, gen_name, output);
}
