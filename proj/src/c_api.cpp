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

#include "gapcg/gapcg.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapcg/cg_driver.hpp"
#include "gapcg/harness.hpp"
#include "gapcg/instance.hpp"
#include "gapcg/report.hpp"

struct gapcg_instance {
  gapcg::GapInstance value;
};

struct gapcg_config {
  gapcg::CgConfig cfg;
  std::string method = "dantzig";
};

struct gapcg_report {
  gapcg::RunReport value;
};

namespace {

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

gapcg_status Fail(gapcg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps exceptions from the core onto status codes.
template <typename F>
gapcg_status Guard(F&& body) {
  try {
    return body();
  } catch (const gapcg::ParseError& e) {
    return Fail(GAPCG_ERR_PARSE, std::string("parse error at token ") +
                                     std::to_string(e.token_offset()) + ": " +
                                     e.what());
  } catch (const IoError& e) {
    return Fail(GAPCG_ERR_IO, e.what());
  } catch (const gapcg::NumericError& e) {
    return Fail(GAPCG_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return Fail(GAPCG_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return Fail(GAPCG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GAPCG_ERR_INTERNAL, "unknown exception");
  }
}

gapcg::InstanceFormat ToFormat(gapcg_format f) {
  switch (f) {
    case GAPCG_FORMAT_ORLIB:
      return gapcg::InstanceFormat::kOrlibMulti;
    case GAPCG_FORMAT_SINGLE:
      return gapcg::InstanceFormat::kSingle;
  }
  throw std::invalid_argument("unknown instance format");
}

std::vector<gapcg::GapInstance> LoadFile(const char* path, gapcg_format format) {
  if (path == nullptr) throw std::invalid_argument("path is NULL");
  std::ifstream probe(path);
  if (!probe) throw IoError(std::string("cannot open ") + path);
  return gapcg::ReadInstanceFile(path, ToFormat(format));
}

// Writes through `write` to path, or to stdout when path is NULL.
template <typename W>
void WriteTo(const char* path, W&& write) {
  if (path == nullptr) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError(std::string("cannot open ") + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError(std::string("write failed: ") + path);
}

gapcg::SweepSpec ToSweepSpec(const gapcg_sweep_spec* spec) {
  if (spec == nullptr) throw std::invalid_argument("sweep spec is NULL");
  if (spec->num_tau_values == 0 || spec->tau_values == nullptr) {
    throw std::invalid_argument("sweep: no tau values");
  }
  gapcg::SweepSpec s;
  s.tau_values.assign(spec->tau_values, spec->tau_values + spec->num_tau_values);
  s.replications = spec->replications;
  s.time_limit = spec->time_limit;
  s.smoothing_window = spec->smoothing_window;
  s.relative_tie = spec->relative_tie;
  s.absolute_tie = spec->absolute_tie;
  if (s.replications < 1) throw std::invalid_argument("sweep: replications < 1");
  if (!(s.time_limit > 0)) throw std::invalid_argument("sweep: time limit must be > 0");
  return s;
}

bool IsMethod(const char* m) {
  return m != nullptr &&
         (std::strcmp(m, "lr") == 0 || gapcg::ParsePricingMethod(m).has_value());
}

}  // namespace

extern "C" {

const char* gapcg_version(void) { return "1.0.0"; }

const char* gapcg_last_error(void) { return last_error.c_str(); }

const char* gapcg_status_string(gapcg_status status) {
  switch (status) {
    case GAPCG_OK:
      return "ok";
    case GAPCG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case GAPCG_ERR_PARSE:
      return "parse error";
    case GAPCG_ERR_VALIDATION:
      return "validation error";
    case GAPCG_ERR_IO:
      return "i/o error";
    case GAPCG_ERR_NUMERIC:
      return "numeric error";
    case GAPCG_ERR_INTERNAL:
      return "internal error";
    case GAPCG_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
  }
  return "unknown status";
}

gapcg_status gapcg_instance_count_in_file(const char* path, gapcg_format format,
                                          size_t* count) {
  return Guard([&] {
    if (count == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "count is NULL");
    *count = LoadFile(path, format).size();
    return GAPCG_OK;
  });
}

gapcg_status gapcg_instance_load(const char* path, gapcg_format format, size_t index,
                                 gapcg_instance** out) {
  return Guard([&] {
    if (out == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "out is NULL");
    std::vector<gapcg::GapInstance> all = LoadFile(path, format);
    if (index >= all.size()) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT,
                  "instance index " + std::to_string(index) + " out of range (file has " +
                      std::to_string(all.size()) + ")");
    }
    *out = new gapcg_instance{std::move(all[index])};
    return GAPCG_OK;
  });
}

void gapcg_generator_spec_default(gapcg_generator_spec* spec) {
  if (spec == nullptr) return;
  const gapcg::GeneratorSpec d;
  spec->num_machines = d.num_machines;
  spec->num_jobs = d.num_jobs;
  spec->cost_min = d.cost_min;
  spec->cost_max = d.cost_max;
  spec->resource_min = d.resource_min;
  spec->resource_max = d.resource_max;
  spec->capacity_slack = d.capacity_slack;
  spec->seed = d.seed;
}

gapcg_status gapcg_instance_generate(const gapcg_generator_spec* spec,
                                     gapcg_instance** out) {
  return Guard([&] {
    if (spec == nullptr || out == nullptr) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    gapcg::GeneratorSpec g;
    g.num_machines = spec->num_machines;
    g.num_jobs = spec->num_jobs;
    g.cost_min = spec->cost_min;
    g.cost_max = spec->cost_max;
    g.resource_min = spec->resource_min;
    g.resource_max = spec->resource_max;
    g.capacity_slack = spec->capacity_slack;
    g.seed = spec->seed;
    *out = new gapcg_instance{gapcg::GenerateInstance(g)};
    return GAPCG_OK;
  });
}

gapcg_status gapcg_instance_save(const gapcg_instance* instance, const char* path) {
  return Guard([&] {
    if (instance == nullptr || path == nullptr) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    WriteTo(path, [&](std::ostream& os) {
      os << gapcg::SerializeInstance(instance->value);
    });
    return GAPCG_OK;
  });
}

gapcg_status gapcg_instance_validate(const gapcg_instance* instance) {
  return Guard([&] {
    if (instance == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "instance is NULL");
    const gapcg::ValidationReport report = gapcg::Validate(instance->value);
    if (!report.ok()) return Fail(GAPCG_ERR_VALIDATION, report.ToString());
    return GAPCG_OK;
  });
}

gapcg_status gapcg_instance_dims(const gapcg_instance* instance, int* num_machines,
                                 int* num_jobs) {
  if (instance == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "instance is NULL");
  if (num_machines != nullptr) *num_machines = instance->value.num_machines;
  if (num_jobs != nullptr) *num_jobs = instance->value.num_jobs;
  return GAPCG_OK;
}

gapcg_status gapcg_instance_ratio(const gapcg_instance* instance, double* ratio) {
  if (instance == nullptr || ratio == nullptr) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  if (instance->value.num_machines <= 0) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "instance has no machines");
  }
  *ratio = instance->value.Ratio();
  return GAPCG_OK;
}

gapcg_status gapcg_instance_set_name(gapcg_instance* instance, const char* name) {
  if (instance == nullptr || name == nullptr) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  instance->value.name = name;
  return GAPCG_OK;
}

void gapcg_instance_free(gapcg_instance* instance) { delete instance; }

gapcg_status gapcg_config_create(gapcg_config** out) {
  if (out == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = new gapcg_config();
  return GAPCG_OK;
}

#define GAPCG_CHECK_CONFIG(c) \
  if ((c) == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "config is NULL")

gapcg_status gapcg_config_set_method(gapcg_config* config, const char* method) {
  GAPCG_CHECK_CONFIG(config);
  if (!IsMethod(method)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT,
                std::string("unknown method '") + (method ? method : "(null)") +
                    "' (expected dantzig, pessoa, lt, mt or lr)");
  }
  config->method = method;
  if (auto m = gapcg::ParsePricingMethod(method)) config->cfg.method = *m;
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_time_limit(gapcg_config* config, double seconds) {
  GAPCG_CHECK_CONFIG(config);
  if (!(seconds >= 0) || !std::isfinite(seconds)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "time limit must be finite and >= 0");
  }
  config->cfg.time_limit = std::chrono::duration<double>(seconds);
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_seed(gapcg_config* config, uint64_t seed) {
  GAPCG_CHECK_CONFIG(config);
  config->cfg.seed = seed;
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_epsilon(gapcg_config* config, double epsilon) {
  GAPCG_CHECK_CONFIG(config);
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "epsilon must be > 0");
  }
  config->cfg.epsilon = epsilon;
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_delta(gapcg_config* config, double delta) {
  GAPCG_CHECK_CONFIG(config);
  if (!(delta >= 0 && delta < 0.5)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "delta must lie in [0, 0.5)");
  }
  config->cfg.template_delta = delta;
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_mip_gap(gapcg_config* config, double mip_gap) {
  GAPCG_CHECK_CONFIG(config);
  if (!(mip_gap >= 0) || !std::isfinite(mip_gap)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "mip gap must be finite and >= 0");
  }
  config->cfg.mip_gap = mip_gap;
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_age_policy(gapcg_config* config, double a2, double a1,
                                         double a0) {
  GAPCG_CHECK_CONFIG(config);
  if (!std::isfinite(a2) || !std::isfinite(a1) || !std::isfinite(a0)) {
    return Fail(GAPCG_ERR_INVALID_ARGUMENT, "age coefficients must be finite");
  }
  config->cfg.age_policy_override = gapcg::AgePolicy{a2, a1, a0};
  return GAPCG_OK;
}

gapcg_status gapcg_config_set_workers(gapcg_config* config, int workers) {
  GAPCG_CHECK_CONFIG(config);
  if (workers < 1) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "workers must be >= 1");
  config->cfg.workers = workers;
  return GAPCG_OK;
}

#undef GAPCG_CHECK_CONFIG

void gapcg_config_free(gapcg_config* config) { delete config; }

gapcg_status gapcg_run(const gapcg_instance* instance, const gapcg_config* config,
                       gapcg_report** out) {
  return Guard([&] {
    if (instance == nullptr || config == nullptr || out == nullptr) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    const gapcg::ValidationReport v = gapcg::Validate(instance->value);
    if (!v.ok()) return Fail(GAPCG_ERR_VALIDATION, v.ToString());
    *out = new gapcg_report{gapcg::RunMethod(instance->value, config->method,
                                             config->cfg)};
    return GAPCG_OK;
  });
}

const char* gapcg_report_status(const gapcg_report* report) {
  if (report == nullptr) return "";
  return gapcg::ToString(report->value.status).data();
}

int gapcg_report_iterations(const gapcg_report* report) {
  return report ? report->value.iterations : 0;
}

int64_t gapcg_report_total_pivots(const gapcg_report* report) {
  return report ? report->value.total_pivots : 0;
}

int64_t gapcg_report_columns(const gapcg_report* report) {
  return report ? report->value.columns_generated : 0;
}

double gapcg_report_total_time(const gapcg_report* report) {
  return report ? report->value.total_time : 0.0;
}

int gapcg_report_integral(const gapcg_report* report) {
  return report && report->value.integral ? 1 : 0;
}

int gapcg_report_lb_int(const gapcg_report* report, int64_t* value) {
  if (report == nullptr || !report->value.bounds.lb_int) return 0;
  if (value != nullptr) *value = *report->value.bounds.lb_int;
  return 1;
}

int gapcg_report_ub(const gapcg_report* report, int64_t* value) {
  if (report == nullptr || !report->value.bounds.ub) return 0;
  if (value != nullptr) *value = *report->value.bounds.ub;
  return 1;
}

gapcg_status gapcg_report_write_tsv(const gapcg_report* report, const char* path) {
  return Guard([&] {
    if (report == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "report is NULL");
    WriteTo(path, [&](std::ostream& os) { gapcg::WriteRunTsv(report->value, os); });
    return GAPCG_OK;
  });
}

gapcg_status gapcg_report_tsv(const gapcg_report* report, char* buffer,
                              size_t capacity, size_t* needed) {
  return Guard([&] {
    if (report == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "report is NULL");
    std::ostringstream os;
    gapcg::WriteRunTsv(report->value, os);
    const std::string text = os.str();
    if (needed != nullptr) *needed = text.size() + 1;
    if (capacity < text.size() + 1 || buffer == nullptr) {
      return Fail(GAPCG_ERR_BUFFER_TOO_SMALL, "buffer too small for report");
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return GAPCG_OK;
  });
}

void gapcg_report_free(gapcg_report* report) { delete report; }

gapcg_status gapcg_bench(const char* const* instance_paths, size_t num_paths,
                         gapcg_format format, const char* const* methods,
                         size_t num_methods, const uint64_t* seeds, size_t num_seeds,
                         const gapcg_config* config, int workers,
                         const char* output_path) {
  return Guard([&] {
    if (config == nullptr || (num_paths && !instance_paths) ||
        (num_methods && !methods) || (num_seeds && !seeds)) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    if (num_paths == 0 || num_methods == 0 || num_seeds == 0) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT,
                  "bench needs at least one instance, method and seed");
    }
    if (workers < 1) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "workers must be >= 1");
    std::vector<std::string> method_list;
    for (size_t k = 0; k < num_methods; ++k) {
      if (!IsMethod(methods[k])) {
        return Fail(GAPCG_ERR_INVALID_ARGUMENT,
                    std::string("unknown method '") +
                        (methods[k] ? methods[k] : "(null)") + "'");
      }
      method_list.emplace_back(methods[k]);
    }
    std::vector<gapcg::GapInstance> instances;
    for (size_t k = 0; k < num_paths; ++k) {
      std::vector<gapcg::GapInstance> file = LoadFile(instance_paths[k], format);
      for (gapcg::GapInstance& inst : file) instances.push_back(std::move(inst));
    }
    const std::vector<uint64_t> seed_list(seeds, seeds + num_seeds);
    const std::vector<gapcg::BenchRow> rows =
        gapcg::RunBench(instances, method_list, seed_list, config->cfg, workers);
    WriteTo(output_path, [&](std::ostream& os) { gapcg::WriteBenchTsv(rows, os); });
    return GAPCG_OK;
  });
}

void gapcg_sweep_spec_default(gapcg_sweep_spec* spec) {
  if (spec == nullptr) return;
  const gapcg::SweepSpec d;
  spec->tau_values = nullptr;
  spec->num_tau_values = 0;
  spec->replications = d.replications;
  spec->time_limit = d.time_limit;
  spec->smoothing_window = d.smoothing_window;
  spec->relative_tie = d.relative_tie;
  spec->absolute_tie = d.absolute_tie;
}

gapcg_status gapcg_sweep(const gapcg_instance* instance, const char* method,
                         const gapcg_sweep_spec* spec, const gapcg_config* config,
                         const char* output_path, int* selected_tau) {
  return Guard([&] {
    if (instance == nullptr || config == nullptr) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    if (!IsMethod(method)) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT,
                  std::string("unknown method '") + (method ? method : "(null)") + "'");
    }
    const gapcg::SweepSpec s = ToSweepSpec(spec);
    const gapcg::ValidationReport v = gapcg::Validate(instance->value);
    if (!v.ok()) return Fail(GAPCG_ERR_VALIDATION, v.ToString());
    const gapcg::SweepResult result =
        gapcg::RunSweep(instance->value, method, s, config->cfg);
    WriteTo(output_path, [&](std::ostream& os) { gapcg::WriteSweepTsv(result, os); });
    if (selected_tau != nullptr) *selected_tau = result.selection.tau;
    return GAPCG_OK;
  });
}

gapcg_status gapcg_sweep_times(const gapcg_sweep_spec* spec, const double* times,
                               const char* output_path, int* selected_tau) {
  return Guard([&] {
    const gapcg::SweepSpec s = ToSweepSpec(spec);
    if (times == nullptr) return Fail(GAPCG_ERR_INVALID_ARGUMENT, "times is NULL");
    const size_t reps = static_cast<size_t>(s.replications);
    const gapcg::SweepResult result = gapcg::RunSweep(s, [&](int tau, int rep) {
      size_t k = 0;
      while (s.tau_values[k] != tau) ++k;
      return times[k * reps + static_cast<size_t>(rep)];
    });
    WriteTo(output_path, [&](std::ostream& os) { gapcg::WriteSweepTsv(result, os); });
    if (selected_tau != nullptr) *selected_tau = result.selection.tau;
    return GAPCG_OK;
  });
}

gapcg_status gapcg_sweep_select(const int* taus, const double* times, size_t n,
                                int window, double relative_tie, double absolute_tie,
                                int* selected_tau, double* smoothed) {
  return Guard([&] {
    if (taus == nullptr || times == nullptr || selected_tau == nullptr) {
      return Fail(GAPCG_ERR_INVALID_ARGUMENT, "NULL argument");
    }
    const gapcg::SweepSelection sel = gapcg::SelectThreshold(
        std::span<const int>(taus, n), std::span<const double>(times, n), window,
        relative_tie, absolute_tie);
    *selected_tau = sel.tau;
    if (smoothed != nullptr) {
      std::copy(sel.smoothed.begin(), sel.smoothed.end(), smoothed);
    }
    return GAPCG_OK;
  });
}

}  // extern "C"
