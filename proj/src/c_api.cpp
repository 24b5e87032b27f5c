// Copyright 2026 The Entroscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entroscope/entroscope.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "entroscope/io.hpp"

struct entroscope_report {
  entroscope::DiagramReport report;
};

struct entroscope_state {
  entroscope::LoadedState state;
};

namespace {

thread_local std::string g_last_error;

entroscope_status fail(entroscope_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
entroscope_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return ENTROSCOPE_OK;
  } catch (const entroscope::ValidationError& e) {
    return fail(ENTROSCOPE_ERR_VALIDATION, e.what());
  } catch (const entroscope::NumericalError& e) {
    return fail(ENTROSCOPE_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ENTROSCOPE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ENTROSCOPE_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

entroscope::PartitionSpec partition_for(const entroscope_state* state, const char* partition) {
  if (partition) return entroscope::parse_partition(partition);
  return entroscope::PartitionSpec::per_factor(entroscope::state_shape(state->state));
}

}  // namespace

extern "C" {

const char* entroscope_version(void) { return entroscope::kToolVersion.data(); }

const char* entroscope_last_error(void) { return g_last_error.c_str(); }

void entroscope_scenario_params_init(entroscope_scenario_params* params) {
  if (!params) return;
  *params = entroscope_scenario_params{};
  params->chunk_size = 4096;
  params->seed = entroscope::kDefaultSeed;
  params->with_observer = 1;
}

entroscope_status entroscope_run_scenario(const char* id, const entroscope_scenario_params* params,
                                          entroscope_report** out) {
  if (!id || !params || !out) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    entroscope::ScenarioConfig config;
    config.id = entroscope::parse_scenario_id(id);
    config.theta1 = params->theta1;
    config.theta2 = params->theta2;
    config.shots = params->shots;
    config.chunk_size = params->chunk_size;
    config.seed = params->seed;
    config.with_observer = params->with_observer != 0;
    if (params->grouping) config.grouping = params->grouping;
    if (params->use_angles) {
      config.angles = entroscope::ChshAngles{params->angles[0], params->angles[1], params->angles[2],
                                             params->angles[3]};
    }
    config.scan_points = params->scan_points;
    *out = new entroscope_report{entroscope::run_scenario(config)};
  });
}

entroscope_status entroscope_state_load(const char* path, entroscope_state** out) {
  if (!path || !out) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new entroscope_state{entroscope::load_state_file(path)}; });
}

entroscope_status entroscope_state_parse(const char* json_text, entroscope_state** out) {
  if (!json_text || !out) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new entroscope_state{entroscope::parse_state_json(json_text)}; });
}

void entroscope_state_free(entroscope_state* state) { delete state; }

size_t entroscope_state_factor_count(const entroscope_state* state) {
  return state ? entroscope::state_shape(state->state).factor_count() : 0;
}

entroscope_status entroscope_state_diagram(const entroscope_state* state, const char* partition,
                                           entroscope_report** out) {
  if (!state || !out) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto spec = partition_for(state, partition);
    *out = new entroscope_report{
        entroscope::run_state_diagram(entroscope::to_density(state->state), spec)};
  });
}

entroscope_status entroscope_state_audit(const entroscope_state* state, const char* partition,
                                         entroscope_report** out) {
  if (!state || !out) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto spec = partition_for(state, partition);
    *out = new entroscope_report{
        entroscope::run_state_audit(entroscope::to_density(state->state), spec)};
  });
}

entroscope_status entroscope_report_render(const entroscope_report* report, entroscope_format format,
                                           char** text) {
  if (!report || !text) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  *text = nullptr;
  return guarded([&] {
    switch (format) {
      case ENTROSCOPE_FORMAT_JSON: *text = copy_string(entroscope::report_to_json(report->report)); return;
      case ENTROSCOPE_FORMAT_TABLE: *text = copy_string(entroscope::render_report_table(report->report)); return;
    }
    throw entroscope::ValidationError("unknown output format");
  });
}

entroscope_status entroscope_report_quantity(const entroscope_report* report, const char* name,
                                             double* value) {
  if (!report || !name || !value) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  return guarded([&] { *value = report->report.quantity(name); });
}

void entroscope_report_free(entroscope_report* report) { delete report; }

void entroscope_string_free(char* text) { std::free(text); }

entroscope_status entroscope_parse_angle(const char* text, double* value) {
  if (!text || !value) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  return guarded([&] { *value = entroscope::parse_angle(text); });
}

entroscope_status entroscope_epr_grid(size_t points_per_axis, double max_angle, double* max_abs_center,
                                      double* max_purity_deviation) {
  if (!max_abs_center || !max_purity_deviation) return fail(ENTROSCOPE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto g = entroscope::epr_measure_grid(points_per_axis, max_angle);
    *max_abs_center = g.max_abs_center;
    *max_purity_deviation = g.max_purity_deviation;
  });
}

}  // extern "C"
