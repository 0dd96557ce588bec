#pragma once

#include <string>
#include <vector>

#include "arevrp/evaluation.hpp"
#include "arevrp/instance.hpp"
#include "arevrp/robust.hpp"
#include "arevrp/uncertainty.hpp"

namespace arevrp {

// Everything needed to reproduce a run; embedded in every artifact.
struct RunManifest {
    std::string command;
    std::string instance_path;
    double gamma = 0.0;
    double hhat_fraction = 0.1;
    unsigned long seed = 0;
    std::string config_overrides;  // raw JSON text, empty when none
    std::string tool_version;
    std::string build_id;
    double wall_clock_s = 0.0;
};

std::string manifest_to_json(const RunManifest& m);

// solution JSON: routes as vertex-name lists plus the manifest
void write_solution_json(const std::string& path, const Solution& sol, const Instance& inst, const RunManifest& m);
Solution read_solution_json(const std::string& path, const Instance& inst);

// run artifact: routes, scenario set, status, gap, log
void write_run_artifact(const std::string& path, const CcgResult& res, const Instance& inst, const RunManifest& m);

// scenario CSV: from,to,h over physical arcs
void write_scenario_csv(const std::string& path, const Scenario& s, const Instance& inst);
Scenario read_scenario_csv(const std::string& path, const Instance& inst);

// per-scenario schedule dump: route, vertex, a_min, a_max, p, y
void write_schedule_csv(const std::string& path, const Solution& sol, const Scenario& s, const Instance& inst);

// SearchConfig overrides from a JSON file (unknown keys rejected)
void apply_config_overrides(const std::string& json_text, SearchConfig& cfg);

}  // namespace arevrp
