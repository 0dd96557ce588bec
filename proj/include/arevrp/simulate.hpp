#pragma once

#include <string>
#include <vector>

#include "arevrp/evaluation.hpp"
#include "arevrp/instance.hpp"
#include "arevrp/search.hpp"
#include "arevrp/uncertainty.hpp"

namespace arevrp {

// Monte-Carlo study of a fixed solution under sampled consumption-rate
// scenarios. Costs follow the generalized cost with the simulation weights;
// infeasible scenarios stay in the aggregate statistics, only the box-plot
// detail is restricted to feasible draws.
struct ScenarioRow {
    int scenario = 0;
    double cost = 0.0;
    double recharge = 0.0;       // total energy recharged
    double avg_end_time = 0.0;   // mean arrival at the end depot, employed vehicles
    double avg_idle = 0.0;       // mean waiting time, employed vehicles
    bool feasible = false;
};

struct SimulationReport {
    std::string instance;
    std::string dist;
    double gamma = 0.0;
    int n_vehicles = 0;
    double avg = 0.0;
    double stddev = 0.0;  // population standard deviation
    double max = 0.0;
    double min = 0.0;
    double feasibility_pct = 0.0;
    std::vector<ScenarioRow> rows;
};

SimulationReport run_simulation(const Solution& sol, const Instance& inst, SampleDist dist, int count,
                                unsigned long seed, const CostWeights& w = CostWeights{}, int threads = 1);

struct CompareEntry {
    double gamma = 0.0;
    Solution solution;
    std::string label;  // e.g. "det", "gamma6"
};

// one run_simulation per (entry, distribution); callers supply the solved
// solutions per Gamma
std::vector<SimulationReport> compare_models(const std::vector<CompareEntry>& entries, const Instance& inst,
                                             const std::vector<SampleDist>& dists, int count, unsigned long seed,
                                             const CostWeights& w = CostWeights{}, int threads = 1);

void write_summary_csv(const std::vector<SimulationReport>& reports, const std::string& path);
// long format: gamma, dist, scenario id, value; feasible scenarios only
void write_boxplot_csv(const std::vector<SimulationReport>& reports, const std::string& path,
                       const std::string& quantity);  // "recharge" | "endtime" | "idle"

}  // namespace arevrp
