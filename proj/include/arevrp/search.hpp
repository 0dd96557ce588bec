#pragma once

#include <array>
#include <random>
#include <unordered_map>
#include <vector>

#include "arevrp/evaluation.hpp"
#include "arevrp/instance.hpp"
#include "arevrp/uncertainty.hpp"

namespace arevrp {

struct SearchConfig {
    int n_feas = 500;                 // consecutive infeasible VNS iterations allowed
    double alpha0 = 10.0, beta0 = 10.0;
    double alpha_min = 1.0, alpha_max = 5000.0;
    double beta_min = 1.0, beta_max = 5000.0;
    double penalty_factor = 1.2;
    int penalty_period = 2;           // streak length triggering an update
    int tabu_tenure_min = 15, tabu_tenure_max = 30;
    int n_tabu = 40;                  // tabu iterations per VNS step
    double delta_sa = 10.0;           // worsening accepted with probability 1/2 at T0
    double temp_floor = 1e-3;
    int max_vns_iters = 20000;
    int shake_routes_min = 2, shake_routes_max = 4;
    int shake_block_max = 3;
    int fleet = 0;                    // 0: one route per customer
    unsigned long seed = 1;
    double time_limit_s = 10800.0;
    double ccg_delta = 0.001;         // CCG absolute termination gap
    double ad_tol = 1e-4;             // AD relative gap
    double ad_kappa = 10000.0;        // dual box / slack penalty
    int ad_max_iters = 100;
};

inline double initial_temperature(const SearchConfig& cfg) { return cfg.delta_sa / std::log(2.0); }

enum TabuOperator {
    kTwoOptStar = 0,
    kExchangeIntra,
    kExchangeInter,
    kRelocateIntra,
    kRelocateInter,
    kStationInRe,
    kNumOperators
};

// Each operator keeps its own set of removed edges; an operator may not
// reinsert an edge while its tenure is positive.
class TabuState {
public:
    void clear();
    void decrement();
    bool is_tabu(int op, long long edge) const;
    void add(int op, long long edge, int tenure);

private:
    std::array<std::unordered_map<long long, int>, kNumOperators> sets_;
};

// sweep construction: angle-sorted insertion at the cheapest energy increment
Solution initial_solution(const Instance& inst, int fleet, unsigned long seed);

// VNS shaking: reversed blocks of consecutive vertices rotate between a few
// randomly chosen routes
Solution cyclic_exchange(const Solution& sol, std::mt19937_64& rng, const SearchConfig& cfg, const Instance& inst);

bool sa_accept(double current_cost, double candidate_cost, double temperature, std::mt19937_64& rng);

// two consecutive (in)feasible iterations scale the penalty weights by the
// configured factor, boxed to their limits; streaks reset when applied
void update_penalties(CostWeights& w, int& feasible_streak, int& infeasible_streak, const SearchConfig& cfg);

// incremental multi-scenario cost bookkeeping for the tabu scan
class CostCache {
public:
    CostCache(const Instance& inst, const std::vector<Scenario>& scenarios);
    void set_solution(const Solution& sol);
    const Solution& solution() const { return sol_; }

    double cost(const CostWeights& w) const;
    bool feasible() const;
    int vehicles() const { return sol_.employed_vehicles(); }

    struct Probe {
        double cost = 0.0;
        bool feasible = false;
        int vehicles = 0;
    };
    // cost of the solution with routes r1/r2 replaced (r2 < 0: only r1)
    Probe probe(const CostWeights& w, int r1, const Route& n1, int r2, const Route& n2) const;
    void replace(int r1, const Route& n1, int r2, const Route& n2);

private:
    RouteCost eval(const Route& r, int s) const;

    const Instance& inst_;
    const std::vector<Scenario>& scenarios_;
    Solution sol_;
    std::vector<std::vector<RouteCost>> per_route_;  // [route][scenario]
    std::vector<double> route_demand_;
    std::vector<double> scen_rec_, scen_tw_, scen_fl_;
    double fr_ = 0.0;
};

// applied-move record, for instrumentation in tests
struct TabuMoveRecord {
    int op = -1;
    double cost = 0.0;
    bool aspiration = false;  // an inserted edge was tabu when chosen
    std::vector<long long> inserted;
    std::vector<long long> removed;
    std::vector<int> tenures;
};

// one tabu-search run of cfg.n_tabu iterations over the six operators;
// returns the best solution seen (fewer employed vehicles when robust
// feasible, then generalized cost)
Solution tabu_search(const Solution& start, const std::vector<Scenario>& scenarios, const Instance& inst,
                     const SearchConfig& cfg, const CostWeights& w, TabuState& tabu, std::mt19937_64& rng,
                     double best_known_cost, std::vector<TabuMoveRecord>* trace = nullptr);

}  // namespace arevrp
