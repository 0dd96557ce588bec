#pragma once

#include <vector>

#include "arevrp/instance.hpp"
#include "arevrp/uncertainty.hpp"

namespace arevrp {

// Visit sequence of one vehicle: starts at the depot, ends at the end-depot
// clone, interleaves customers and station copies.
struct Route {
    std::vector<int> seq;

    int length() const { return static_cast<int>(seq.size()); }
    bool empty_route() const { return seq.size() <= 2; }
};

// First-stage decision: one route per employed vehicle. Cargo levels are
// implied by visit order and demands.
struct Solution {
    std::vector<Route> routes;

    int employed_vehicles() const {
        int k = 0;
        for (const auto& r : routes) k += r.empty_route() ? 0 : 1;
        return k;
    }
};

Route make_route(const Instance& inst, const std::vector<int>& middle);

// Per-route, per-scenario evaluation. Times are service starts; a_min is the
// earliest start achievable with deficit-driven charging (placed as early as
// capacity admits, covering everything each passed station is forced to
// supply), a_max the start when every preceding station charges to full.
// TW accumulates lateness of min(a_min, a_max) past the due dates, FL the
// excess of a_min over a_max, which is exactly the charge that no capacity-
// respecting plan can place. The reported schedule (arrival/battery/recharge)
// is the deficit-driven minimal-recharge schedule.
struct RouteEval {
    std::vector<double> a_min;
    std::vector<double> a_max;
    std::vector<double> arrival;
    std::vector<double> service_start;
    std::vector<double> battery;   // y on arrival, energy units
    std::vector<double> recharge;  // p, energy units
    double tw = 0.0;
    double fl = 0.0;
    double recharge_total = 0.0;   // energy units
    double recharge_time = 0.0;    // g * recharge_total
    double end_time = 0.0;         // arrival at the end depot
    double idle_time = 0.0;        // total waiting before ready times
    bool feasible = true;          // tw == 0 && fl == 0
};

RouteEval evaluate_route(const Route& route, const Scenario& scenario, const Instance& inst);

// allocation-light variant for the search inner loop; same recursions
struct RouteCost {
    double recharge_time = 0.0;
    double tw = 0.0;
    double fl = 0.0;

    bool feasible() const { return tw <= 1e-9 && fl <= 1e-9; }
};
RouteCost evaluate_route_cost(const Route& route, const Scenario& scenario, const Instance& inst);

// Scenario-level aggregate over all routes of a solution.
struct ScenarioEvaluation {
    std::vector<RouteEval> routes;
    double tw = 0.0;
    double fl = 0.0;
    double recharge_total = 0.0;  // energy units
    double recharge_time = 0.0;
    bool feasible = true;
};

ScenarioEvaluation evaluate_solution(const Solution& sol, const Scenario& scenario, const Instance& inst);

// Penalty weights of the generalized cost; (10,10) initial and in simulation.
struct CostWeights {
    double alpha = 10.0;
    double beta = 10.0;
    double alpha_min = 1.0, alpha_max = 5000.0;
    double beta_min = 1.0, beta_max = 5000.0;
};

// Cargo violation, scenario-independent: sum over routes of demand excess.
double cargo_violation(const Route& route, const Instance& inst);
double cargo_violation(const Solution& sol, const Instance& inst);

// max over scenarios of {recharge time + alpha*(TW+FL)} + beta*FR
double generalized_cost(const Solution& sol, const std::vector<Scenario>& scenarios, const Instance& inst,
                        const CostWeights& w);

bool robust_feasible(const Solution& sol, const std::vector<Scenario>& scenarios, const Instance& inst);

double total_distance(const Solution& sol, const Instance& inst);
// worst-case total consumed energy over the budget set for the fixed routes
double worst_case_consumption(const Solution& sol, const BudgetSet& set, const Instance& inst);

}  // namespace arevrp
