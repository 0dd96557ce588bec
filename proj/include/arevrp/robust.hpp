#pragma once

#include <string>
#include <vector>

#include "arevrp/evaluation.hpp"
#include "arevrp/instance.hpp"
#include "arevrp/search.hpp"
#include "arevrp/simplex.hpp"
#include "arevrp/uncertainty.hpp"

namespace arevrp {

// Second-stage dual polytope for a fixed first-stage solution. Rows of the
// primal system are tagged so the adversarial step can read off which duals
// multiply consumption-rate terms.
enum class RowKind { TimeProp, WindowLo, WindowHi, BatteryProp, BatteryInit, StationCap };

struct DualPolytope {
    // primal: min b^T y  s.t.  F y <= f,  H y <= g - G(h) x
    int num_y = 0;
    std::vector<double> b;

    struct PrimalRow {
        RowKind kind;
        bool h_group = false;               // lives in the H block (dual phi), else F (dual lambda)
        std::vector<std::pair<int, double>> coeffs;  // on y
        double rhs = 0.0;                   // f or g entry
        int arc_pu = -1, arc_pv = -1;       // physical arc of a battery row
        double arc_dist = 0.0;              // its distance (G(h) entry is h * dist)
    };
    std::vector<PrimalRow> rows;
    double kappa = 10000.0;

    int count(RowKind k) const {
        int c = 0;
        for (const auto& r : rows) c += r.kind == k ? 1 : 0;
        return c;
    }
};

DualPolytope build_dual(const Solution& sol, const Instance& inst, double kappa = 10000.0);

struct LpMaxResult {
    double value = 0.0;
    std::vector<double> lambda;  // duals of the F rows (in row order)
    std::vector<double> phi;     // duals of the H rows (in row order)
};

// maximizes phi^T (G(h) x - g) - lambda^T f over the box-bounded dual
// polytope, exactly (bounded-variable simplex)
LpMaxResult lp_max(const DualPolytope& poly, const Scenario& h, const Instance& inst);

struct AdResult {
    Scenario worst;
    double zeta = 0.0;
    int iterations = 0;
    bool hit_iteration_cap = false;
};

// alternating-direction maximization of the separable bilinear subproblem;
// restarts from the nominal scenario, a budget-truncated all-up vertex on the
// solution's arcs, and optionally a previous worst case; best zeta wins
AdResult ad_subproblem(const Solution& sol, const BudgetSet& set, const Instance& inst, double kappa, double tol,
                       const Scenario* warm_start = nullptr, int max_iters = 100);

enum class CcgStatus { OptimalWithinDelta, NoRobustFeasible, IterationLimit };

std::string to_string(CcgStatus s);

struct CcgLogEntry {
    int iter = 0;
    double incumbent_cost = 0.0;
    bool robust_feasible = false;
    double alpha = 0.0, beta = 0.0;
    double temperature = 0.0;
    int scenario_count = 0;
    std::string event;
};

struct CcgResult {
    Solution best;
    bool has_solution = false;
    double cost = 0.0;              // generalized cost of best over final scenario set
    double zeta = 0.0;              // subproblem value at termination
    double gap = 0.0;               // zeta - cost at termination
    double worst_consumption = 0.0;
    double distance = 0.0;
    int vehicles = 0;
    CcgStatus status = CcgStatus::IterationLimit;
    bool time_limit_hit = false;
    std::vector<Scenario> scenarios;  // accumulated set, nominal first
    std::vector<CcgLogEntry> log;
    double seconds = 0.0;
    int vns_iterations = 0;
};

// column-and-constraint generation around the VNS-TS search; gamma == 0
// degenerates to the deterministic solver (runs the search to its budget)
CcgResult ccg_solve(const Instance& inst, const BudgetSet& set, const SearchConfig& cfg);

}  // namespace arevrp
