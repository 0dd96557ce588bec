#pragma once

#include <string>
#include <vector>

#include "arevrp/instance.hpp"

namespace arevrp {

// One energy-consumption-rate realization. Rates are stored per ordered pair
// of physical vertices so that dummy station copies and the end depot share
// the rate of the physical arc they stand on.
class Scenario {
public:
    int n = 0;                  // number of physical vertices
    std::vector<double> rates;  // n x n, energy per distance unit
    std::string label;

    Scenario() = default;
    Scenario(int n_phys, double fill, std::string lbl = "")
        : n(n_phys), rates(static_cast<size_t>(n_phys) * n_phys, fill), label(std::move(lbl)) {}

    double& at(int pi, int pj) { return rates[pi * n + pj]; }
    double at(int pi, int pj) const { return rates[pi * n + pj]; }

    // rate on the expanded-instance arc (u, v)
    double rate(const Instance& inst, int u, int v) const { return rates[inst.phys[u] * n + inst.phys[v]]; }

    bool close_to(const Scenario& other, double tol = 1e-9) const;
};

enum class SampleDist { ND, UD, NDC };

SampleDist parse_sample_dist(const std::string& tag);  // "nd" | "ud" | "ndc"

// Budget uncertainty set: per-arc box [nominal-hat, nominal+hat] plus a cap
// Gamma on the total normalized deviation.
class BudgetSet {
public:
    int n = 0;
    std::vector<double> nominal;  // n x n
    std::vector<double> hat;      // n x n, deviation half-width
    double gamma = 0.0;

    BudgetSet() = default;
    // hat = hat_fraction * nominal on every arc
    BudgetSet(const Instance& inst, double gamma_budget, double hat_fraction = 0.1);

    double nominal_at(int pi, int pj) const { return nominal[pi * n + pj]; }
    double hat_at(int pi, int pj) const { return hat[pi * n + pj]; }

    bool contains(const Scenario& s, double tol = 1e-9) const;
};

// The scenario with h = nominal everywhere; a member for any Gamma >= 0.
Scenario nominal_scenario(const BudgetSet& set);

struct WorstCaseResult {
    Scenario scenario;
    double gain = 0.0;  // objective improvement over the nominal scenario
};

// Maximizes sum_a coeff_a * h_a over the budget set in closed form: deviate
// the floor(Gamma) arcs of largest |coeff|*hat by the full half-width in the
// direction of coeff's sign, then spend any fractional budget on the next
// arc. Ties broken by arc id for determinism.
WorstCaseResult worst_case_linear(const BudgetSet& set, const std::vector<double>& coeff);

// Monte-Carlo sampling; draws are NOT clipped to the budget set, but rates
// are floored at 1e-6. Deterministic for a fixed seed.
std::vector<Scenario> sample(const BudgetSet& set, SampleDist dist, int count, unsigned long seed);

}  // namespace arevrp
