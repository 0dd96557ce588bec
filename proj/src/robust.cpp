#include "arevrp/robust.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace arevrp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;
}

DualPolytope build_dual(const Solution& sol, const Instance& inst, double kappa) {
    DualPolytope poly;
    poly.kappa = kappa;
    const double Q = inst.battery_capacity;
    const double g = inst.recharge_rate;

    // y layout per route: tau_k for every position, y_k battery-at-arrival,
    // p_k for stations
    for (const Route& route : sol.routes) {
        if (route.empty_route()) continue;  // nothing to schedule
        const int m = route.length() - 1;
        int tau0 = poly.num_y;
        poly.num_y += m + 1;
        int y0 = poly.num_y;
        poly.num_y += m + 1;
        std::vector<int> p_idx(m + 1, -1);
        for (int k = 1; k < m; ++k)
            if (inst.is_station(route.seq[k])) {
                p_idx[k] = poly.num_y++;
            }
        poly.b.resize(poly.num_y, 0.0);
        for (int k = 1; k < m; ++k)
            if (p_idx[k] >= 0) poly.b[p_idx[k]] = 1.0;

        auto add_row = [&](RowKind kind, bool h_group, std::vector<std::pair<int, double>> coeffs, double rhs) {
            DualPolytope::PrimalRow row;
            row.kind = kind;
            row.h_group = h_group;
            row.coeffs = std::move(coeffs);
            row.rhs = rhs;
            poly.rows.push_back(std::move(row));
            return static_cast<int>(poly.rows.size()) - 1;
        };

        // battery starts full
        add_row(RowKind::BatteryInit, false, {{y0, 1.0}}, Q);
        add_row(RowKind::BatteryInit, false, {{y0, -1.0}}, -Q);

        for (int k = 0; k <= m; ++k) {
            const Vertex& v = inst.vertices[route.seq[k]];
            add_row(RowKind::WindowHi, false, {{tau0 + k, 1.0}}, v.due);
            add_row(RowKind::WindowLo, false, {{tau0 + k, -1.0}}, -v.ready);
            if (k >= 1) {
                int u = route.seq[k - 1], w = route.seq[k];
                double step = inst.vertices[u].service + inst.travel_time(u, w);
                // tau_{k-1} - tau_k (+ g p_{k-1}) <= -step
                std::vector<std::pair<int, double>> c = {{tau0 + k - 1, 1.0}, {tau0 + k, -1.0}};
                if (p_idx[k - 1] >= 0) c.push_back({p_idx[k - 1], g});
                add_row(RowKind::TimeProp, true, std::move(c), -step);
                // y_k - y_{k-1} (- p_{k-1}) <= -h*d  (the G(h) entry)
                std::vector<std::pair<int, double>> cb = {{y0 + k, 1.0}, {y0 + k - 1, -1.0}};
                if (p_idx[k - 1] >= 0) cb.push_back({p_idx[k - 1], -1.0});
                int r = add_row(RowKind::BatteryProp, true, std::move(cb), 0.0);
                poly.rows[r].arc_pu = inst.phys[u];
                poly.rows[r].arc_pv = inst.phys[w];
                poly.rows[r].arc_dist = inst.distance(u, w);
            }
            if (p_idx[k] >= 0) {
                // y_k + p_k <= Q at stations
                add_row(RowKind::StationCap, false, {{y0 + k, 1.0}, {p_idx[k], 1.0}}, Q);
            }
        }
    }
    return poly;
}

namespace {

// objective coefficient of a dual row for a given scenario:
//   phi rows: (G(h) x - g)_r ; lambda rows: -f_r
double dual_obj_coeff(const DualPolytope::PrimalRow& row, const Scenario& h, const Instance& inst) {
    double gval = row.rhs;
    double ghx = 0.0;
    if (row.arc_pu >= 0) ghx = h.at(row.arc_pu, row.arc_pv) * row.arc_dist;
    if (row.h_group) return ghx - gval;
    return -gval;
}

}  // namespace

LpMaxResult lp_max(const DualPolytope& poly, const Scenario& h, const Instance& inst) {
    const int nrows = static_cast<int>(poly.rows.size());
    LpProblem lp(nrows);
    for (int r = 0; r < nrows; ++r) {
        lp.lower[r] = 0.0;
        lp.upper[r] = poly.kappa;
        lp.objective[r] = dual_obj_coeff(poly.rows[r], h, inst);
    }
    // one dual constraint per primal variable: -sum_r dual_r * Arow_r[v] <= b_v
    std::vector<std::vector<std::pair<int, double>>> per_var(poly.num_y);
    for (int r = 0; r < nrows; ++r)
        for (auto [v, c] : poly.rows[r].coeffs) per_var[v].push_back({r, -c});
    for (int v = 0; v < poly.num_y; ++v) lp.add_row_sparse(per_var[v], poly.b[v]);

    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) throw std::runtime_error("lp_max: dual polytope solve failed");
    LpMaxResult out;
    out.value = res.objective;
    out.lambda.assign(nrows, 0.0);
    out.phi.assign(nrows, 0.0);
    for (int r = 0; r < nrows; ++r) {
        if (poly.rows[r].h_group) out.phi[r] = res.x[r];
        else out.lambda[r] = res.x[r];
    }
    return out;
}

namespace {

// truncated all-up vertex on the arcs the solution uses, largest distances first
Scenario all_up_start(const Solution& sol, const BudgetSet& set, const Instance& inst) {
    const int n = set.n;
    std::vector<double> coeff(static_cast<size_t>(n) * n, 0.0);
    for (const Route& r : sol.routes)
        for (size_t k = 1; k < r.seq.size(); ++k)
            coeff[inst.phys[r.seq[k - 1]] * n + inst.phys[r.seq[k]]] += inst.distance(r.seq[k - 1], r.seq[k]);
    WorstCaseResult wc = worst_case_linear(set, coeff);
    wc.scenario.label = "all-up";
    return wc.scenario;
}

double ad_single(const Solution& sol, const BudgetSet& set, const Instance& inst, const DualPolytope& poly,
                 Scenario start, double tol, int max_iters, Scenario& worst_out, bool& cap_out, int& iters_out) {
    Scenario h = std::move(start);
    const int n = set.n;
    double ub = kInf;
    double lb = -kInf;
    cap_out = false;
    int it = 0;
    while (true) {
        ++it;
        LpMaxResult dual = lp_max(poly, h, inst);
        lb = dual.value;
        // fix duals, maximize over the budget set: coefficients on h from the
        // battery rows, constant from everything else
        std::vector<double> coeff(static_cast<size_t>(n) * n, 0.0);
        double base = 0.0;
        for (size_t r = 0; r < poly.rows.size(); ++r) {
            const auto& row = poly.rows[r];
            if (row.h_group) {
                if (row.arc_pu >= 0) {
                    coeff[row.arc_pu * n + row.arc_pv] += dual.phi[r] * row.arc_dist;
                    base += -row.rhs * dual.phi[r];
                } else {
                    base += dual_obj_coeff(row, h, inst) * dual.phi[r];
                }
            } else {
                base += dual_obj_coeff(row, h, inst) * dual.lambda[r];
            }
        }
        double nominal_part = 0.0;
        for (int a = 0; a < n * n; ++a) nominal_part += coeff[a] * set.nominal[a];
        WorstCaseResult wc = worst_case_linear(set, coeff);
        ub = base + nominal_part + wc.gain;
        h = wc.scenario;
        double denom = std::max(std::fabs(lb), 1e-10);
        if ((ub - lb) / denom < tol) break;
        if (it >= max_iters) {
            cap_out = true;
            break;
        }
    }
    worst_out = h;
    iters_out = it;
    return ub;
}

}  // namespace

AdResult ad_subproblem(const Solution& sol, const BudgetSet& set, const Instance& inst, double kappa, double tol,
                       const Scenario* warm_start, int max_iters) {
    DualPolytope poly = build_dual(sol, inst, kappa);
    AdResult best;
    best.zeta = -kInf;
    if (poly.num_y == 0) {  // no routes: subproblem value 0
        best.worst = nominal_scenario(set);
        best.zeta = 0.0;
        return best;
    }
    std::vector<Scenario> starts;
    starts.push_back(nominal_scenario(set));
    if (set.gamma > 0.0) starts.push_back(all_up_start(sol, set, inst));
    if (warm_start) starts.push_back(*warm_start);
    for (Scenario& s : starts) {
        Scenario worst;
        bool cap = false;
        int iters = 0;
        double zeta = ad_single(sol, set, inst, poly, s, tol, max_iters, worst, cap, iters);
        best.iterations += iters;
        if (zeta > best.zeta) {
            best.zeta = zeta;
            best.worst = worst;
            best.hit_iteration_cap = cap;
        }
    }
    best.worst.label = "ad-worst";
    return best;
}

std::string to_string(CcgStatus s) {
    switch (s) {
        case CcgStatus::OptimalWithinDelta: return "Optimal-within-delta";
        case CcgStatus::NoRobustFeasible: return "NoRobustFeasible";
        case CcgStatus::IterationLimit: return "IterationLimit";
    }
    return "unknown";
}

namespace {

size_t solution_hash(const Solution& sol) {
    size_t h = 1469598103934665603ull;
    for (const Route& r : sol.routes)
        for (int v : r.seq) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
    return h;
}

}  // namespace

CcgResult ccg_solve(const Instance& base_inst, const BudgetSet& set, const SearchConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t_start).count(); };

    CcgResult res;
    std::vector<Scenario>& scenarios = res.scenarios;
    scenarios.push_back(nominal_scenario(set));

    Instance inst = preprocess_arcs(base_inst, scenarios);
    std::mt19937_64 rng(cfg.seed);
    CostWeights w;
    w.alpha = cfg.alpha0;
    w.beta = cfg.beta0;
    w.alpha_min = cfg.alpha_min;
    w.alpha_max = cfg.alpha_max;
    w.beta_min = cfg.beta_min;
    w.beta_max = cfg.beta_max;

    const bool deterministic = set.gamma <= 0.0;
    int fleet = cfg.fleet > 0 ? cfg.fleet : std::max(1, inst.num_customers);
    Solution x = initial_solution(inst, fleet, cfg.seed);

    TabuState tabu;
    double temp0 = initial_temperature(cfg);
    double ub = kInf;  // f of the last improving robust-feasible solution
    int infeasible_count = 0;
    int feasible_streak = 0, infeasible_streak = 0;
    double best_known_cost = kInf;

    // best robust-feasible solution seen, by (vehicles, cost)
    bool have_best = false;
    Solution best_sol;
    double best_cost = kInf;
    int best_vehicles = std::numeric_limits<int>::max();
    int det_stall = 0;  // deterministic mode: iterations without improvement

    // AD results per (solution hash, scenario count)
    std::map<std::pair<size_t, size_t>, AdResult> ad_cache;
    auto run_ad = [&](const Solution& s) -> const AdResult& {
        auto key = std::make_pair(solution_hash(s), scenarios.size());
        auto it = ad_cache.find(key);
        if (it != ad_cache.end()) return it->second;
        const Scenario* warm = scenarios.size() > 1 ? &scenarios.back() : nullptr;
        AdResult ad = ad_subproblem(s, set, inst, cfg.ad_kappa, cfg.ad_tol, warm, cfg.ad_max_iters);
        return ad_cache.emplace(key, std::move(ad)).first->second;
    };

    auto note_best = [&](const Solution& s, double cost_now) {
        int veh = s.employed_vehicles();
        if (!have_best || veh < best_vehicles || (veh == best_vehicles && cost_now < best_cost - kTol)) {
            have_best = true;
            best_sol = s;
            best_cost = cost_now;
            best_vehicles = veh;
            det_stall = 0;
            return true;
        }
        return false;
    };

    auto finish = [&](CcgStatus status, const Solution* final_sol, double zeta) {
        res.status = status;
        const Solution* pick = final_sol ? final_sol : (have_best ? &best_sol : nullptr);
        if (pick) {
            res.best = *pick;
            res.has_solution = true;
            res.cost = generalized_cost(res.best, scenarios, inst, w);
            res.zeta = zeta;
            res.gap = zeta - res.cost;
            res.worst_consumption = worst_case_consumption(res.best, set, inst);
            res.distance = total_distance(res.best, inst);
            res.vehicles = res.best.employed_vehicles();
        }
        res.seconds = elapsed();
        return res;
    };

    for (int iter = 0; iter < cfg.max_vns_iters; ++iter) {
        res.vns_iterations = iter + 1;
        double frac = cfg.max_vns_iters > 1 ? static_cast<double>(iter) / (cfg.max_vns_iters - 1) : 1.0;
        double temperature = std::max(cfg.temp_floor, temp0 * (1.0 - frac));

        Solution shaken = cyclic_exchange(x, rng, cfg, inst);
        Solution xpp = tabu_search(shaken, scenarios, inst, cfg, w, tabu, rng, best_known_cost);
        double f_xpp = generalized_cost(xpp, scenarios, inst, w);
        bool feas = robust_feasible(xpp, scenarios, inst);
        best_known_cost = std::min(best_known_cost, f_xpp);

        CcgLogEntry log;
        log.iter = iter;
        log.incumbent_cost = f_xpp;
        log.robust_feasible = feas;
        log.alpha = w.alpha;
        log.beta = w.beta;
        log.temperature = temperature;
        log.scenario_count = static_cast<int>(scenarios.size());

        if (f_xpp <= ub) {
            x = xpp;
            if (feas && !deterministic) {
                const AdResult& ad = run_ad(xpp);
                note_best(xpp, f_xpp);
                if (ad.zeta <= f_xpp + kTol) {
                    log.event = "terminate: subproblem cannot exceed incumbent";
                    res.log.push_back(log);
                    return finish(CcgStatus::OptimalWithinDelta, &xpp, ad.zeta);
                }
                ub = f_xpp;
                bool duplicate = false;
                for (const Scenario& s : scenarios)
                    if (s.close_to(ad.worst)) {
                        duplicate = true;
                        break;
                    }
                if (!duplicate) {
                    scenarios.push_back(ad.worst);
                    inst = preprocess_arcs(base_inst, scenarios);
                    log.event = "scenario added";
                    log.scenario_count = static_cast<int>(scenarios.size());
                }
            } else if (feas && deterministic) {
                if (note_best(xpp, f_xpp)) log.event = "incumbent improved";
            }
        } else if (sa_accept(generalized_cost(x, scenarios, inst, w), f_xpp, temperature, rng)) {
            x = xpp;
            log.event = "sa-accepted";
        }

        // second robust-feasibility gate of the iteration; the infeasibility
        // counter tracks consecutive candidates without robust feasibility
        feas = robust_feasible(xpp, scenarios, inst);
        if (feas) {
            infeasible_count = 0;
            if (deterministic) {
                ++det_stall;
                if (det_stall > cfg.n_feas) {
                    log.event = "terminate: deterministic search stalled";
                    res.log.push_back(log);
                    double z = have_best ? generalized_cost(best_sol, scenarios, inst, w) : 0.0;
                    return finish(CcgStatus::OptimalWithinDelta, nullptr, z);
                }
            } else {
                const AdResult& ad = run_ad(xpp);
                double f_now = generalized_cost(xpp, scenarios, inst, w);
                if (ad.zeta - f_now < cfg.ccg_delta) {
                    note_best(xpp, f_now);
                    log.event = "terminate: gap below delta";
                    res.log.push_back(log);
                    return finish(CcgStatus::OptimalWithinDelta, &xpp, ad.zeta);
                }
            }
        } else {
            ++infeasible_count;
            if (infeasible_count > cfg.n_feas) {
                log.event = "terminate: no robust feasible solution";
                res.log.push_back(log);
                if (have_best) {
                    double z = generalized_cost(best_sol, scenarios, inst, w);
                    return finish(CcgStatus::NoRobustFeasible, nullptr, z);
                }
                return finish(CcgStatus::NoRobustFeasible, nullptr, 0.0);
            }
        }

        if (feas) {
            ++feasible_streak;
            infeasible_streak = 0;
        } else {
            ++infeasible_streak;
            feasible_streak = 0;
        }
        update_penalties(w, feasible_streak, infeasible_streak, cfg);
        res.log.push_back(log);

        if (elapsed() > cfg.time_limit_s) {
            res.time_limit_hit = true;
            double z = have_best ? generalized_cost(best_sol, scenarios, inst, w) : 0.0;
            return finish(CcgStatus::IterationLimit, nullptr, z);
        }
    }
    double z = have_best ? generalized_cost(best_sol, scenarios, inst, w) : 0.0;
    return finish(CcgStatus::IterationLimit, nullptr, z);
}

}  // namespace arevrp
