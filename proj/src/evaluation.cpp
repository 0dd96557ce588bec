#include "arevrp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arevrp {

namespace {
constexpr double kFeasTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scratch {
    std::vector<double> cumD, cumE, cap, forced, maxphi, minpsi, sp;
    std::vector<int> cp_pos, seg, psi_pos;
};

// Scheduling a fixed route decomposes into cumulative-charge variables P_i,
// one per charge point (the depot, which cannot charge, plus each visited
// station). Battery validity pins P between FORCED (deficits each point must
// have covered, looking over its whole outgoing segment) and CAP (cumulative
// consumption, since charge beyond a full battery cannot be stored). Time
// windows add difference constraints on P. a_min(v) is the earliest service
// start over battery-valid plans, a_max(v) the start when every preceding
// station charges to full; their gap is charge no capacity-respecting plan
// can place. Window couplings across charge points that single-hop labels
// cannot see (a wait restarts the clock) are folded in by an all-pairs pass.
RouteCost eval_core(const Route& route, const Scenario& scenario, const Instance& inst, RouteEval* full) {
    thread_local Scratch sc;
    const int m = route.length() - 1;  // positions 0..m
    const double H = inst.full_charge_time();
    const double g = inst.recharge_rate;
    const auto& verts = inst.vertices;

    auto& cumD = sc.cumD;
    auto& cumE = sc.cumE;
    cumD.assign(m + 1, 0.0);
    cumE.assign(m + 1, 0.0);
    for (int k = 1; k <= m; ++k) {
        int u = route.seq[k - 1], v = route.seq[k];
        cumD[k] = cumD[k - 1] + verts[u].service + inst.travel_time(u, v);
        cumE[k] = cumE[k - 1] + g * scenario.rate(inst, u, v) * inst.distance(u, v);
    }

    auto& cp_pos = sc.cp_pos;
    cp_pos.assign(1, 0);
    for (int k = 1; k < m; ++k)
        if (inst.is_station(route.seq[k])) cp_pos.push_back(k);
    const int ncp = static_cast<int>(cp_pos.size());
    auto& cap = sc.cap;
    auto& forced = sc.forced;
    cap.assign(ncp, 0.0);
    forced.assign(ncp, 0.0);
    for (int i = 1; i < ncp; ++i) cap[i] = cumE[cp_pos[i]];
    for (int i = 0; i < ncp; ++i) {
        int seg_end = (i + 1 < ncp) ? cp_pos[i + 1] : m;
        double need = std::max(0.0, cumE[seg_end] - H);
        forced[i] = std::max(i > 0 ? forced[i - 1] : 0.0, need);
    }

    // seg[k]: charge point at or before k; charging at a station happens
    // after its own service start, so labels at k anchor one point back
    auto& seg = sc.seg;
    seg.assign(m + 1, 0);
    {
        int cur = 0;
        for (int k = 1; k <= m; ++k) {
            if (cur + 1 < ncp && cp_pos[cur + 1] == k) ++cur;
            seg[k] = cur;
        }
    }
    auto cp_before = [&](int k) { return (seg[k] > 0 && cp_pos[seg[k]] == k) ? seg[k] - 1 : seg[k]; };

    RouteCost cost;
    double tw = 0.0, fl = 0.0;

    if (full) {
        full->a_min.assign(m + 1, 0.0);
        full->a_max.assign(m + 1, 0.0);
        full->arrival.assign(m + 1, 0.0);
        full->service_start.assign(m + 1, 0.0);
        full->battery.assign(m + 1, 0.0);
        full->recharge.assign(m + 1, 0.0);
        full->idle_time = 0.0;
    }

    // Z: zero-charge critical path; M: critical path netting out the charge
    // capacity available before the anchor; a_min = max(Z, M + forced)
    double Z = verts[route.seq[0]].ready;
    double M = Z;
    double tmax = Z;  // charge-to-full forward pass
    double ymax = H;
    if (full) {
        full->a_min[0] = full->a_max[0] = Z;
    }
    {
        double l0 = verts[route.seq[0]].due;
        tw += std::max(0.0, Z - l0);
    }
    for (int k = 1; k <= m; ++k) {
        int u = route.seq[k - 1], v = route.seq[k];
        double step = verts[u].service + inst.travel_time(u, v);
        double e_v = verts[v].ready;
        int cb = cp_before(k);
        Z = std::max(Z + step, e_v);
        M = std::max(M + step, e_v - cap[cb]);
        double a_min = std::max(Z, M + forced[cb]);

        double charge_u = (k - 1 > 0 && inst.is_station(u)) ? H - ymax : 0.0;
        if (charge_u != 0.0) ymax = H;
        double arr = tmax + verts[u].service + charge_u + inst.travel_time(u, v);
        ymax -= cumE[k] - cumE[k - 1];
        tmax = std::max(arr, e_v);

        tw += std::max(0.0, std::min(a_min, tmax) - verts[v].due);
        fl += std::max(0.0, a_min - tmax);
        if (full) {
            full->a_min[k] = a_min;
            full->a_max[k] = tmax;
        }
    }

    // window-chain couplings between charge points; minimal violation of the
    // difference system becomes lateness at the tightest vertex of the
    // binding segment
    if (ncp >= 2 && forced.back() > kFeasTol && tw <= kFeasTol && fl <= kFeasTol) {
        auto& maxphi = sc.maxphi;
        auto& minpsi = sc.minpsi;
        auto& psi_pos = sc.psi_pos;
        maxphi.assign(ncp, -kInf);
        minpsi.assign(ncp, kInf);
        psi_pos.assign(ncp, -1);
        for (int k = 0; k <= m; ++k) {
            int s = cp_before(k);
            maxphi[s] = std::max(maxphi[s], verts[route.seq[k]].ready - cumD[k]);
            double psi = verts[route.seq[k]].due - cumD[k];
            if (psi < minpsi[s]) {
                minpsi[s] = psi;
                psi_pos[s] = k;
            }
        }
        auto& sp = sc.sp;
        sp.assign(static_cast<size_t>(ncp) * ncp, 0.0);
        for (int i = 0; i < ncp; ++i)
            for (int j = i + 1; j < ncp; ++j) sp[i * ncp + j] = minpsi[j] - maxphi[i];
        for (int mid = 0; mid < ncp; ++mid)
            for (int i = 0; i < ncp; ++i)
                for (int j = 0; j < ncp; ++j)
                    sp[i * ncp + j] = std::min(sp[i * ncp + j], sp[i * ncp + mid] + sp[mid * ncp + j]);
        double viol = 0.0;
        int at = -1;
        for (int i = 0; i < ncp; ++i)
            for (int j = 0; j < ncp; ++j) {
                double vv = forced[j] - cap[i] - sp[i * ncp + j];
                if (vv > viol) {
                    viol = vv;
                    at = psi_pos[j];
                }
            }
        if (viol > kFeasTol && at >= 0) {
            tw += viol;
            if (full) full->a_min[at] = std::max(full->a_min[at], verts[route.seq[at]].due + viol);
        }
    }

    cost.recharge_time = forced.back();
    cost.tw = tw;
    cost.fl = fl;

    if (full) {
        // deficit-driven minimal-recharge schedule for the reported trace
        double y = H;
        full->arrival[0] = full->service_start[0] = verts[route.seq[0]].ready;
        full->battery[0] = H / g;
        for (int k = 1; k <= m; ++k) {
            int u = route.seq[k - 1], v = route.seq[k];
            double charge_time = 0.0;
            if (k - 1 > 0 && inst.is_station(u)) {
                int idx = seg[k - 1];
                charge_time = forced[idx] - forced[idx - 1];
                full->recharge[k - 1] = charge_time / g;
                y += charge_time;
            }
            double dep = full->service_start[k - 1] + verts[u].service + charge_time;
            double arr = dep + inst.travel_time(u, v);
            y -= cumE[k] - cumE[k - 1];
            full->arrival[k] = arr;
            full->service_start[k] = std::max(arr, verts[v].ready);
            full->battery[k] = y / g;
            full->idle_time += std::max(0.0, verts[v].ready - arr);
        }
        full->end_time = full->arrival[m];
        full->tw = tw;
        full->fl = fl;
        full->recharge_time = cost.recharge_time;
        full->recharge_total = cost.recharge_time / g;
        full->feasible = tw <= kFeasTol && fl <= kFeasTol;
    }
    return cost;
}

}  // namespace

Route make_route(const Instance& inst, const std::vector<int>& middle) {
    Route r;
    r.seq.reserve(middle.size() + 2);
    r.seq.push_back(inst.depot());
    r.seq.insert(r.seq.end(), middle.begin(), middle.end());
    r.seq.push_back(inst.end_depot());
    return r;
}

RouteEval evaluate_route(const Route& route, const Scenario& scenario, const Instance& inst) {
    RouteEval ev;
    eval_core(route, scenario, inst, &ev);
    return ev;
}

RouteCost evaluate_route_cost(const Route& route, const Scenario& scenario, const Instance& inst) {
    return eval_core(route, scenario, inst, nullptr);
}

ScenarioEvaluation evaluate_solution(const Solution& sol, const Scenario& scenario, const Instance& inst) {
    ScenarioEvaluation out;
    out.routes.reserve(sol.routes.size());
    for (const Route& r : sol.routes) {
        out.routes.push_back(evaluate_route(r, scenario, inst));
        const RouteEval& ev = out.routes.back();
        out.tw += ev.tw;
        out.fl += ev.fl;
        out.recharge_total += ev.recharge_total;
        out.recharge_time += ev.recharge_time;
    }
    out.feasible = out.tw <= kFeasTol && out.fl <= kFeasTol;
    return out;
}

double cargo_violation(const Route& route, const Instance& inst) {
    double q = 0.0;
    for (int v : route.seq) q += inst.vertices[v].demand;
    return std::max(0.0, q - inst.cargo_capacity);
}

double cargo_violation(const Solution& sol, const Instance& inst) {
    double fr = 0.0;
    for (const Route& r : sol.routes) fr += cargo_violation(r, inst);
    return fr;
}

double generalized_cost(const Solution& sol, const std::vector<Scenario>& scenarios, const Instance& inst,
                        const CostWeights& w) {
    if (scenarios.empty()) throw std::invalid_argument("generalized_cost: scenario set must be non-empty");
    double worst = -kInf;
    for (const Scenario& s : scenarios) {
        double rec = 0.0, tw = 0.0, fl = 0.0;
        for (const Route& r : sol.routes) {
            RouteCost c = evaluate_route_cost(r, s, inst);
            rec += c.recharge_time;
            tw += c.tw;
            fl += c.fl;
        }
        worst = std::max(worst, rec + w.alpha * (tw + fl));
    }
    return worst + w.beta * cargo_violation(sol, inst);
}

bool robust_feasible(const Solution& sol, const std::vector<Scenario>& scenarios, const Instance& inst) {
    if (scenarios.empty()) throw std::invalid_argument("robust_feasible: scenario set must be non-empty");
    if (cargo_violation(sol, inst) > kFeasTol) return false;
    for (const Scenario& s : scenarios)
        for (const Route& r : sol.routes)
            if (!evaluate_route_cost(r, s, inst).feasible()) return false;
    return true;
}

double total_distance(const Solution& sol, const Instance& inst) {
    double d = 0.0;
    for (const Route& r : sol.routes)
        for (size_t k = 1; k < r.seq.size(); ++k) d += inst.distance(r.seq[k - 1], r.seq[k]);
    return d;
}

double worst_case_consumption(const Solution& sol, const BudgetSet& set, const Instance& inst) {
    const int n = set.n;
    std::vector<double> coeff(static_cast<size_t>(n) * n, 0.0);
    double nominal_total = 0.0;
    for (const Route& r : sol.routes)
        for (size_t k = 1; k < r.seq.size(); ++k) {
            int u = r.seq[k - 1], v = r.seq[k];
            double d = inst.distance(u, v);
            coeff[inst.phys[u] * n + inst.phys[v]] += d;
            nominal_total += set.nominal_at(inst.phys[u], inst.phys[v]) * d;
        }
    return nominal_total + worst_case_linear(set, coeff).gain;
}

}  // namespace arevrp
