#include "arevrp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace arevrp {

namespace {

std::string dist_name(SampleDist d) {
    switch (d) {
        case SampleDist::ND: return "nd";
        case SampleDist::UD: return "ud";
        case SampleDist::NDC: return "ndc";
    }
    return "?";
}

ScenarioRow evaluate_scenario(const Solution& sol, const Instance& inst, const Scenario& s, const CostWeights& w,
                              double fr) {
    ScenarioRow row;
    double rec_time = 0.0, tw = 0.0, fl = 0.0, end_sum = 0.0, idle_sum = 0.0;
    int employed = 0;
    for (const Route& r : sol.routes) {
        if (r.empty_route()) continue;
        RouteEval ev = evaluate_route(r, s, inst);
        rec_time += ev.recharge_time;
        tw += ev.tw;
        fl += ev.fl;
        end_sum += ev.end_time;
        idle_sum += ev.idle_time;
        ++employed;
    }
    row.cost = rec_time + w.alpha * (tw + fl) + w.beta * fr;
    row.recharge = rec_time / inst.recharge_rate;
    row.feasible = tw <= 1e-9 && fl <= 1e-9 && fr <= 1e-9;
    row.avg_end_time = employed > 0 ? end_sum / employed : 0.0;
    row.avg_idle = employed > 0 ? idle_sum / employed : 0.0;
    return row;
}

}  // namespace

SimulationReport run_simulation(const Solution& sol, const Instance& inst, SampleDist dist, int count,
                                unsigned long seed, const CostWeights& w, int threads) {
    if (count < 1) throw std::invalid_argument("run_simulation: count must be >= 1");
    BudgetSet set(inst, 0.0, 0.1);
    std::vector<Scenario> draws = sample(set, dist, count, seed);
    double fr = cargo_violation(sol, inst);

    SimulationReport rep;
    rep.instance = inst.source_path;
    rep.dist = dist_name(dist);
    rep.n_vehicles = sol.employed_vehicles();
    rep.rows.resize(count);

    auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            rep.rows[i] = evaluate_scenario(sol, inst, draws[i], w, fr);
            rep.rows[i].scenario = i;
        }
    };
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        int chunk = (count + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(count, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sum2 = 0.0;
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    int feas = 0;
    for (const ScenarioRow& r : rep.rows) {
        sum += r.cost;
        sum2 += r.cost * r.cost;
        mx = std::max(mx, r.cost);
        mn = std::min(mn, r.cost);
        feas += r.feasible ? 1 : 0;
    }
    rep.avg = sum / count;
    rep.stddev = std::sqrt(std::max(0.0, sum2 / count - rep.avg * rep.avg));
    rep.max = mx;
    rep.min = mn;
    rep.feasibility_pct = 100.0 * feas / count;
    return rep;
}

std::vector<SimulationReport> compare_models(const std::vector<CompareEntry>& entries, const Instance& inst,
                                             const std::vector<SampleDist>& dists, int count, unsigned long seed,
                                             const CostWeights& w, int threads) {
    std::vector<SimulationReport> out;
    for (const CompareEntry& e : entries)
        for (SampleDist d : dists) {
            SimulationReport rep = run_simulation(e.solution, inst, d, count, seed, w, threads);
            rep.gamma = e.gamma;
            if (!e.label.empty()) rep.instance = e.label;
            out.push_back(std::move(rep));
        }
    return out;
}

void write_summary_csv(const std::vector<SimulationReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "instance,gamma,dist,n_vehicles,avg,std,max,min,feasibility_pct\n";
    char buf[512];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%s,%g,%s,%d,%.2f,%.2f,%.2f,%.2f,%.1f\n", r.instance.c_str(), r.gamma,
                      r.dist.c_str(), r.n_vehicles, r.avg, r.stddev, r.max, r.min, r.feasibility_pct);
        out << buf;
    }
}

void write_boxplot_csv(const std::vector<SimulationReport>& reports, const std::string& path,
                       const std::string& quantity) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "gamma,dist,scenario,value\n";
    char buf[256];
    for (const auto& r : reports)
        for (const auto& row : r.rows) {
            if (!row.feasible) continue;  // box plots use feasible draws only
            double v = quantity == "recharge" ? row.recharge
                     : quantity == "endtime"  ? row.avg_end_time
                     : quantity == "idle"     ? row.avg_idle
                                              : throw std::invalid_argument("unknown boxplot quantity: " + quantity);
            std::snprintf(buf, sizeof buf, "%g,%s,%d,%.4f\n", r.gamma, r.dist.c_str(), row.scenario, v);
            out << buf;
        }
}

}  // namespace arevrp
