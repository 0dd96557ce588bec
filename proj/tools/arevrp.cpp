#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arevrp/io.hpp"
#include "arevrp/robust.hpp"
#include "arevrp/simulate.hpp"
#include "arevrp/version.hpp"

namespace {

using namespace arevrp;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoRobustFeasible = 3;
constexpr int kExitTimeLimit = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonArgs {
    std::string instance;
    double gamma = 6.0;
    double hhat = 0.1;
    unsigned long seed = 1;
    std::string config_file;
    double time_limit = 10800.0;
    int fleet = 0;
    int threads = 1;
    std::string format = "plain";
    std::string out_dir = ".";
};

void print_row(const std::string& format, const std::vector<std::pair<std::string, std::string>>& cols) {
    if (format == "tsv") {
        for (size_t i = 0; i < cols.size(); ++i) std::cout << cols[i].first << (i + 1 < cols.size() ? "\t" : "\n");
        for (size_t i = 0; i < cols.size(); ++i) std::cout << cols[i].second << (i + 1 < cols.size() ? "\t" : "\n");
    } else {
        for (const auto& [k, v] : cols) std::cout << k << ": " << v << "\n";
    }
}

int cmd_solve(const CommonArgs& a) {
    Instance inst = parse_instance(a.instance);
    SearchConfig cfg;
    cfg.seed = a.seed;
    cfg.time_limit_s = a.time_limit;
    cfg.fleet = a.fleet;
    std::string overrides;
    if (!a.config_file.empty()) {
        overrides = read_file(a.config_file);
        apply_config_overrides(overrides, cfg);
    }
    BudgetSet set(inst, a.gamma, a.hhat);
    CcgResult res = ccg_solve(inst, set, cfg);

    RunManifest m;
    m.command = "solve";
    m.instance_path = a.instance;
    m.gamma = a.gamma;
    m.hhat_fraction = a.hhat;
    m.seed = a.seed;
    m.config_overrides = overrides;
    m.tool_version = kToolVersion;
    m.build_id = kBuildId;
    m.wall_clock_s = res.seconds;

    if (res.has_solution) {
        write_solution_json(a.out_dir + "/solution.json", res.best, inst, m);
        write_run_artifact(a.out_dir + "/run.json", res, inst, m);
        char worst[64], dist[64], secs[64];
        std::snprintf(worst, sizeof worst, "%.2f", res.worst_consumption);
        std::snprintf(dist, sizeof dist, "%.2f", res.distance);
        std::snprintf(secs, sizeof secs, "%.2f", res.seconds);
        print_row(a.format, {{"n_v", std::to_string(res.vehicles)},
                             {"worst", worst},
                             {"dist", dist},
                             {"t(s)", secs},
                             {"status", to_string(res.status)}});
    } else {
        write_run_artifact(a.out_dir + "/run.json", res, inst, m);
        print_row(a.format, {{"status", to_string(res.status)}});
    }
    if (res.status == CcgStatus::NoRobustFeasible) return kExitNoRobustFeasible;
    if (res.time_limit_hit) return kExitTimeLimit;
    return kExitOk;
}

int cmd_simulate(const CommonArgs& a, const std::string& solution_path, const std::string& dist_tag, int count) {
    Instance inst = parse_instance(a.instance);
    Solution sol = read_solution_json(solution_path, inst);
    std::vector<SampleDist> dists;
    if (dist_tag == "all") dists = {SampleDist::NDC, SampleDist::ND, SampleDist::UD};
    else dists = {parse_sample_dist(dist_tag)};

    CostWeights w;  // (10, 10) in simulation
    std::vector<SimulationReport> reports;
    for (SampleDist d : dists) {
        SimulationReport rep = run_simulation(sol, inst, d, count, a.seed, w, a.threads);
        rep.gamma = a.gamma;
        reports.push_back(std::move(rep));
    }
    write_summary_csv(reports, a.out_dir + "/summary.csv");
    write_boxplot_csv(reports, a.out_dir + "/boxplot_recharge.csv", "recharge");
    write_boxplot_csv(reports, a.out_dir + "/boxplot_endtime.csv", "endtime");
    write_boxplot_csv(reports, a.out_dir + "/boxplot_idle.csv", "idle");
    for (const auto& r : reports) {
        char avg[64], sd[64], mx[64], mn[64], fs[64];
        std::snprintf(avg, sizeof avg, "%.2f", r.avg);
        std::snprintf(sd, sizeof sd, "%.2f", r.stddev);
        std::snprintf(mx, sizeof mx, "%.2f", r.max);
        std::snprintf(mn, sizeof mn, "%.2f", r.min);
        std::snprintf(fs, sizeof fs, "%.1f", r.feasibility_pct);
        print_row(a.format, {{"dist", r.dist},
                             {"n_v", std::to_string(r.n_vehicles)},
                             {"avg", avg},
                             {"std", sd},
                             {"max", mx},
                             {"min", mn},
                             {"feasibility", fs}});
    }
    return kExitOk;
}

int cmd_inspect(const CommonArgs& a, const std::string& solution_path, const std::string& scenario_path) {
    Instance inst = parse_instance(a.instance);
    if (solution_path.empty()) {
        std::vector<Scenario> nominal{Scenario(inst.num_physical, inst.nominal_rate, "nominal")};
        Instance pp = preprocess_arcs(inst, nominal);
        int arcs = 0;
        for (int i = 0; i < pp.num_vertices(); ++i)
            for (int j = 0; j < pp.num_vertices(); ++j) arcs += pp.arc_allowed(i, j) ? 1 : 0;
        print_row(a.format, {{"customers", std::to_string(inst.num_customers)},
                             {"stations", std::to_string(inst.num_physical_stations)},
                             {"station_copies", std::to_string(inst.num_station_copies())},
                             {"vertices", std::to_string(inst.num_vertices())},
                             {"arcs_after_preprocessing", std::to_string(arcs)},
                             {"Q", std::to_string(inst.battery_capacity)},
                             {"C", std::to_string(inst.cargo_capacity)}});
        return kExitOk;
    }
    Solution sol = read_solution_json(solution_path, inst);
    Scenario sc = scenario_path.empty() ? Scenario(inst.num_physical, inst.nominal_rate, "nominal")
                                        : read_scenario_csv(scenario_path, inst);
    if (sol.routes.empty()) {
        print_row(a.format, {{"routes", "0"}});
        return kExitOk;
    }
    std::printf("%-8s %-10s %10s %10s %10s %10s %10s %10s\n", "route", "vertex", "arrival", "start", "a_min", "a_max",
                "y", "p");
    int ri = 0;
    for (const Route& r : sol.routes) {
        if (r.empty_route()) continue;
        RouteEval ev = evaluate_route(r, sc, inst);
        for (int k = 0; k < r.length(); ++k)
            std::printf("%-8d %-10s %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f\n", ri,
                        inst.vertices[r.seq[k]].name.c_str(), ev.arrival[k], ev.service_start[k], ev.a_min[k],
                        ev.a_max[k], ev.battery[k], ev.recharge[k]);
        std::printf("%-8d TW=%.2f FL=%.2f recharge=%.2f feasible=%s\n", ri, ev.tw, ev.fl, ev.recharge_total,
                    ev.feasible ? "yes" : "no");
        ++ri;
    }
    write_schedule_csv(a.out_dir + "/schedule.csv", sol, sc, inst);
    return kExitOk;
}

int cmd_subsample(const CommonArgs& a, int n, int det_runs, const std::string& out_path) {
    Instance large = parse_instance(a.instance);
    Instance sub = subsample_instance(large, n, a.seed, det_runs);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << "StringID Type x y demand ReadyTime DueDate ServiceTime\n";
    char buf[256];
    auto row = [&](const Vertex& v, char type) {
        std::snprintf(buf, sizeof buf, "%s %c %.10g %.10g %.10g %.10g %.10g %.10g\n", v.name.c_str(), type, v.x, v.y,
                      v.demand, v.ready, v.due, v.service);
        out << buf;
    };
    row(sub.vertices[sub.depot()], 'd');
    for (int s = 0; s < sub.num_physical_stations; ++s)
        row(sub.vertices[sub.first_station() + s * sub.copies_per_station], 'f');
    for (int c = 1; c <= sub.num_customers; ++c) row(sub.vertices[c], 'c');
    out << "\n";
    std::snprintf(buf, sizeof buf, "Q Vehicle fuel tank capacity /%.10g/\n", sub.battery_capacity);
    out << buf;
    std::snprintf(buf, sizeof buf, "C Vehicle load capacity /%.10g/\n", sub.cargo_capacity);
    out << buf;
    std::snprintf(buf, sizeof buf, "r fuel consumption rate /%.10g/\n", sub.nominal_rate);
    out << buf;
    std::snprintf(buf, sizeof buf, "g inverse refueling rate /%.10g/\n", sub.recharge_rate);
    out << buf;
    std::snprintf(buf, sizeof buf, "v average Velocity /%.10g/\n", sub.velocity);
    out << buf;
    print_row(a.format, {{"customers", std::to_string(sub.num_customers)},
                         {"stations", std::to_string(sub.num_physical_stations)},
                         {"out", out_path}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive-robust electric vehicle routing solver"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string solution_path, scenario_path, dist_tag = "ndc", out_path = "subsample.txt";
    int count = 1000, n_sub = 20, det_runs = 5;

    auto add_common = [&](CLI::App* sub, bool needs_instance = true) {
        auto* opt = sub->add_option("--instance", a.instance, "instance file (Schneider E-VRPTW format)");
        if (needs_instance) opt->required();
        sub->add_option("--gamma", a.gamma, "budget of uncertainty");
        sub->add_option("--hhat", a.hhat, "deviation half-width as a fraction of the nominal rate");
        sub->add_option("--seed", a.seed, "random seed");
        sub->add_option("--config", a.config_file, "JSON file of search-parameter overrides");
        sub->add_option("--time-limit", a.time_limit, "wall-clock limit in seconds");
        sub->add_option("--fleet", a.fleet, "vehicle count override");
        sub->add_option("--threads", a.threads, "worker threads for simulation");
        sub->add_option("--format", a.format, "output format: plain or tsv");
        sub->add_option("--out", a.out_dir, "output directory");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve an instance");
    add_common(solve);

    CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo evaluation of a solution");
    add_common(sim);
    sim->add_option("--solution", solution_path, "solution JSON")->required();
    sim->add_option("--dist", dist_tag, "nd, ud, ndc or all");
    sim->add_option("--count", count, "number of scenarios");

    CLI::App* insp = app.add_subcommand("inspect", "instance stats or a schedule trace");
    add_common(insp);
    insp->add_option("--solution", solution_path, "solution JSON (optional)");
    insp->add_option("--scenario", scenario_path, "scenario CSV (optional)");

    CLI::App* subs = app.add_subcommand("subsample", "generate a mid-size instance");
    add_common(subs);
    subs->add_option("--n", n_sub, "number of customers to keep");
    subs->add_option("--det-runs", det_runs, "deterministic runs for station selection");
    subs->add_option("--output", out_path, "output instance file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(a);
        if (sim->parsed()) return cmd_simulate(a, solution_path, dist_tag, count);
        if (insp->parsed()) return cmd_inspect(a, solution_path, scenario_path);
        if (subs->parsed()) return cmd_subsample(a, n_sub, det_runs, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
