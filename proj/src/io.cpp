#include "arevrp/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace arevrp {

using nlohmann::json;

namespace {

json manifest_json(const RunManifest& m) {
    return json{{"command", m.command},
                {"instance", m.instance_path},
                {"gamma", m.gamma},
                {"hhat_fraction", m.hhat_fraction},
                {"seed", m.seed},
                {"config_overrides", m.config_overrides.empty() ? json{} : json::parse(m.config_overrides)},
                {"tool_version", m.tool_version},
                {"build", m.build_id},
                {"wall_clock_s", m.wall_clock_s}};
}

json routes_json(const Solution& sol, const Instance& inst) {
    json routes = json::array();
    for (const Route& r : sol.routes) {
        if (r.empty_route()) continue;
        json names = json::array();
        for (size_t k = 1; k + 1 < r.seq.size(); ++k) names.push_back(inst.vertices[r.seq[k]].name);
        routes.push_back(names);
    }
    return routes;
}

}  // namespace

std::string manifest_to_json(const RunManifest& m) { return manifest_json(m).dump(2); }

void write_solution_json(const std::string& path, const Solution& sol, const Instance& inst, const RunManifest& m) {
    json doc;
    doc["routes"] = routes_json(sol, inst);
    doc["manifest"] = manifest_json(m);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << "\n";
}

Solution read_solution_json(const std::string& path, const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed solution JSON " + path + ": " + e.what());
    }
    if (!doc.contains("routes") || !doc["routes"].is_array())
        throw std::runtime_error("malformed solution JSON " + path + ": missing routes array");
    Solution sol;
    for (const auto& names : doc["routes"]) {
        std::vector<int> middle;
        for (const auto& name : names) {
            int v = inst.find_vertex(name.get<std::string>());
            if (v < 0) throw std::runtime_error("solution references unknown vertex " + name.get<std::string>());
            middle.push_back(v);
        }
        sol.routes.push_back(make_route(inst, middle));
    }
    return sol;
}

void write_run_artifact(const std::string& path, const CcgResult& res, const Instance& inst, const RunManifest& m) {
    json doc;
    doc["manifest"] = manifest_json(m);
    doc["status"] = to_string(res.status);
    doc["time_limit_hit"] = res.time_limit_hit;
    doc["vns_iterations"] = res.vns_iterations;
    doc["seconds"] = res.seconds;
    if (res.has_solution) {
        doc["routes"] = routes_json(res.best, inst);
        doc["cost"] = res.cost;
        doc["zeta"] = res.zeta;
        doc["gap"] = res.gap;
        doc["worst_consumption"] = res.worst_consumption;
        doc["distance"] = res.distance;
        doc["vehicles"] = res.vehicles;
        // per-scenario schedule of the final solution
        json evals = json::array();
        for (size_t si = 0; si < res.scenarios.size(); ++si) {
            ScenarioEvaluation ev = evaluate_solution(res.best, res.scenarios[si], inst);
            evals.push_back({{"scenario", res.scenarios[si].label},
                             {"tw", ev.tw},
                             {"fl", ev.fl},
                             {"recharge", ev.recharge_total},
                             {"feasible", ev.feasible}});
        }
        doc["scenario_evaluations"] = evals;
    }
    json scen = json::array();
    for (const Scenario& s : res.scenarios) {
        json dev = json::array();
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j)
                if (std::abs(s.rates[i * s.n + j] - res.scenarios[0].rates[i * s.n + j]) > 1e-12)
                    dev.push_back({{"from", i}, {"to", j}, {"h", s.rates[i * s.n + j]}});
        scen.push_back({{"label", s.label}, {"deviations", dev}});
    }
    doc["scenario_set"] = scen;
    json log = json::array();
    for (const CcgLogEntry& e : res.log)
        log.push_back({{"iter", e.iter},
                       {"cost", e.incumbent_cost},
                       {"feasible", e.robust_feasible},
                       {"alpha", e.alpha},
                       {"beta", e.beta},
                       {"T", e.temperature},
                       {"scenarios", e.scenario_count},
                       {"event", e.event}});
    doc["log"] = log;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << "\n";
}

namespace {

// physical-id -> representative vertex name
std::vector<std::string> physical_names(const Instance& inst) {
    std::vector<std::string> names(inst.num_physical);
    for (int v = inst.num_vertices() - 1; v >= 0; --v) names[inst.phys[v]] = inst.vertices[v].name;
    names[0] = inst.vertices[inst.depot()].name;
    return names;
}

}  // namespace

void write_scenario_csv(const std::string& path, const Scenario& s, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto names = physical_names(inst);
    out << "from,to,h\n";
    char buf[160];
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
            if (i == j) continue;
            std::snprintf(buf, sizeof buf, "%s,%s,%.12g\n", names[i].c_str(), names[j].c_str(), s.at(i, j));
            out << buf;
        }
}

Scenario read_scenario_csv(const std::string& path, const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    Scenario s(inst.num_physical, inst.nominal_rate, path);
    std::string line;
    std::getline(in, line);  // header
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string from, to, hval;
        if (!std::getline(ss, from, ',') || !std::getline(ss, to, ',') || !std::getline(ss, hval))
            throw std::runtime_error("bad scenario row at line " + std::to_string(lineno));
        int u = inst.find_vertex(from), v = inst.find_vertex(to);
        if (u < 0 || v < 0) throw std::runtime_error("scenario references unknown vertex at line " + std::to_string(lineno));
        s.at(inst.phys[u], inst.phys[v]) = std::stod(hval);
    }
    return s;
}

void write_schedule_csv(const std::string& path, const Solution& sol, const Scenario& s, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "route,vertex,a_min,a_max,p,y\n";
    char buf[256];
    int ri = 0;
    for (const Route& r : sol.routes) {
        if (r.empty_route()) continue;
        RouteEval ev = evaluate_route(r, s, inst);
        for (int k = 0; k < r.length(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%s,%.4f,%.4f,%.4f,%.4f\n", ri, inst.vertices[r.seq[k]].name.c_str(),
                          ev.a_min[k], ev.a_max[k], ev.recharge[k], ev.battery[k]);
            out << buf;
        }
        ++ri;
    }
}

void apply_config_overrides(const std::string& json_text, SearchConfig& cfg) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed config JSON: ") + e.what());
    }
    for (auto& [key, val] : doc.items()) {
        if (key == "n_feas") cfg.n_feas = val.get<int>();
        else if (key == "alpha0") cfg.alpha0 = val.get<double>();
        else if (key == "beta0") cfg.beta0 = val.get<double>();
        else if (key == "alpha_min") cfg.alpha_min = val.get<double>();
        else if (key == "alpha_max") cfg.alpha_max = val.get<double>();
        else if (key == "beta_min") cfg.beta_min = val.get<double>();
        else if (key == "beta_max") cfg.beta_max = val.get<double>();
        else if (key == "penalty_factor") cfg.penalty_factor = val.get<double>();
        else if (key == "tabu_tenure_min") cfg.tabu_tenure_min = val.get<int>();
        else if (key == "tabu_tenure_max") cfg.tabu_tenure_max = val.get<int>();
        else if (key == "n_tabu") cfg.n_tabu = val.get<int>();
        else if (key == "delta_sa") cfg.delta_sa = val.get<double>();
        else if (key == "temp_floor") cfg.temp_floor = val.get<double>();
        else if (key == "max_vns_iters") cfg.max_vns_iters = val.get<int>();
        else if (key == "shake_routes_min") cfg.shake_routes_min = val.get<int>();
        else if (key == "shake_routes_max") cfg.shake_routes_max = val.get<int>();
        else if (key == "shake_block_max") cfg.shake_block_max = val.get<int>();
        else if (key == "fleet") cfg.fleet = val.get<int>();
        else if (key == "ccg_delta") cfg.ccg_delta = val.get<double>();
        else if (key == "ad_tol") cfg.ad_tol = val.get<double>();
        else if (key == "ad_kappa") cfg.ad_kappa = val.get<double>();
        else if (key == "ad_max_iters") cfg.ad_max_iters = val.get<int>();
        else throw std::runtime_error("unknown config key: " + key);
    }
}

}  // namespace arevrp
