#include "arevrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arevrp/uncertainty.hpp"

namespace arevrp {

double Instance::total_demand() const {
    double q = 0.0;
    for (const auto& v : vertices) q += v.demand;
    return q;
}

int Instance::find_vertex(const std::string& name) const {
    for (const auto& v : vertices)
        if (v.name == name) return v.id;
    return -1;
}

void Instance::finalize() {
    const int n = num_vertices();
    num_physical = 1 + num_customers + num_physical_stations;
    phys.assign(n, 0);
    phys[depot()] = 0;
    phys[end_depot()] = 0;
    for (int v = 1; v <= num_customers; ++v) phys[v] = v;
    for (int s = 0; s < num_physical_stations; ++s)
        for (int c = 0; c < copies_per_station; ++c)
            phys[first_station() + s * copies_per_station + c] = 1 + num_customers + s;

    // physical coordinates come from the first vertex mapping onto each id
    std::vector<double> px(num_physical, 0.0), py(num_physical, 0.0);
    for (int v = 0; v < n; ++v) {
        px[phys[v]] = vertices[v].x;
        py[phys[v]] = vertices[v].y;
    }
    phys_dist.assign(static_cast<size_t>(num_physical) * num_physical, 0.0);
    for (int i = 0; i < num_physical; ++i)
        for (int j = 0; j < num_physical; ++j)
            phys_dist[i * num_physical + j] = std::hypot(px[i] - px[j], py[i] - py[j]);

    // base arc set: everything except self-arcs, arcs into the start depot
    // and arcs out of the end depot
    arc_ok.assign(static_cast<size_t>(n) * n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool ok = i != j && j != depot() && i != end_depot();
            arc_ok[i * n + j] = ok ? 1 : 0;
        }
}

void Instance::override_distance(int pi, int pj, double d) {
    phys_dist[pi * num_physical + pj] = d;
    phys_dist[pj * num_physical + pi] = d;
    has_distance_overrides = true;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& tok, int lineno, const std::string& what) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": bad " + what + " '" + tok + "'");
    }
}

// parameter lines look like: "Q Vehicle fuel tank capacity /77.75/"
bool parse_param_line(const std::vector<std::string>& toks, char& key, double& value, int lineno) {
    if (toks.empty()) return false;
    if (toks[0].size() != 1) return false;
    char k = toks[0][0];
    if (k != 'Q' && k != 'C' && k != 'r' && k != 'g' && k != 'v') return false;
    const std::string& last = toks.back();
    if (last.size() < 3 || last.front() != '/' || last.back() != '/') return false;
    key = k;
    value = parse_num(last.substr(1, last.size() - 2), lineno, "parameter value");
    return true;
}

}  // namespace

Instance parse_instance(const std::string& path, int copies_per_station) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);

    struct Row {
        std::string name;
        char type;
        double x, y, demand, ready, due, service;
    };
    std::vector<Row> depot_rows, customer_rows, station_rows;
    struct EdgeOverride { std::string a, b; double d; };
    std::vector<EdgeOverride> overrides;
    std::set<std::string> seen_names;
    bool have_q = false, have_c = false, have_r = false, have_g = false;
    double q_val = 0, c_val = 0, r_val = 1.0, g_val = 1.0, v_val = 1.0;

    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!header_seen && toks[0] == "StringID") {
            header_seen = true;
            continue;
        }
        char key;
        double value;
        if (parse_param_line(toks, key, value, lineno)) {
            switch (key) {
                case 'Q': q_val = value; have_q = true; break;
                case 'C': c_val = value; have_c = true; break;
                case 'r': r_val = value; have_r = true; break;
                case 'g': g_val = value; have_g = true; break;
                case 'v': v_val = value; break;
            }
            continue;
        }
        if (toks[0] == "EDGE") {
            if (toks.size() != 4)
                throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": EDGE wants 'EDGE a b dist'");
            overrides.push_back({toks[1], toks[2], parse_num(toks[3], lineno, "edge distance")});
            continue;
        }
        if (toks.size() != 8)
            throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": expected 8 fields, got " +
                                     std::to_string(toks.size()));
        Row row;
        row.name = toks[0];
        if (toks[1].size() != 1 || (toks[1][0] != 'd' && toks[1][0] != 'f' && toks[1][0] != 'c'))
            throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": vertex type must be d, f or c");
        row.type = toks[1][0];
        row.x = parse_num(toks[2], lineno, "x");
        row.y = parse_num(toks[3], lineno, "y");
        row.demand = parse_num(toks[4], lineno, "demand");
        row.ready = parse_num(toks[5], lineno, "ready time");
        row.due = parse_num(toks[6], lineno, "due date");
        row.service = parse_num(toks[7], lineno, "service time");
        if (!seen_names.insert(row.name).second)
            throw std::runtime_error("format error at line " + std::to_string(lineno) + ": duplicate vertex id " + row.name);
        if (row.demand < 0 || row.ready > row.due || row.service < 0)
            throw std::runtime_error("format error at line " + std::to_string(lineno) + ": vertex bounds violated");
        switch (row.type) {
            case 'd': depot_rows.push_back(row); break;
            case 'f': station_rows.push_back(row); break;
            case 'c': customer_rows.push_back(row); break;
        }
    }
    if (depot_rows.size() != 1)
        throw std::runtime_error("format error: expected exactly one depot row, got " + std::to_string(depot_rows.size()));
    if (!have_q || !have_c || !have_r || !have_g)
        throw std::runtime_error("format error: missing parameter block (need Q, C, r, g)");
    if (v_val <= 0) throw std::runtime_error("format error: velocity must be positive");

    Instance inst;
    inst.source_path = path;
    inst.cargo_capacity = c_val;
    inst.battery_capacity = q_val;
    inst.recharge_rate = g_val;
    inst.nominal_rate = r_val;
    inst.velocity = v_val;
    inst.num_customers = static_cast<int>(customer_rows.size());
    inst.num_physical_stations = static_cast<int>(station_rows.size());
    inst.copies_per_station = copies_per_station;

    auto push = [&inst](const Row& r, VertexKind kind, const std::string& name, int parent) {
        Vertex v;
        v.id = static_cast<int>(inst.vertices.size());
        v.name = name;
        v.kind = kind;
        v.x = r.x;
        v.y = r.y;
        v.demand = kind == VertexKind::Customer ? r.demand : 0.0;
        v.ready = r.ready;
        v.due = r.due;
        v.service = r.service;
        v.parent = parent;
        inst.vertices.push_back(v);
        return v.id;
    };

    push(depot_rows[0], VertexKind::Depot, depot_rows[0].name, -1);
    for (const Row& r : customer_rows) push(r, VertexKind::Customer, r.name, -1);
    for (const Row& r : station_rows) {
        int primary = push(r, VertexKind::Station, r.name, -1);
        inst.vertices[primary].parent = primary;
        for (int c = 1; c < copies_per_station; ++c)
            push(r, VertexKind::DummyStation, r.name + "#" + std::to_string(c), primary);
    }
    // end-depot clone shares coordinates and window with the depot
    push(depot_rows[0], VertexKind::Depot, depot_rows[0].name + "_end", -1);

    inst.finalize();

    for (const auto& ov : overrides) {
        int a = inst.find_vertex(ov.a), b = inst.find_vertex(ov.b);
        if (a < 0 || b < 0)
            throw std::runtime_error("format error: EDGE references unknown vertex " + (a < 0 ? ov.a : ov.b));
        inst.override_distance(inst.phys[a], inst.phys[b], ov.d);
    }
    return inst;
}

Instance preprocess_arcs(const Instance& inst, const std::vector<Scenario>& scenarios) {
    if (scenarios.empty()) throw std::invalid_argument("preprocess_arcs: scenario set must be non-empty");
    Instance out = inst;
    const int n = out.num_vertices();
    const double H = out.full_charge_time();
    const double C = out.cargo_capacity;
    const double l0 = out.vertices[out.depot()].due;

    // recharge-time cost of an arc under a scenario
    auto hcost = [&](const Scenario& s, int u, int v) {
        return out.recharge_rate * s.rate(out, u, v) * out.distance(u, v);
    };

    // battery rule (16d) needs, per customer, the cheapest way in from a
    // charge point and out to one; precompute per scenario
    const int nc = out.num_customers;
    std::vector<double> best_in(nc + 1), best_out(nc + 1);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!out.arc_ok[i * n + j]) continue;
            const Vertex& u = out.vertices[i];
            const Vertex& v = out.vertices[j];
            bool drop = false;
            // cargo rule
            if (u.kind == VertexKind::Customer && v.kind == VertexKind::Customer && u.demand + v.demand > C) drop = true;
            // time rules
            double t_uv = out.travel_time(i, j);
            if (!drop && u.ready + u.service + t_uv > v.due) drop = true;
            if (!drop && j != out.end_depot() &&
                u.ready + u.service + t_uv + v.service + out.travel_time(j, out.end_depot()) > l0)
                drop = true;
            if (drop) out.arc_ok[i * n + j] = 0;
        }
    }

    for (const Scenario& s : scenarios) {
        for (int c = 1; c <= nc; ++c) {
            double bi = hcost(s, out.depot(), c);
            double bo = hcost(s, c, out.end_depot());
            for (int st = 0; st < out.num_physical_stations; ++st) {
                int sv = out.first_station() + st * out.copies_per_station;
                bi = std::min(bi, hcost(s, sv, c));
                bo = std::min(bo, hcost(s, c, sv));
            }
            best_in[c] = bi;
            best_out[c] = bo;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!out.arc_ok[i * n + j]) continue;
                double h_uv = hcost(s, i, j);
                if (h_uv > H) {
                    out.arc_ok[i * n + j] = 0;  // single arc exceeds a full battery
                    continue;
                }
                if (out.is_customer(i) && out.is_customer(j) && best_in[i] + h_uv + best_out[j] > H)
                    out.arc_ok[i * n + j] = 0;  // not coverable even between best charge points
            }
        }
    }
    return out;
}

}  // namespace arevrp
