#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "arevrp/instance.hpp"
#include "arevrp/robust.hpp"

namespace arevrp {

namespace {

// rebuild an instance keeping the given customers (expanded ids) and
// physical stations (primary-copy ids)
Instance rebuild(const Instance& src, const std::vector<int>& customers, const std::vector<int>& stations) {
    Instance out;
    out.cargo_capacity = src.cargo_capacity;
    out.battery_capacity = src.battery_capacity;
    out.recharge_rate = src.recharge_rate;
    out.nominal_rate = src.nominal_rate;
    out.velocity = src.velocity;
    out.copies_per_station = src.copies_per_station;
    out.num_customers = static_cast<int>(customers.size());
    out.num_physical_stations = static_cast<int>(stations.size());
    out.source_path = src.source_path;

    auto clone = [&out](const Vertex& v, VertexKind kind, const std::string& name, int parent) {
        Vertex nv = v;
        nv.id = static_cast<int>(out.vertices.size());
        nv.kind = kind;
        nv.name = name;
        nv.parent = parent;
        out.vertices.push_back(nv);
        return nv.id;
    };

    clone(src.vertices[src.depot()], VertexKind::Depot, src.vertices[src.depot()].name, -1);
    for (int c : customers) clone(src.vertices[c], VertexKind::Customer, src.vertices[c].name, -1);
    for (int s : stations) {
        int primary = clone(src.vertices[s], VertexKind::Station, src.vertices[s].name, -1);
        out.vertices[primary].parent = primary;
        for (int k = 1; k < out.copies_per_station; ++k)
            clone(src.vertices[s], VertexKind::DummyStation, src.vertices[s].name + "#" + std::to_string(k), primary);
    }
    clone(src.vertices[src.depot()], VertexKind::Depot, src.vertices[src.depot()].name + "_end", -1);
    out.finalize();
    return out;
}

}  // namespace

Instance subsample_instance(const Instance& large, int n, unsigned long seed, int det_runs) {
    if (n > large.num_customers) throw std::invalid_argument("subsample_instance: n exceeds customer count");
    if (det_runs < 1) det_runs = 1;

    std::mt19937_64 rng(seed);
    std::vector<int> all;
    for (int c = 1; c <= large.num_customers; ++c) all.push_back(c);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(n);
    std::sort(all.begin(), all.end());

    std::vector<int> all_stations;
    for (int s = 0; s < large.num_physical_stations; ++s)
        all_stations.push_back(large.first_station() + s * large.copies_per_station);

    Instance with_all = rebuild(large, all, all_stations);

    // deterministic runs; stations of the shortest solution survive
    BudgetSet det(with_all, 0.0, 0.1);
    double best_dist = std::numeric_limits<double>::infinity();
    std::set<std::string> keep_names;
    for (int run = 0; run < det_runs; ++run) {
        SearchConfig cfg;
        cfg.seed = seed + 1 + run;
        cfg.max_vns_iters = 1500;
        cfg.n_feas = 200;
        CcgResult r = ccg_solve(with_all, det, cfg);
        if (!r.has_solution) continue;
        double dist = r.distance;
        if (dist < best_dist) {
            best_dist = dist;
            keep_names.clear();
            for (const Route& route : r.best.routes)
                for (int v : route.seq)
                    if (with_all.is_station(v)) {
                        int primary = with_all.vertices[v].kind == VertexKind::DummyStation ? with_all.vertices[v].parent : v;
                        keep_names.insert(with_all.vertices[primary].name);
                    }
        }
    }

    std::vector<int> kept;
    for (int s : all_stations)
        if (keep_names.count(large.vertices[s].name)) kept.push_back(s);
    return rebuild(large, all, kept);
}

}  // namespace arevrp
