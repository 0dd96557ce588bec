#pragma once

#include <string>
#include <vector>

namespace arevrp {

enum class VertexKind { Depot, Customer, Station, DummyStation };

struct Vertex {
    int id = -1;              // index in the expanded vertex list
    std::string name;         // StringID from the instance file (copies get a #k suffix)
    VertexKind kind = VertexKind::Customer;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;      // q, zero for depot and stations
    double ready = 0.0;       // e, earliest service start
    double due = 0.0;         // l, latest service start
    double service = 0.0;     // s
    int parent = -1;          // DummyStation: vertex id of the primary copy

    bool is_station() const { return kind == VertexKind::Station || kind == VertexKind::DummyStation; }
};

class Scenario;

// Problem instance after expansion: vertex 0 is the start depot, the last
// vertex is the end-depot clone, customers come first, then R copies of each
// physical recharging station. Distances live on the physical network so that
// station copies and the depot clone share arcs (and consumption rates) with
// their parents. Treated as immutable once built.
class Instance {
public:
    std::vector<Vertex> vertices;

    double cargo_capacity = 0.0;    // C
    double battery_capacity = 0.0;  // Q
    double recharge_rate = 1.0;     // g, time per unit of energy
    double nominal_rate = 1.0;      // r, energy per distance unit, all arcs
    double velocity = 1.0;          // v

    int num_customers = 0;
    int num_physical_stations = 0;
    int copies_per_station = 2;     // R

    int num_physical = 0;           // depot + customers + physical stations
    std::vector<int> phys;          // expanded vertex id -> physical id
    std::vector<double> phys_dist;  // num_physical x num_physical
    std::vector<char> arc_ok;       // num_vertices x num_vertices, post-preprocessing

    std::string source_path;
    bool has_distance_overrides = false;

    int depot() const { return 0; }
    int end_depot() const { return static_cast<int>(vertices.size()) - 1; }
    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int first_station() const { return 1 + num_customers; }
    int num_station_copies() const { return num_physical_stations * copies_per_station; }

    bool is_customer(int v) const { return vertices[v].kind == VertexKind::Customer; }
    bool is_station(int v) const { return vertices[v].is_station(); }
    bool is_depot(int v) const { return v == depot() || v == end_depot(); }

    double distance(int i, int j) const { return phys_dist[phys[i] * num_physical + phys[j]]; }
    double travel_time(int i, int j) const { return distance(i, j) / velocity; }
    // full-battery recharge time, the H of the time-unit recursions
    double full_charge_time() const { return recharge_rate * battery_capacity; }

    bool arc_allowed(int i, int j) const { return arc_ok[i * num_vertices() + j] != 0; }

    double total_demand() const;
    int find_vertex(const std::string& name) const;  // -1 when absent

    // builds phys map, Euclidean distances and the base arc set; called by
    // parse_instance and by test builders after filling vertices/parameters
    void finalize();
    void override_distance(int pi, int pj, double d);  // physical indices, symmetric
};

// Parses a Schneider-format E-VRPTW instance file; throws std::runtime_error
// naming the offending line on malformed input.
Instance parse_instance(const std::string& path, int copies_per_station = 2);

// Removes arcs proven infeasible by the cargo/time/battery elimination rules,
// the battery rules evaluated against every scenario in the set. Pure filter,
// idempotent: returns a copy with a reduced arc set.
Instance preprocess_arcs(const Instance& inst, const std::vector<Scenario>& scenarios);

// Picks n customers uniformly at random, then keeps the stations visited in
// the shortest of det_runs deterministic solver runs. Deterministic in
// (seed, det_runs).
Instance subsample_instance(const Instance& large, int n, unsigned long seed, int det_runs = 5);

}  // namespace arevrp
