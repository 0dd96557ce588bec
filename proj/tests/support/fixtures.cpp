#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace testsupport {

InstanceBuilder& InstanceBuilder::depot(double x, double y, double e, double l) {
    depot_.name = "D0";
    depot_.kind = VertexKind::Depot;
    depot_.x = x;
    depot_.y = y;
    depot_.ready = e;
    depot_.due = l;
    return *this;
}

InstanceBuilder& InstanceBuilder::customer(const std::string& name, double x, double y, double q, double e, double l,
                                           double s) {
    Vertex v;
    v.name = name;
    v.kind = VertexKind::Customer;
    v.x = x;
    v.y = y;
    v.demand = q;
    v.ready = e;
    v.due = l;
    v.service = s;
    customers_.push_back(v);
    return *this;
}

InstanceBuilder& InstanceBuilder::station(const std::string& name, double x, double y) {
    Vertex v;
    v.name = name;
    v.kind = VertexKind::Station;
    v.x = x;
    v.y = y;
    stations_.push_back(v);
    return *this;
}

InstanceBuilder& InstanceBuilder::params(double Q, double C, double r, double g, double v, int copies) {
    q_ = Q;
    c_ = C;
    r_ = r;
    g_ = g;
    v_ = v;
    copies_ = copies;
    return *this;
}

Instance InstanceBuilder::build() const {
    Instance inst;
    inst.battery_capacity = q_;
    inst.cargo_capacity = c_;
    inst.nominal_rate = r_;
    inst.recharge_rate = g_;
    inst.velocity = v_;
    inst.copies_per_station = copies_;
    inst.num_customers = static_cast<int>(customers_.size());
    inst.num_physical_stations = static_cast<int>(stations_.size());

    auto push = [&inst](Vertex v) {
        v.id = static_cast<int>(inst.vertices.size());
        inst.vertices.push_back(v);
        return v.id;
    };
    Vertex d = depot_;
    push(d);
    for (const Vertex& c : customers_) push(c);
    for (const Vertex& s : stations_) {
        Vertex prim = s;
        prim.ready = depot_.ready;
        prim.due = depot_.due;
        int pid = push(prim);
        inst.vertices[pid].parent = pid;
        for (int k = 1; k < copies_; ++k) {
            Vertex copy = inst.vertices[pid];
            copy.kind = VertexKind::DummyStation;
            copy.name = s.name + "#" + std::to_string(k);
            copy.parent = pid;
            push(copy);
        }
    }
    Vertex end = depot_;
    end.name = depot_.name + "_end";
    push(end);
    inst.finalize();
    return inst;
}

Instance example_instance() {
    InstanceBuilder b;
    b.depot(0, 0, 0, 140)
        .customer("C1", 40, 0, 0, 40, 50, 0)
        .customer("C2", 0, -30, 0, 90, 100, 0)
        .station("S1", 10, -15)
        .params(120, 200, 1.0, 1.0, 1.0, 2);
    Instance inst = b.build();
    // the example's distances are not planar-consistent; pin them explicitly
    auto p = [&inst](const std::string& n) { return inst.phys[inst.find_vertex(n)]; };
    inst.override_distance(p("D0"), p("C1"), 40);
    inst.override_distance(p("D0"), p("C2"), 30);
    inst.override_distance(p("C1"), p("C2"), 50);
    inst.override_distance(p("D0"), p("S1"), 19);
    inst.override_distance(p("C1"), p("S1"), 35);
    inst.override_distance(p("C2"), p("S1"), 20);
    return inst;
}

std::string write_example_fixture(const std::string& dir) {
    std::string path = dir + "/example_two_customers.txt";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "StringID Type x y demand ReadyTime DueDate ServiceTime\n";
    out << "D0 d 0.0 0.0 0.0 0.0 140.0 0.0\n";
    out << "S1 f 10.0 -15.0 0.0 0.0 140.0 0.0\n";
    out << "C1 c 40.0 0.0 0.0 40.0 50.0 0.0\n";
    out << "C2 c 0.0 -30.0 0.0 90.0 100.0 0.0\n";
    out << "\n";
    out << "Q Vehicle fuel tank capacity /120.0/\n";
    out << "C Vehicle load capacity /200.0/\n";
    out << "r fuel consumption rate /1.0/\n";
    out << "g inverse refueling rate /1.0/\n";
    out << "v average Velocity /1.0/\n";
    out << "\n";
    out << "EDGE D0 C1 40\n";
    out << "EDGE D0 C2 30\n";
    out << "EDGE C1 C2 50\n";
    out << "EDGE D0 S1 19\n";
    out << "EDGE C1 S1 35\n";
    out << "EDGE C2 S1 20\n";
    return path;
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "StringID Type x y demand ReadyTime DueDate ServiceTime\n";
    char buf[256];
    auto row = [&](const Vertex& v, char type) {
        std::snprintf(buf, sizeof buf, "%s %c %.10g %.10g %.10g %.10g %.10g %.10g\n", v.name.c_str(), type, v.x, v.y,
                      v.demand, v.ready, v.due, v.service);
        out << buf;
    };
    row(inst.vertices[inst.depot()], 'd');
    for (int s = 0; s < inst.num_physical_stations; ++s)
        row(inst.vertices[inst.first_station() + s * inst.copies_per_station], 'f');
    for (int c = 1; c <= inst.num_customers; ++c) row(inst.vertices[c], 'c');
    out << "\n";
    std::snprintf(buf, sizeof buf, "Q Vehicle fuel tank capacity /%.10g/\n", inst.battery_capacity);
    out << buf;
    std::snprintf(buf, sizeof buf, "C Vehicle load capacity /%.10g/\n", inst.cargo_capacity);
    out << buf;
    std::snprintf(buf, sizeof buf, "r fuel consumption rate /%.10g/\n", inst.nominal_rate);
    out << buf;
    std::snprintf(buf, sizeof buf, "g inverse refueling rate /%.10g/\n", inst.recharge_rate);
    out << buf;
    std::snprintf(buf, sizeof buf, "v average Velocity /%.10g/\n", inst.velocity);
    out << buf;
}

Instance synth_instance(const SynthSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    InstanceBuilder b;
    double cx = spec.box / 2, cy = spec.box / 2;
    b.depot(cx, cy, 0, spec.horizon);
    for (int c = 0; c < spec.customers; ++c) {
        double x = spec.box * unit(rng), y = spec.box * unit(rng);
        double q = 1 + std::floor(spec.demand_max * unit(rng));
        double e = (spec.horizon - spec.window_width - 2 * spec.service) * 0.7 * unit(rng);
        b.customer("C" + std::to_string(c + 1), x, y, q, e, e + spec.window_width, spec.service);
    }
    b.station("S0", cx, cy);
    for (int s = 1; s < spec.stations; ++s) {
        double x = spec.box * (0.25 + 0.5 * unit(rng)), y = spec.box * (0.25 + 0.5 * unit(rng));
        b.station("S" + std::to_string(s), x, y);
    }
    b.params(spec.battery, spec.cargo, 1.0, 1.0, 1.0, 2);
    Instance inst = b.build();

    // make every customer servable: the battery must cover its best
    // charge-point-to-charge-point passage with margin for rate deviations
    double needed = 0.0;
    for (int c = 1; c <= inst.num_customers; ++c) {
        double best = 2.0 * inst.distance(inst.depot(), c);
        for (int s = 0; s < inst.num_physical_stations; ++s) {
            int sv = inst.first_station() + s * inst.copies_per_station;
            for (int s2 = 0; s2 < inst.num_physical_stations; ++s2) {
                int sv2 = inst.first_station() + s2 * inst.copies_per_station;
                best = std::min(best, inst.distance(sv, c) + inst.distance(c, sv2));
            }
            best = std::min(best, inst.distance(inst.depot(), c) + inst.distance(c, sv));
        }
        needed = std::max(needed, best);
    }
    inst.battery_capacity = std::max(spec.battery, 1.15 * needed * inst.nominal_rate);
    return inst;
}

Route random_route(const Instance& inst, std::mt19937_64& rng, int max_customers, double station_prob) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> customers;
    for (int c = 1; c <= inst.num_customers; ++c) customers.push_back(c);
    std::shuffle(customers.begin(), customers.end(), rng);
    int take = 1 + static_cast<int>(unit(rng) * std::min<int>(max_customers, customers.size()));
    take = std::min<int>(take, customers.size());
    customers.resize(take);

    std::vector<int> stations;
    for (int s = inst.first_station(); s < inst.first_station() + inst.num_station_copies(); ++s) stations.push_back(s);
    std::shuffle(stations.begin(), stations.end(), rng);

    std::vector<int> middle;
    size_t si = 0;
    for (int c : customers) {
        if (si < stations.size() && unit(rng) < station_prob) middle.push_back(stations[si++]);
        middle.push_back(c);
    }
    if (si < stations.size() && unit(rng) < station_prob) middle.push_back(stations[si++]);
    return make_route(inst, middle);
}

Scenario random_scenario(const BudgetSet& set, std::mt19937_64& rng, bool inside_budget) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Scenario s = nominal_scenario(set);
    s.label = "random";
    const int n2 = set.n * set.n;
    if (inside_budget) {
        double budget = set.gamma;
        std::vector<int> order(n2);
        for (int k = 0; k < n2; ++k) order[k] = k;
        std::shuffle(order.begin(), order.end(), rng);
        for (int k : order) {
            if (budget <= 0) break;
            double frac = std::min(1.0, budget) * unit(rng);
            double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
            s.rates[k] = set.nominal[k] + sign * frac * set.hat[k];
            budget -= frac;
        }
    } else {
        for (int k = 0; k < n2; ++k) {
            double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
            s.rates[k] = std::max(1e-6, set.nominal[k] + sign * unit(rng) * set.hat[k]);
        }
    }
    return s;
}

}  // namespace testsupport
