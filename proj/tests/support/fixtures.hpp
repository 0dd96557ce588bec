#pragma once

#include <random>
#include <string>
#include <vector>

#include "arevrp/evaluation.hpp"
#include "arevrp/instance.hpp"
#include "arevrp/uncertainty.hpp"

namespace testsupport {

using namespace arevrp;

class InstanceBuilder {
public:
    InstanceBuilder& depot(double x, double y, double e, double l);
    InstanceBuilder& customer(const std::string& name, double x, double y, double q, double e, double l, double s);
    InstanceBuilder& station(const std::string& name, double x, double y);
    InstanceBuilder& params(double Q, double C, double r, double g, double v, int copies = 2);
    Instance build() const;

private:
    Vertex depot_{};
    std::vector<Vertex> customers_, stations_;
    double q_ = 100, c_ = 200, r_ = 1.0, g_ = 1.0, v_ = 1.0;
    int copies_ = 2;
};

// the two-customer / one-station example network (non-Euclidean distances)
Instance example_instance();
// same network as a parseable file with EDGE overrides; returns the path
std::string write_example_fixture(const std::string& dir);

// writes any instance in the Schneider text format
void write_instance_file(const Instance& inst, const std::string& path);

struct SynthSpec {
    int customers = 8;
    int stations = 2;
    unsigned long seed = 42;
    double battery = 90.0;
    double cargo = 100.0;
    double demand_max = 20.0;
    double window_width = 250.0;
    double horizon = 1000.0;
    double service = 10.0;
    double box = 100.0;  // coordinate range
};
Instance synth_instance(const SynthSpec& spec);

// random route visiting up to max_customers distinct customers with stations
// sprinkled in; always starts/ends at the depots
Route random_route(const Instance& inst, std::mt19937_64& rng, int max_customers, double station_prob);

// random scenario: a budget-set member (vertex-ish) or an arbitrary box draw
Scenario random_scenario(const BudgetSet& set, std::mt19937_64& rng, bool inside_budget);

}  // namespace testsupport
