#include "arevrp/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace arevrp {

bool Scenario::close_to(const Scenario& other, double tol) const {
    if (n != other.n) return false;
    for (size_t k = 0; k < rates.size(); ++k)
        if (std::fabs(rates[k] - other.rates[k]) > tol) return false;
    return true;
}

SampleDist parse_sample_dist(const std::string& tag) {
    if (tag == "nd" || tag == "ND") return SampleDist::ND;
    if (tag == "ud" || tag == "UD") return SampleDist::UD;
    if (tag == "ndc" || tag == "NDC") return SampleDist::NDC;
    throw std::invalid_argument("unknown scenario distribution tag: " + tag);
}

BudgetSet::BudgetSet(const Instance& inst, double gamma_budget, double hat_fraction) {
    n = inst.num_physical;
    gamma = gamma_budget;
    nominal.assign(static_cast<size_t>(n) * n, inst.nominal_rate);
    hat.resize(nominal.size());
    for (size_t k = 0; k < nominal.size(); ++k) hat[k] = hat_fraction * nominal[k];
}

bool BudgetSet::contains(const Scenario& s, double tol) const {
    if (s.n != n) return false;
    double used = 0.0;
    for (size_t k = 0; k < nominal.size(); ++k) {
        double dev = std::fabs(s.rates[k] - nominal[k]);
        if (hat[k] <= tol) {
            if (dev > tol) return false;
            continue;
        }
        if (dev > hat[k] + tol) return false;
        used += dev / hat[k];
    }
    return used <= gamma + tol;
}

Scenario nominal_scenario(const BudgetSet& set) {
    Scenario s;
    s.n = set.n;
    s.rates = set.nominal;
    s.label = "nominal";
    return s;
}

WorstCaseResult worst_case_linear(const BudgetSet& set, const std::vector<double>& coeff) {
    if (coeff.size() != set.nominal.size())
        throw std::invalid_argument("worst_case_linear: coefficient vector has wrong size");
    WorstCaseResult res;
    res.scenario = nominal_scenario(set);
    res.scenario.label = "worst-case";

    std::vector<int> order;
    order.reserve(coeff.size());
    for (int k = 0; k < static_cast<int>(coeff.size()); ++k)
        if (std::fabs(coeff[k]) * set.hat[k] > 0.0) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ga = std::fabs(coeff[a]) * set.hat[a];
        double gb = std::fabs(coeff[b]) * set.hat[b];
        if (ga != gb) return ga > gb;
        return a < b;
    });

    double budget = set.gamma;
    for (int k : order) {
        if (budget <= 0.0) break;
        double frac = std::min(1.0, budget);
        double dev = frac * set.hat[k] * (coeff[k] > 0 ? 1.0 : -1.0);
        res.scenario.rates[k] = set.nominal[k] + dev;
        res.gain += dev * coeff[k];
        budget -= frac;
    }
    return res;
}

std::vector<Scenario> sample(const BudgetSet& set, SampleDist dist, int count, unsigned long seed) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit_uniform(0.0, 1.0);
    const int n = set.n;
    const double kMinRate = 1e-6;

    std::vector<Scenario> out;
    out.reserve(count);
    for (int c = 0; c < count; ++c) {
        Scenario s;
        s.n = n;
        s.rates.resize(set.nominal.size());
        switch (dist) {
            case SampleDist::ND:
                for (size_t k = 0; k < s.rates.size(); ++k) {
                    double sigma = 0.1 * set.nominal[k];
                    s.rates[k] = std::max(kMinRate, set.nominal[k] + sigma * unit_normal(rng));
                }
                s.label = "nd-" + std::to_string(c);
                break;
            case SampleDist::UD:
                for (size_t k = 0; k < s.rates.size(); ++k) {
                    double lo = 0.9 * set.nominal[k], hi = 1.1 * set.nominal[k];
                    s.rates[k] = std::max(kMinRate, lo + (hi - lo) * unit_uniform(rng));
                }
                s.label = "ud-" + std::to_string(c);
                break;
            case SampleDist::NDC: {
                // correlated rates through per-vertex effects z_i + z_j
                const double sigma_z = 0.1 / (2.0 * std::sqrt(2.0));
                std::vector<double> z(n);
                for (int v = 0; v < n; ++v) z[v] = sigma_z * unit_normal(rng);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double base = set.nominal[i * n + j];
                        s.rates[i * n + j] = std::max(kMinRate, base + base * (z[i] + z[j]));
                    }
                s.label = "ndc-" + std::to_string(c);
                break;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace arevrp
