#include "arevrp/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace arevrp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;
constexpr double kTwoPi = 6.283185307179586;

long long edge_key(int u, int v, int n) { return static_cast<long long>(u) * n + v; }

bool contains_vertex(const Route& r, int v) {
    return std::find(r.seq.begin(), r.seq.end(), v) != r.seq.end();
}
}  // namespace

void TabuState::clear() {
    for (auto& s : sets_) s.clear();
}

void TabuState::decrement() {
    for (auto& s : sets_)
        for (auto it = s.begin(); it != s.end();) {
            if (--it->second <= 0) it = s.erase(it);
            else ++it;
        }
}

bool TabuState::is_tabu(int op, long long edge) const {
    const auto& s = sets_[op];
    return s.find(edge) != s.end();
}

void TabuState::add(int op, long long edge, int tenure) { sets_[op][edge] = tenure; }

Solution initial_solution(const Instance& inst, int fleet, unsigned long seed) {
    if (fleet <= 0) fleet = std::max(1, inst.num_customers);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double ref_angle = kTwoPi * unit(rng);
    const Vertex& dep = inst.vertices[inst.depot()];
    std::vector<int> order;
    for (int c = 1; c <= inst.num_customers; ++c) order.push_back(c);
    auto angle_of = [&](int c) {
        double a = std::atan2(inst.vertices[c].y - dep.y, inst.vertices[c].x - dep.x) - ref_angle;
        while (a < 0) a += kTwoPi;
        return a;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double aa = angle_of(a), ab = angle_of(b);
        if (aa != ab) return aa < ab;
        return a < b;
    });

    Scenario nominal(inst.num_physical, inst.nominal_rate, "nominal");
    const double g = inst.recharge_rate;

    Solution sol;
    sol.routes.assign(fleet, make_route(inst, {}));
    int active = 0;

    auto energy_increment = [&](const Route& r, int pos, int c) {
        int prev = r.seq[pos - 1], next = r.seq[pos];
        return g * inst.nominal_rate * (inst.distance(prev, c) + inst.distance(c, next) - inst.distance(prev, next));
    };

    for (int c : order) {
        bool placed = false;
        while (!placed) {
            if (active >= fleet) {
                // out of routes: force into the last one at the cheapest spot
                Route& r = sol.routes[fleet - 1];
                int best_pos = 1;
                double best_inc = kInf;
                for (int pos = 1; pos < r.length(); ++pos) {
                    double inc = energy_increment(r, pos, c);
                    if (inc < best_inc - kTol) {
                        best_inc = inc;
                        best_pos = pos;
                    }
                }
                r.seq.insert(r.seq.begin() + best_pos, c);
                placed = true;
                break;
            }
            Route& r = sol.routes[active];
            double route_demand = 0.0;
            for (int v : r.seq) route_demand += inst.vertices[v].demand;
            int best_pos = -1;
            double best_inc = kInf;
            for (int pos = 1; pos < r.length(); ++pos) {
                if (!inst.arc_allowed(r.seq[pos - 1], c) || !inst.arc_allowed(c, r.seq[pos])) continue;
                Route cand = r;
                cand.seq.insert(cand.seq.begin() + pos, c);
                if (route_demand + inst.vertices[c].demand > inst.cargo_capacity + kTol) continue;
                RouteCost rc = evaluate_route_cost(cand, nominal, inst);
                if (!rc.feasible()) continue;
                double inc = energy_increment(r, pos, c);
                if (inc < best_inc - kTol) {
                    best_inc = inc;
                    best_pos = pos;
                }
            }
            if (best_pos >= 0) {
                r.seq.insert(r.seq.begin() + best_pos, c);
                placed = true;
            } else {
                ++active;  // route closed, activate the next one
            }
        }
    }
    return sol;
}

Solution cyclic_exchange(const Solution& sol, std::mt19937_64& rng, const SearchConfig& cfg, const Instance& inst) {
    Solution out = sol;
    std::vector<int> pool;
    int first_empty = -1;
    for (int r = 0; r < static_cast<int>(out.routes.size()); ++r) {
        if (!out.routes[r].empty_route()) pool.push_back(r);
        else if (first_empty < 0) first_empty = r;
    }
    if (first_empty >= 0) pool.push_back(first_empty);
    if (pool.empty()) return out;

    int n_av = static_cast<int>(pool.size());
    int lo = std::min(cfg.shake_routes_min, n_av);
    int hi = std::min(cfg.shake_routes_max, n_av);
    std::uniform_int_distribution<int> nr_dist(lo, hi);
    int n_r = nr_dist(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(n_r);

    // cut a block of consecutive interior vertices from each selected route
    std::vector<std::vector<int>> blocks(n_r);
    std::vector<int> cut_pos(n_r, 1);
    for (int k = 0; k < n_r; ++k) {
        Route& r = out.routes[pool[k]];
        int interior = r.length() - 2;
        int max_len = std::min(cfg.shake_block_max, interior);
        std::uniform_int_distribution<int> len_dist(0, std::max(0, max_len));
        int len = len_dist(rng);
        int start = 1;
        if (interior - len > 0) {
            std::uniform_int_distribution<int> start_dist(1, interior - len + 1);
            start = start_dist(rng);
        }
        cut_pos[k] = start;
        blocks[k].assign(r.seq.begin() + start, r.seq.begin() + start + len);
        r.seq.erase(r.seq.begin() + start, r.seq.begin() + start + len);
    }
    // reinsert: route k receives the reversed block of its predecessor
    for (int k = 0; k < n_r; ++k) {
        Route& r = out.routes[pool[k]];
        std::vector<int> block = blocks[(k - 1 + n_r) % n_r];
        std::reverse(block.begin(), block.end());
        int at = std::min<int>(cut_pos[k], r.length() - 1);
        for (int v : block) {
            if (inst.is_station(v) && contains_vertex(r, v)) continue;  // keep copies unique per route
            r.seq.insert(r.seq.begin() + at, v);
            ++at;
        }
    }
    return out;
}

bool sa_accept(double current_cost, double candidate_cost, double temperature, std::mt19937_64& rng) {
    if (candidate_cost <= current_cost) return true;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < std::exp((current_cost - candidate_cost) / temperature);
}

void update_penalties(CostWeights& w, int& feasible_streak, int& infeasible_streak, const SearchConfig& cfg) {
    if (infeasible_streak >= cfg.penalty_period) {
        w.alpha = std::min(w.alpha * cfg.penalty_factor, cfg.alpha_max);
        w.beta = std::min(w.beta * cfg.penalty_factor, cfg.beta_max);
        infeasible_streak = 0;
    }
    if (feasible_streak >= cfg.penalty_period) {
        w.alpha = std::max(w.alpha / cfg.penalty_factor, cfg.alpha_min);
        w.beta = std::max(w.beta / cfg.penalty_factor, cfg.beta_min);
        feasible_streak = 0;
    }
}

CostCache::CostCache(const Instance& inst, const std::vector<Scenario>& scenarios)
    : inst_(inst), scenarios_(scenarios) {}

RouteCost CostCache::eval(const Route& r, int s) const { return evaluate_route_cost(r, scenarios_[s], inst_); }

void CostCache::set_solution(const Solution& sol) {
    sol_ = sol;
    const int nr = static_cast<int>(sol_.routes.size());
    const int ns = static_cast<int>(scenarios_.size());
    per_route_.assign(nr, std::vector<RouteCost>(ns));
    route_demand_.assign(nr, 0.0);
    scen_rec_.assign(ns, 0.0);
    scen_tw_.assign(ns, 0.0);
    scen_fl_.assign(ns, 0.0);
    fr_ = 0.0;
    for (int r = 0; r < nr; ++r) {
        for (int v : sol_.routes[r].seq) route_demand_[r] += inst_.vertices[v].demand;
        fr_ += std::max(0.0, route_demand_[r] - inst_.cargo_capacity);
        for (int s = 0; s < ns; ++s) {
            per_route_[r][s] = eval(sol_.routes[r], s);
            scen_rec_[s] += per_route_[r][s].recharge_time;
            scen_tw_[s] += per_route_[r][s].tw;
            scen_fl_[s] += per_route_[r][s].fl;
        }
    }
}

double CostCache::cost(const CostWeights& w) const {
    double worst = -kInf;
    for (size_t s = 0; s < scenarios_.size(); ++s)
        worst = std::max(worst, scen_rec_[s] + w.alpha * (scen_tw_[s] + scen_fl_[s]));
    return worst + w.beta * fr_;
}

bool CostCache::feasible() const {
    if (fr_ > kTol) return false;
    for (size_t s = 0; s < scenarios_.size(); ++s)
        if (scen_tw_[s] + scen_fl_[s] > kTol) return false;
    return true;
}

CostCache::Probe CostCache::probe(const CostWeights& w, int r1, const Route& n1, int r2, const Route& n2) const {
    const int ns = static_cast<int>(scenarios_.size());
    Probe out;
    double fr = fr_ - std::max(0.0, route_demand_[r1] - inst_.cargo_capacity);
    double d1 = 0.0;
    for (int v : n1.seq) d1 += inst_.vertices[v].demand;
    fr += std::max(0.0, d1 - inst_.cargo_capacity);
    if (r2 >= 0) {
        fr -= std::max(0.0, route_demand_[r2] - inst_.cargo_capacity);
        double d2 = 0.0;
        for (int v : n2.seq) d2 += inst_.vertices[v].demand;
        fr += std::max(0.0, d2 - inst_.cargo_capacity);
    }
    double worst = -kInf;
    bool feas = fr <= kTol;
    for (int s = 0; s < ns; ++s) {
        RouteCost c1 = eval(n1, s);
        double rec = scen_rec_[s] - per_route_[r1][s].recharge_time + c1.recharge_time;
        double tw = scen_tw_[s] - per_route_[r1][s].tw + c1.tw;
        double fl = scen_fl_[s] - per_route_[r1][s].fl + c1.fl;
        if (r2 >= 0) {
            RouteCost c2 = eval(n2, s);
            rec += c2.recharge_time - per_route_[r2][s].recharge_time;
            tw += c2.tw - per_route_[r2][s].tw;
            fl += c2.fl - per_route_[r2][s].fl;
        }
        worst = std::max(worst, rec + w.alpha * (tw + fl));
        if (tw + fl > kTol) feas = false;
    }
    out.cost = worst + w.beta * fr;
    out.feasible = feas;
    out.vehicles = sol_.employed_vehicles() - (sol_.routes[r1].empty_route() ? 0 : 1) + (n1.empty_route() ? 0 : 1);
    if (r2 >= 0) out.vehicles += (n2.empty_route() ? 0 : 1) - (sol_.routes[r2].empty_route() ? 0 : 1);
    return out;
}

void CostCache::replace(int r1, const Route& n1, int r2, const Route& n2) {
    const int ns = static_cast<int>(scenarios_.size());
    auto swap_route = [&](int r, const Route& nr) {
        fr_ -= std::max(0.0, route_demand_[r] - inst_.cargo_capacity);
        route_demand_[r] = 0.0;
        for (int v : nr.seq) route_demand_[r] += inst_.vertices[v].demand;
        fr_ += std::max(0.0, route_demand_[r] - inst_.cargo_capacity);
        for (int s = 0; s < ns; ++s) {
            scen_rec_[s] -= per_route_[r][s].recharge_time;
            scen_tw_[s] -= per_route_[r][s].tw;
            scen_fl_[s] -= per_route_[r][s].fl;
            per_route_[r][s] = eval(nr, s);
            scen_rec_[s] += per_route_[r][s].recharge_time;
            scen_tw_[s] += per_route_[r][s].tw;
            scen_fl_[s] += per_route_[r][s].fl;
        }
        sol_.routes[r] = nr;
    };
    swap_route(r1, n1);
    if (r2 >= 0) swap_route(r2, n2);
}

namespace {

struct Move {
    int op = -1;
    int r1 = -1, r2 = -1;
    Route new1, new2;
    double cost = kInf;
    bool feasible = false;
    int vehicles = 0;
    bool valid = false;
    bool aspiration = false;
    std::vector<long long> inserted;
    std::vector<long long> removed;
};

// candidate ranking: robust feasible with fewer vehicles than the incumbent
// wins, then generalized cost
bool move_better(const Move& a, const Move& b, int cur_vehicles) {
    if (!b.valid) return true;
    bool sa = a.feasible && a.vehicles < cur_vehicles;
    bool sb = b.feasible && b.vehicles < cur_vehicles;
    if (sa != sb) return sa;
    return a.cost < b.cost - kTol;
}

class MoveScanner {
public:
    MoveScanner(const Instance& inst, const CostCache& cache, const CostWeights& w, const TabuState& tabu,
                double best_known)
        : inst_(inst), cache_(cache), w_(w), tabu_(tabu), best_known_(best_known),
          n_(inst.num_vertices()), cur_vehicles_(cache.vehicles()) {}

    Move best;

    void consider(int op, int r1, Route&& n1, int r2, Route&& n2, std::initializer_list<std::pair<int, int>> inserted,
                  std::initializer_list<std::pair<int, int>> removed) {
        // inserted arcs must be allowed; rejected moves are never evaluated
        for (auto [u, v] : inserted)
            if (u != v && !inst_.arc_allowed(u, v)) return;
        CostCache::Probe p = cache_.probe(w_, r1, n1, r2, n2);
        bool tabu_hit = false;
        for (auto [u, v] : inserted)
            if (tabu_.is_tabu(op, edge_key(u, v, n_))) {
                tabu_hit = true;
                break;
            }
        if (tabu_hit && p.cost >= best_known_ - kTol) return;  // aspiration only
        Move m;
        m.op = op;
        m.r1 = r1;
        m.r2 = r2;
        m.new1 = std::move(n1);
        m.new2 = std::move(n2);
        m.cost = p.cost;
        m.feasible = p.feasible;
        m.vehicles = p.vehicles;
        m.valid = true;
        m.aspiration = tabu_hit;
        for (auto [u, v] : inserted) m.inserted.push_back(edge_key(u, v, n_));
        for (auto [u, v] : removed) m.removed.push_back(edge_key(u, v, n_));
        if (move_better(m, best, cur_vehicles_)) best = std::move(m);
    }

private:
    const Instance& inst_;
    const CostCache& cache_;
    const CostWeights& w_;
    const TabuState& tabu_;
    double best_known_;
    int n_;
    int cur_vehicles_;
};

// route indices worth scanning: all non-empty plus the first empty route
std::vector<int> scan_routes(const Solution& sol) {
    std::vector<int> out;
    int first_empty = -1;
    for (int r = 0; r < static_cast<int>(sol.routes.size()); ++r) {
        if (!sol.routes[r].empty_route()) out.push_back(r);
        else if (first_empty < 0) first_empty = r;
    }
    if (first_empty >= 0) out.push_back(first_empty);
    return out;
}

void scan_two_opt_star(MoveScanner& sc, const Solution& sol, const Instance& inst) {
    auto idx = scan_routes(sol);
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b) {
            const Route& r1 = sol.routes[idx[a]];
            const Route& r2 = sol.routes[idx[b]];
            for (int i = 0; i + 1 < r1.length(); ++i)
                for (int j = 0; j + 1 < r2.length(); ++j) {
                    if (i == r1.length() - 2 && j == r2.length() - 2) continue;  // identity
                    Route n1, n2;
                    n1.seq.assign(r1.seq.begin(), r1.seq.begin() + i + 1);
                    n1.seq.insert(n1.seq.end(), r2.seq.begin() + j + 1, r2.seq.end());
                    n2.seq.assign(r2.seq.begin(), r2.seq.begin() + j + 1);
                    n2.seq.insert(n2.seq.end(), r1.seq.begin() + i + 1, r1.seq.end());
                    // keep station copies unique inside each new route
                    bool ok = true;
                    for (int k = 1; ok && k < n1.length() - 1; ++k)
                        if (inst.is_station(n1.seq[k]))
                            for (int k2 = k + 1; k2 < n1.length() - 1; ++k2)
                                if (n1.seq[k2] == n1.seq[k]) { ok = false; break; }
                    for (int k = 1; ok && k < n2.length() - 1; ++k)
                        if (inst.is_station(n2.seq[k]))
                            for (int k2 = k + 1; k2 < n2.length() - 1; ++k2)
                                if (n2.seq[k2] == n2.seq[k]) { ok = false; break; }
                    if (!ok) continue;
                    sc.consider(kTwoOptStar, idx[a], std::move(n1), idx[b], std::move(n2),
                                {{r1.seq[i], r2.seq[j + 1]}, {r2.seq[j], r1.seq[i + 1]}},
                                {{r1.seq[i], r1.seq[i + 1]}, {r2.seq[j], r2.seq[j + 1]}});
                }
        }
}

void scan_exchange_intra(MoveScanner& sc, const Solution& sol, const Instance&) {
    auto idx = scan_routes(sol);
    for (int r : idx) {
        const Route& rt = sol.routes[r];
        for (int a = 1; a + 1 < rt.length(); ++a)
            for (int b = a + 1; b + 1 < rt.length(); ++b) {
                Route n = rt;
                std::swap(n.seq[a], n.seq[b]);
                int va = rt.seq[a], vb = rt.seq[b];
                if (b == a + 1) {
                    sc.consider(kExchangeIntra, r, std::move(n), -1, Route{},
                                {{rt.seq[a - 1], vb}, {vb, va}, {va, rt.seq[b + 1]}},
                                {{rt.seq[a - 1], va}, {va, vb}, {vb, rt.seq[b + 1]}});
                } else {
                    sc.consider(kExchangeIntra, r, std::move(n), -1, Route{},
                                {{rt.seq[a - 1], vb}, {vb, rt.seq[a + 1]}, {rt.seq[b - 1], va}, {va, rt.seq[b + 1]}},
                                {{rt.seq[a - 1], va}, {va, rt.seq[a + 1]}, {rt.seq[b - 1], vb}, {vb, rt.seq[b + 1]}});
                }
            }
    }
}

void scan_exchange_inter(MoveScanner& sc, const Solution& sol, const Instance& inst) {
    auto idx = scan_routes(sol);
    for (size_t x = 0; x < idx.size(); ++x)
        for (size_t y = x + 1; y < idx.size(); ++y) {
            const Route& r1 = sol.routes[idx[x]];
            const Route& r2 = sol.routes[idx[y]];
            for (int a = 1; a + 1 < r1.length(); ++a)
                for (int b = 1; b + 1 < r2.length(); ++b) {
                    int va = r1.seq[a], vb = r2.seq[b];
                    if (inst.is_station(vb) && contains_vertex(r1, vb)) continue;
                    if (inst.is_station(va) && contains_vertex(r2, va)) continue;
                    Route n1 = r1, n2 = r2;
                    n1.seq[a] = vb;
                    n2.seq[b] = va;
                    sc.consider(kExchangeInter, idx[x], std::move(n1), idx[y], std::move(n2),
                                {{r1.seq[a - 1], vb}, {vb, r1.seq[a + 1]}, {r2.seq[b - 1], va}, {va, r2.seq[b + 1]}},
                                {{r1.seq[a - 1], va}, {va, r1.seq[a + 1]}, {r2.seq[b - 1], vb}, {vb, r2.seq[b + 1]}});
                }
        }
}

void scan_relocate_intra(MoveScanner& sc, const Solution& sol, const Instance&) {
    auto idx = scan_routes(sol);
    for (int r : idx) {
        const Route& rt = sol.routes[r];
        for (int a = 1; a + 1 < rt.length(); ++a)
            for (int b = 0; b + 1 < rt.length(); ++b) {
                if (b == a || b == a - 1) continue;  // identity
                int va = rt.seq[a];
                Route n;
                n.seq.reserve(rt.seq.size());
                for (int k = 0; k < rt.length(); ++k) {
                    if (k == a) continue;
                    n.seq.push_back(rt.seq[k]);
                    if (k == b) n.seq.push_back(va);
                }
                sc.consider(kRelocateIntra, r, std::move(n), -1, Route{},
                            {{rt.seq[a - 1], rt.seq[a + 1]}, {rt.seq[b], va}, {va, rt.seq[b + 1]}},
                            {{rt.seq[a - 1], va}, {va, rt.seq[a + 1]}, {rt.seq[b], rt.seq[b + 1]}});
            }
    }
}

void scan_relocate_inter(MoveScanner& sc, const Solution& sol, const Instance& inst) {
    auto idx = scan_routes(sol);
    for (int x : idx)
        for (int y : idx) {
            if (x == y) continue;
            const Route& r1 = sol.routes[x];
            const Route& r2 = sol.routes[y];
            for (int a = 1; a + 1 < r1.length(); ++a) {
                int va = r1.seq[a];
                if (inst.is_station(va) && contains_vertex(r2, va)) continue;
                Route n1;
                n1.seq.reserve(r1.seq.size() - 1);
                for (int k = 0; k < r1.length(); ++k)
                    if (k != a) n1.seq.push_back(r1.seq[k]);
                for (int b = 0; b + 1 < r2.length(); ++b) {
                    Route n2 = r2;
                    n2.seq.insert(n2.seq.begin() + b + 1, va);
                    sc.consider(kRelocateInter, x, Route{n1}, y, std::move(n2),
                                {{r1.seq[a - 1], r1.seq[a + 1]}, {r2.seq[b], va}, {va, r2.seq[b + 1]}},
                                {{r1.seq[a - 1], va}, {va, r1.seq[a + 1]}, {r2.seq[b], r2.seq[b + 1]}});
                }
            }
        }
}

void scan_station_inre(MoveScanner& sc, const Solution& sol, const Instance& inst) {
    auto idx = scan_routes(sol);
    for (int r : idx) {
        const Route& rt = sol.routes[r];
        // removal
        for (int a = 1; a + 1 < rt.length(); ++a) {
            if (!inst.is_station(rt.seq[a])) continue;
            Route n;
            for (int k = 0; k < rt.length(); ++k)
                if (k != a) n.seq.push_back(rt.seq[k]);
            sc.consider(kStationInRe, r, std::move(n), -1, Route{},
                        {{rt.seq[a - 1], rt.seq[a + 1]}},
                        {{rt.seq[a - 1], rt.seq[a]}, {rt.seq[a], rt.seq[a + 1]}});
        }
        // insertion of any copy not already in this route
        for (int st = inst.first_station(); st < inst.first_station() + inst.num_station_copies(); ++st) {
            if (contains_vertex(rt, st)) continue;
            for (int pos = 1; pos < rt.length(); ++pos) {
                Route n = rt;
                n.seq.insert(n.seq.begin() + pos, st);
                sc.consider(kStationInRe, r, std::move(n), -1, Route{},
                            {{rt.seq[pos - 1], st}, {st, rt.seq[pos]}},
                            {{rt.seq[pos - 1], rt.seq[pos]}});
            }
        }
    }
}

}  // namespace

Solution tabu_search(const Solution& start, const std::vector<Scenario>& scenarios, const Instance& inst,
                     const SearchConfig& cfg, const CostWeights& w, TabuState& tabu, std::mt19937_64& rng,
                     double best_known_cost, std::vector<TabuMoveRecord>* trace) {
    CostCache cache(inst, scenarios);
    cache.set_solution(start);

    Solution best = start;
    double best_cost = cache.cost(w);
    bool best_feasible = cache.feasible();
    int best_vehicles = cache.vehicles();

    std::uniform_int_distribution<int> tenure(cfg.tabu_tenure_min, cfg.tabu_tenure_max);

    for (int iter = 0; iter < cfg.n_tabu; ++iter) {
        MoveScanner sc(inst, cache, w, tabu, std::min(best_known_cost, best_cost));
        scan_two_opt_star(sc, cache.solution(), inst);
        scan_exchange_intra(sc, cache.solution(), inst);
        scan_exchange_inter(sc, cache.solution(), inst);
        scan_relocate_intra(sc, cache.solution(), inst);
        scan_relocate_inter(sc, cache.solution(), inst);
        scan_station_inre(sc, cache.solution(), inst);

        tabu.decrement();
        if (!sc.best.valid) continue;  // fully blocked neighborhood

        TabuMoveRecord rec;
        rec.op = sc.best.op;
        rec.cost = sc.best.cost;
        rec.aspiration = sc.best.aspiration;
        rec.inserted = sc.best.inserted;
        rec.removed = sc.best.removed;
        for (long long e : sc.best.removed) {
            int ten = tenure(rng);
            tabu.add(sc.best.op, e, ten);
            rec.tenures.push_back(ten);
        }
        if (trace) trace->push_back(std::move(rec));
        cache.replace(sc.best.r1, sc.best.new1, sc.best.r2, sc.best.new2);

        double c = cache.cost(w);
        bool f = cache.feasible();
        int veh = cache.vehicles();
        bool better = (f && best_feasible) ? (veh < best_vehicles || (veh == best_vehicles && c < best_cost - kTol))
                                           : (f && !best_feasible) || (f == best_feasible && c < best_cost - kTol);
        if (better) {
            best = cache.solution();
            best_cost = c;
            best_feasible = f;
            best_vehicles = veh;
        }
    }
    return best;
}

}  // namespace arevrp
