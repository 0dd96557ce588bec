#include "arevrp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arevrp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kStallLimit = 500;  // pivots without progress before Bland's rule
}

LpProblem::LpProblem(int n) : num_vars(n), objective(n, 0.0), lower(n, -kInf), upper(n, kInf) {}

void LpProblem::add_row(const std::vector<double>& coeffs, double b) {
    rows.push_back(coeffs);
    rows.back().resize(num_vars, 0.0);
    rhs.push_back(b);
}

void LpProblem::add_row_sparse(const std::vector<std::pair<int, double>>& coeffs, double b) {
    std::vector<double> row(num_vars, 0.0);
    for (auto [j, c] : coeffs) row[j] += c;
    rows.push_back(std::move(row));
    rhs.push_back(b);
}

namespace {

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Full-tableau bounded-variable primal simplex. Columns are structural
// variables, one slack per row, then artificials appended by phase 1. The
// tableau is kept in current-basis form (basic columns are unit vectors), so
// basic values can always be recomputed from beta and the nonbasic bounds.
class Tableau {
public:
    explicit Tableau(const LpProblem& lp) : m_(static_cast<int>(lp.rows.size())), nstruct_(lp.num_vars) {
        ncols_ = nstruct_ + m_;
        T_.assign(m_, std::vector<double>(ncols_, 0.0));
        beta_.assign(m_, 0.0);
        lo_.assign(ncols_, 0.0);
        up_.assign(ncols_, kInf);
        state_.assign(ncols_, VarState::AtLower);
        for (int j = 0; j < nstruct_; ++j) {
            lo_[j] = lp.lower[j];
            up_[j] = lp.upper[j];
            if (std::isfinite(lo_[j])) state_[j] = VarState::AtLower;
            else if (std::isfinite(up_[j])) state_[j] = VarState::AtUpper;
            else state_[j] = VarState::FreeZero;
        }
        for (int r = 0; r < m_; ++r) {
            for (int j = 0; j < nstruct_; ++j) T_[r][j] = lp.rows[r][j];
            T_[r][nstruct_ + r] = 1.0;
            beta_[r] = lp.rhs[r];
        }
        basis_.resize(m_);
        for (int r = 0; r < m_; ++r) {
            basis_[r] = nstruct_ + r;
            state_[nstruct_ + r] = VarState::Basic;
        }
        compute_basic_values();
    }

    // adds artificials where the slack start violates its bound; returns
    // whether a phase-1 run is needed
    bool setup_phase1() {
        bool need = false;
        for (int r = 0; r < m_; ++r) {
            if (xb_[r] >= -kFeasTol) continue;
            need = true;
            // flip the row so the incoming artificial is a unit column
            for (int j = 0; j < ncols_; ++j) T_[r][j] = -T_[r][j];
            beta_[r] = -beta_[r];
            int aj = ncols_++;
            lo_.push_back(0.0);
            up_.push_back(kInf);
            state_.push_back(VarState::Basic);
            for (int rr = 0; rr < m_; ++rr) T_[rr].push_back(rr == r ? 1.0 : 0.0);
            state_[basis_[r]] = VarState::AtLower;  // the slack, at 0
            basis_[r] = aj;
            if (artificial_from_ > aj) artificial_from_ = aj;
        }
        if (need) compute_basic_values();
        return need;
    }

    bool is_artificial(int j) const { return j >= artificial_from_; }

    LpStatus optimize(const std::vector<double>& cost, int& pivots) {
        int stall = 0;
        double last_obj = objective_value(cost);
        const int pivot_cap = 20000 + 200 * (m_ + ncols_);
        while (true) {
            std::vector<double> d = reduced_costs(cost);
            bool bland = stall >= kStallLimit;
            auto [enter, dir] = pick_entering(d, bland);
            if (enter < 0) return LpStatus::Optimal;

            double tmax = up_[enter] - lo_[enter];  // bound-flip distance
            int leave_row = -1;
            bool leave_to_upper = false;
            for (int r = 0; r < m_; ++r) {
                double a = dir * T_[r][enter];
                int b = basis_[r];
                double t;
                bool to_upper;
                if (a > kPivotTol) {  // basic decreases toward its lower bound
                    if (!std::isfinite(lo_[b])) continue;
                    t = (xb_[r] - lo_[b]) / a;
                    to_upper = false;
                } else if (a < -kPivotTol) {  // basic increases toward its upper bound
                    if (!std::isfinite(up_[b])) continue;
                    t = (up_[b] - xb_[r]) / (-a);
                    to_upper = true;
                } else {
                    continue;
                }
                t = std::max(0.0, t);
                if (t < tmax - kPivotTol || (leave_row < 0 && t < tmax)) {
                    tmax = t;
                    leave_row = r;
                    leave_to_upper = to_upper;
                } else if (bland && leave_row >= 0 && std::fabs(t - tmax) <= kPivotTol &&
                           basis_[r] < basis_[leave_row]) {
                    leave_row = r;
                    leave_to_upper = to_upper;
                }
            }
            if (!std::isfinite(tmax)) return LpStatus::Unbounded;

            if (leave_row < 0) {
                flip_bound(enter);
            } else {
                pivot(leave_row, enter, leave_to_upper, dir, tmax);
            }
            if (++pivots > pivot_cap) throw std::runtime_error("simplex: pivot cap exceeded");
            double obj = objective_value(cost);
            if (obj > last_obj + kCostTol) {
                stall = 0;
                last_obj = obj;
            } else {
                ++stall;
            }
        }
    }

    double objective_value(const std::vector<double>& cost) const {
        double v = 0.0;
        for (int j = 0; j < ncols_ && j < static_cast<int>(cost.size()); ++j)
            if (cost[j] != 0.0 && state_[j] != VarState::Basic) v += cost[j] * nonbasic_value(j);
        for (int r = 0; r < m_; ++r) {
            int b = basis_[r];
            if (b < static_cast<int>(cost.size()) && cost[b] != 0.0) v += cost[b] * xb_[r];
        }
        return v;
    }

    std::vector<double> values() const {
        std::vector<double> v(ncols_, 0.0);
        for (int j = 0; j < ncols_; ++j)
            if (state_[j] != VarState::Basic) v[j] = nonbasic_value(j);
        for (int r = 0; r < m_; ++r) v[basis_[r]] = xb_[r];
        return v;
    }

    // after phase 1: pivot artificials out where possible, then pin all of
    // them at zero; rows whose artificial stays basic at zero are redundant
    void retire_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (!is_artificial(basis_[r])) continue;
            for (int j = 0; j < artificial_from_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (std::fabs(T_[r][j]) > 1e-7) {
                    pivot(r, j, false, +1, 0.0);
                    break;
                }
            }
        }
        for (int j = artificial_from_; j < ncols_; ++j) {
            lo_[j] = 0.0;
            up_[j] = 0.0;
            if (state_[j] != VarState::Basic) state_[j] = VarState::AtLower;
        }
        compute_basic_values();
    }

    int ncols() const { return ncols_; }

private:
    double nonbasic_value(int j) const {
        switch (state_[j]) {
            case VarState::AtLower: return lo_[j];
            case VarState::AtUpper: return up_[j];
            default: return 0.0;
        }
    }

    void compute_basic_values() {
        xb_.assign(m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            double v = beta_[r];
            for (int j = 0; j < ncols_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                double val = nonbasic_value(j);
                if (val != 0.0) v -= T_[r][j] * val;
            }
            xb_[r] = v;
        }
    }

    std::vector<double> reduced_costs(const std::vector<double>& cost) const {
        std::vector<double> d(ncols_, 0.0);
        for (int j = 0; j < ncols_ && j < static_cast<int>(cost.size()); ++j) d[j] = cost[j];
        for (int r = 0; r < m_; ++r) {
            int b = basis_[r];
            double cb = b < static_cast<int>(cost.size()) ? cost[b] : 0.0;
            if (cb == 0.0) continue;
            for (int j = 0; j < ncols_; ++j) d[j] -= cb * T_[r][j];
        }
        for (int r = 0; r < m_; ++r) d[basis_[r]] = 0.0;
        return d;
    }

    std::pair<int, int> pick_entering(const std::vector<double>& d, bool bland) const {
        int best = -1, best_dir = +1;
        double best_score = kCostTol;
        for (int j = 0; j < ncols_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            if (up_[j] - lo_[j] <= 0.0) continue;  // fixed
            double score = 0.0;
            int dir = +1;
            if (state_[j] == VarState::AtUpper) {
                if (d[j] < -kCostTol) {
                    score = -d[j];
                    dir = -1;
                }
            } else if (state_[j] == VarState::AtLower) {
                if (d[j] > kCostTol) score = d[j];
            } else {  // free at zero: either direction improves
                if (d[j] > kCostTol) score = d[j];
                else if (d[j] < -kCostTol) {
                    score = -d[j];
                    dir = -1;
                }
            }
            if (score <= 0.0) continue;
            if (bland) return {j, dir};
            if (score > best_score) {
                best_score = score;
                best = j;
                best_dir = dir;
            }
        }
        return {best, best_dir};
    }

    void flip_bound(int j) {
        double delta;
        if (state_[j] == VarState::AtLower) {
            delta = up_[j] - lo_[j];
            state_[j] = VarState::AtUpper;
        } else {
            delta = lo_[j] - up_[j];
            state_[j] = VarState::AtLower;
        }
        for (int r = 0; r < m_; ++r) xb_[r] -= T_[r][j] * delta;
    }

    void pivot(int r, int enter, bool leave_to_upper, int, double) {
        int leave = basis_[r];
        double piv = T_[r][enter];
        for (int j = 0; j < ncols_; ++j) T_[r][j] /= piv;
        beta_[r] /= piv;
        for (int rr = 0; rr < m_; ++rr) {
            if (rr == r) continue;
            double f = T_[rr][enter];
            if (f == 0.0) continue;
            for (int j = 0; j < ncols_; ++j) T_[rr][j] -= f * T_[r][j];
            beta_[rr] -= f * beta_[r];
        }
        basis_[r] = enter;
        state_[enter] = VarState::Basic;
        if (std::isfinite(lo_[leave]) || std::isfinite(up_[leave]))
            state_[leave] = leave_to_upper && std::isfinite(up_[leave]) ? VarState::AtUpper : VarState::AtLower;
        else
            state_[leave] = VarState::FreeZero;
        compute_basic_values();
    }

    int m_;
    int nstruct_;
    int ncols_;
    std::vector<std::vector<double>> T_;
    std::vector<double> beta_;
    std::vector<double> xb_;
    std::vector<double> lo_, up_;
    std::vector<VarState> state_;
    std::vector<int> basis_;
    int artificial_from_ = std::numeric_limits<int>::max();
};

}  // namespace

LpResult solve_lp(const LpProblem& lp) {
    LpResult res;
    for (int j = 0; j < lp.num_vars; ++j)
        if (lp.lower[j] > lp.upper[j] + 1e-12) {
            res.status = LpStatus::Infeasible;
            return res;
        }

    Tableau tab(lp);
    if (tab.setup_phase1()) {
        std::vector<double> phase1_cost(tab.ncols(), 0.0);
        for (int j = 0; j < tab.ncols(); ++j)
            if (tab.is_artificial(j)) phase1_cost[j] = -1.0;
        tab.optimize(phase1_cost, res.pivots);
        if (tab.objective_value(phase1_cost) < -kFeasTol) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        tab.retire_artificials();
    }

    std::vector<double> cost(tab.ncols(), 0.0);
    for (int j = 0; j < lp.num_vars; ++j) cost[j] = lp.objective[j];
    LpStatus st = tab.optimize(cost, res.pivots);
    if (st == LpStatus::Unbounded) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    auto vals = tab.values();
    res.x.assign(vals.begin(), vals.begin() + lp.num_vars);
    res.objective = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) res.objective += lp.objective[j] * res.x[j];
    return res;
}

}  // namespace arevrp
