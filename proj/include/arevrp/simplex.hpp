#pragma once

#include <vector>

namespace arevrp {

// Dense bounded-variable linear program:
//   maximize c^T x   s.t.   A x <= b,   lower <= x <= upper
// Infinite bounds are allowed. Rows are <= only; callers negate >= rows.
struct LpProblem {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;

    explicit LpProblem(int n = 0);
    void add_row(const std::vector<double>& coeffs, double b);
    // sparse convenience: pairs of (var index, coefficient)
    void add_row_sparse(const std::vector<std::pair<int, double>>& coeffs, double b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;
    int pivots = 0;
};

// Two-phase primal simplex on the full tableau with bound flips. Switches to
// Bland's rule after 500 pivots without objective progress. Throws
// std::runtime_error if the pivot cap is exceeded.
LpResult solve_lp(const LpProblem& lp);

}  // namespace arevrp
