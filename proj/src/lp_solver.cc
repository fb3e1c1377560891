// Copyright 2026 The nfvplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfvplace/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfvplace/errors.h"

namespace nfvplace {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr std::size_t kDegenerateRunBeforeBland = 32;

// Row-major dense tableau. Column `cols()` holds the right-hand side; the
// objective row stores z_j - c_j, so a column may enter while its entry is
// negative.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        width_(cols + 1),
        cells_(rows * width_, 0.0),
        objective_(width_, 0.0),
        basis_(rows, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  double& obj(std::size_t c) { return objective_[c]; }
  double obj(std::size_t c) const { return objective_[c]; }
  double objective_value() const { return objective_[cols_]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }

  // Recomputes the objective row for per-column costs `cost`.
  void PriceOut(const std::vector<double>& cost) {
    for (std::size_t c = 0; c < width_; ++c) {
      objective_[c] = c < cols_ ? -cost[c] : 0.0;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &cells_[r * width_];
      for (std::size_t c = 0; c < width_; ++c) objective_[c] += cb * row[c];
    }
  }

  void Pivot(std::size_t pr, std::size_t pc) {
    double* prow = &cells_[pr * width_];
    const double inv = 1.0 / prow[pc];
    nonzero_.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (prow[c] != 0.0) {
        prow[c] *= inv;
        nonzero_.push_back(c);
      }
    }
    prow[pc] = 1.0;
    auto eliminate = [&](double* row) {
      const double factor = row[pc];
      if (factor == 0.0) return;
      for (std::size_t c : nonzero_) {
        double v = row[c] - factor * prow[c];
        if (std::abs(v) < kDropTol) v = 0.0;
        row[c] = v;
      }
      row[pc] = 0.0;
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != pr) eliminate(&cells_[r * width_]);
    }
    eliminate(objective_.data());
    basis_[pr] = pc;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> cells_;
  std::vector<double> objective_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

enum class Outcome { kOptimal, kUnbounded };

Outcome RunSimplex(Tableau& t, const std::vector<char>& may_enter,
                   const LpTolerances& tol, std::size_t max_iterations,
                   std::size_t& iterations) {
  std::size_t degenerate_run = 0;
  while (true) {
    if (iterations >= max_iterations) {
      throw NumericalFailure("simplex iteration limit reached");
    }
    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
    std::size_t entering = t.cols();
    double best = -kReducedCostTol;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!may_enter[c]) continue;
      const double d = t.obj(c);
      if (d < best) {
        entering = c;
        if (bland) break;
        best = d;
      }
    }
    if (entering == t.cols()) return Outcome::kOptimal;

    std::size_t leaving = t.rows();
    double min_ratio = std::numeric_limits<double>::infinity();
    bool tiny_pivot_seen = false;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      if (a <= 0.0) continue;
      if (a <= tol.pivot) {
        tiny_pivot_seen = true;
        continue;
      }
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      const double slack = 1e-12 * (1.0 + std::abs(min_ratio));
      if (leaving == t.rows() || ratio < min_ratio - slack) {
        leaving = r;
        min_ratio = ratio;
      } else if (ratio <= min_ratio + slack) {
        // Ties: Bland needs the smallest basic index; otherwise the largest
        // pivot is the stabler choice.
        const double current = t.at(leaving, entering);
        const bool take = bland ? t.basis(r) < t.basis(leaving)
                                : (a > current ||
                                   (a == current && t.basis(r) < t.basis(leaving)));
        if (take) {
          leaving = r;
          min_ratio = std::min(min_ratio, ratio);
        }
      }
    }
    if (leaving == t.rows()) {
      if (tiny_pivot_seen) {
        throw NumericalFailure("only sub-tolerance pivots in entering column " +
                               std::to_string(entering));
      }
      return Outcome::kUnbounded;
    }
    degenerate_run = min_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    t.Pivot(leaving, entering);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.rhs(r) < 0.0 && t.rhs(r) > -1e-8) t.rhs(r) = 0.0;
    }
    ++iterations;
  }
}

// Solves B x = b for the basis of `t`, reading B and b from the tableau as
// it was before any pivot. Gaussian elimination with partial pivoting;
// empty when B is numerically singular.
std::vector<double> BasicSolution(const Tableau& original, const Tableau& t) {
  const std::size_t m = t.rows();
  const std::size_t w = m + 1;
  std::vector<double> a(m * w);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < m; ++r) a[i * w + r] = original.at(i, t.basis(r));
    a[i * w + m] = original.rhs(i);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < m; ++i) {
      if (std::abs(a[i * w + c]) > std::abs(a[p * w + c])) p = i;
    }
    if (std::abs(a[p * w + c]) < kDropTol) return {};
    if (p != c) {
      std::swap_ranges(a.begin() + p * w, a.begin() + (p + 1) * w,
                       a.begin() + c * w);
    }
    const double inv = 1.0 / a[c * w + c];
    for (std::size_t i = c + 1; i < m; ++i) {
      const double f = a[i * w + c] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = c; j < w; ++j) a[i * w + j] -= f * a[c * w + j];
    }
  }
  std::vector<double> x(m);
  for (std::size_t c = m; c-- > 0;) {
    double v = a[c * w + m];
    for (std::size_t j = c + 1; j < m; ++j) v -= a[c * w + j] * x[j];
    x[c] = v / a[c * w + c];
  }
  return x;
}

double Dot(const std::vector<double>& a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace

void LinearProgram::Validate() const {
  if (objective.size() != num_vars) {
    throw std::invalid_argument("objective length differs from num_vars");
  }
  if (!bounds.empty() && bounds.size() != num_vars) {
    throw std::invalid_argument("bounds length differs from num_vars");
  }
  auto check_rows = [&](const std::vector<LinearConstraint>& rows) {
    for (const LinearConstraint& row : rows) {
      if (row.coeffs.size() != num_vars) {
        throw std::invalid_argument("constraint length differs from num_vars");
      }
      if (!std::isfinite(row.rhs)) {
        throw std::invalid_argument("constraint rhs must be finite");
      }
    }
  };
  check_rows(leq_constraints);
  check_rows(eq_constraints);
  for (const VariableBounds& b : bounds) {
    if (!(b.lower >= 0.0) || !std::isfinite(b.lower)) {
      throw std::invalid_argument("lower bounds must be finite and >= 0");
    }
    if (b.upper && !(*b.upper >= b.lower)) {
      throw std::invalid_argument("upper bound below lower bound");
    }
  }
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

LpSolution Solve(const LinearProgram& lp, const LpTolerances& tol) {
  lp.Validate();
  const std::size_t n = lp.num_vars;
  std::vector<double> lower(n, 0.0);
  std::vector<std::optional<double>> upper(n);
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    lower[j] = lp.bounds[j].lower;
    upper[j] = lp.bounds[j].upper;
  }

  // Normalized rows over shifted variables x' = x - l >= 0.
  struct Row {
    const std::vector<double>* coeffs;  // null for an upper-bound row
    std::size_t bound_var = 0;
    double rhs;
    bool equality;
    bool flipped;
    double scale;  // rows are divided by their largest coefficient
  };
  auto row_scale = [](const std::vector<double>& coeffs) {
    double largest = 0.0;
    for (double a : coeffs) largest = std::max(largest, std::abs(a));
    return largest > 0.0 ? 1.0 / largest : 1.0;
  };
  std::vector<Row> rows;
  for (const LinearConstraint& c : lp.leq_constraints) {
    rows.push_back({&c.coeffs, 0, c.rhs - Dot(c.coeffs, lower), false, false,
                    row_scale(c.coeffs)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!upper[j]) continue;
    rows.push_back({nullptr, j, *upper[j] - lower[j], false, false, 1.0});
  }
  const std::size_t first_eq = rows.size();
  for (const LinearConstraint& c : lp.eq_constraints) {
    rows.push_back({&c.coeffs, 0, c.rhs - Dot(c.coeffs, lower), true, false,
                    row_scale(c.coeffs)});
  }
  for (Row& row : rows) row.flipped = row.rhs < 0.0;

  const std::size_t m = rows.size();
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const Row& row : rows) {
    if (!row.equality) ++num_slack;
    if (row.equality || row.flipped) ++num_art;
  }
  const std::size_t slack0 = n;
  const std::size_t art0 = n + num_slack;
  const std::size_t cols = art0 + num_art;

  Tableau t(m, cols);
  std::vector<std::size_t> identity_col(m);
  double rhs_scale = 1.0;
  {
    std::size_t next_slack = slack0;
    std::size_t next_art = art0;
    for (std::size_t i = 0; i < m; ++i) {
      const Row& row = rows[i];
      const double sign = row.flipped ? -1.0 : 1.0;
      const double factor = sign * row.scale;
      if (row.coeffs) {
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = factor * (*row.coeffs)[j];
      } else {
        t.at(i, row.bound_var) = factor;
      }
      t.rhs(i) = factor * row.rhs;
      rhs_scale = std::max(rhs_scale, std::abs(t.rhs(i)));
      if (!row.equality) {
        t.at(i, next_slack) = sign;
        if (!row.flipped) identity_col[i] = next_slack;
        ++next_slack;
      }
      if (row.equality || row.flipped) {
        t.at(i, next_art) = 1.0;
        identity_col[i] = next_art++;
      }
      t.basis(i) = identity_col[i];
    }
  }

  const Tableau original = t;
  LpSolution solution;
  const std::size_t max_iterations = 100 * (m + cols) + 1000;
  std::vector<char> may_enter(cols, 1);
  for (std::size_t c = art0; c < cols; ++c) may_enter[c] = 0;

  if (num_art > 0) {
    std::vector<double> phase1_cost(cols, 0.0);
    for (std::size_t c = art0; c < cols; ++c) phase1_cost[c] = -1.0;
    t.PriceOut(phase1_cost);
    RunSimplex(t, may_enter, tol, max_iterations, solution.iterations);
    if (t.objective_value() < -tol.feasibility * rhs_scale) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    // Move zero-level artificials out of the basis where possible; rows
    // without a usable pivot are redundant and keep their artificial at 0.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis(r) < art0) continue;
      std::size_t best_col = cols;
      double best_abs = tol.pivot;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > best_abs) {
          best_abs = std::abs(t.at(r, c));
          best_col = c;
        }
      }
      if (best_col != cols) t.Pivot(r, best_col);
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  t.PriceOut(cost);
  if (RunSimplex(t, may_enter, tol, max_iterations, solution.iterations) ==
      Outcome::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  // Basic values recomputed from the original rows shed the round-off
  // that pivoting accumulates in the tableau.
  std::vector<double> basic = BasicSolution(original, t);
  if (basic.empty()) {
    basic.resize(m);
    for (std::size_t r = 0; r < m; ++r) basic[r] = t.rhs(r);
  }
  solution.values = lower;
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < n) solution.values[t.basis(r)] += basic[r];
  }
  for (std::size_t j = 0; j < n; ++j) {
    double& x = solution.values[j];
    const double slack = tol.feasibility * std::max(1.0, std::abs(x));
    if (x < lower[j] && x > lower[j] - slack) x = lower[j];
    if (upper[j] && x > *upper[j] && x < *upper[j] + slack) x = *upper[j];
  }
  solution.objective_value = Dot(lp.objective, solution.values);

  solution.leq_duals.assign(lp.leq_constraints.size(), 0.0);
  solution.eq_duals.assign(lp.eq_constraints.size(), 0.0);
  solution.upper_duals.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double y =
        (rows[i].flipped ? -1.0 : 1.0) * rows[i].scale * t.obj(identity_col[i]);
    if (i < lp.leq_constraints.size()) {
      solution.leq_duals[i] = y;
    } else if (i < first_eq) {
      solution.upper_duals[rows[i].bound_var] = y;
    } else {
      solution.eq_duals[i - first_eq] = y;
    }
  }

  // Independent feasibility check against the original data.
  auto violated = [&](double lhs, double rhs, bool equality) {
    const double slack = tol.feasibility * std::max(1.0, std::abs(rhs));
    return equality ? std::abs(lhs - rhs) > slack : lhs > rhs + slack;
  };
  for (const LinearConstraint& c : lp.leq_constraints) {
    if (violated(Dot(c.coeffs, solution.values), c.rhs, false)) {
      throw NumericalFailure("solution violates an inequality row");
    }
  }
  for (const LinearConstraint& c : lp.eq_constraints) {
    if (violated(Dot(c.coeffs, solution.values), c.rhs, true)) {
      throw NumericalFailure("solution violates an equality row");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double x = solution.values[j];
    if (violated(lower[j], x, false) || (upper[j] && violated(x, *upper[j], false))) {
      throw NumericalFailure("solution violates a bound of variable " +
                             std::to_string(j) + " (value " + std::to_string(x * 1e9) + "e-9" +
                             ")");
    }
  }
  return solution;
}

}  // namespace nfvplace
