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

// Dense two-phase tableau simplex for small linear programs.
//
//   maximize    c'x
//   subject to  A x <= b      (leq rows)
//               E x  = d      (eq rows)
//               l <= x <= u   (l >= 0, u optional)
//
// Pricing uses Dantzig's rule and falls back to Bland's rule after a run of
// degenerate pivots; the fallback lasts until the objective moves again, so
// the method cannot cycle. Every tie is broken by the smallest index, which
// makes a solve a deterministic function of its input.

#ifndef NFVPLACE_LP_SOLVER_H_
#define NFVPLACE_LP_SOLVER_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace nfvplace {

struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

struct VariableBounds {
  double lower = 0.0;
  std::optional<double> upper;
};

struct LinearProgram {
  LinearProgram() = default;
  explicit LinearProgram(std::size_t n)
      : num_vars(n), objective(n, 0.0), bounds(n) {}

  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> leq_constraints;
  std::vector<LinearConstraint> eq_constraints;
  std::vector<VariableBounds> bounds;

  void AddLeq(std::vector<double> coeffs, double rhs) {
    leq_constraints.push_back({std::move(coeffs), rhs});
  }
  void AddEq(std::vector<double> coeffs, double rhs) {
    eq_constraints.push_back({std::move(coeffs), rhs});
  }

  // Throws std::invalid_argument when sizes or bounds are inconsistent.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;

  // Dual certificate read from the final tableau (Optimal only). With
  // s_j = (A'y + E'z + w - c)_j >= 0 the dual objective
  //   b'y + d'z + u'w - l's
  // equals objective_value.
  std::vector<double> leq_duals;    // y >= 0
  std::vector<double> eq_duals;     // z free
  std::vector<double> upper_duals;  // w >= 0, zero for unbounded variables

  std::size_t iterations = 0;
};

struct LpTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-6;
  double pivot = 1e-9;
};

// Throws NumericalFailure when no acceptable pivot exists, the iteration
// limit is hit, or the final point violates a constraint by more than the
// feasibility tolerance.
LpSolution Solve(const LinearProgram& lp, const LpTolerances& tol = {});

}  // namespace nfvplace

#endif  // NFVPLACE_LP_SOLVER_H_
