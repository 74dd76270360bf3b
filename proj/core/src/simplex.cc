// Copyright 2026 The maxmin Authors.
//
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

#include "maxmin/simplex.h"

#include <stdexcept>

namespace maxmin {

LpSolution SolveLp(const LinearProgram& lp, double tol, int max_pivots) {
  const int rows = lp.num_rows;
  const int cols = lp.num_cols;
  const int width = cols + rows;  // structural columns, then slacks
  for (double v : lp.b) {
    if (v < 0) throw std::invalid_argument("SolveLp requires b >= 0");
  }

  std::vector<double> tab(static_cast<size_t>(rows) * width, 0.0);
  auto cell = [&](int r, int c) -> double& {
    return tab[static_cast<size_t>(r) * width + c];
  };
  std::vector<double> rhs = lp.b;
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) cell(r, c) = lp.a[static_cast<size_t>(r) * cols + c];
    cell(r, cols + r) = 1.0;
    basis[r] = cols + r;
  }
  // Reduced costs c_j - c_B B^-1 A_j; the slack basis has c_B = 0.
  std::vector<double> reduced(width, 0.0);
  for (int c = 0; c < cols; ++c) reduced[c] = lp.c[c];
  double objective = 0.0;

  LpSolution sol;
  while (true) {
    int enter = -1;
    for (int c = 0; c < width; ++c) {
      if (reduced[c] > tol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    if (sol.pivots >= max_pivots) {
      sol.status = LpSolution::Status::kPivotLimit;
      break;
    }
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < rows; ++r) {
      const double coef = cell(r, enter);
      if (coef <= tol) continue;
      const double ratio = rhs[r] / coef;
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio <= best_ratio + tol && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      sol.status = LpSolution::Status::kUnbounded;
      break;
    }
    const double pivot = cell(leave, enter);
    for (int c = 0; c < width; ++c) cell(leave, c) /= pivot;
    rhs[leave] /= pivot;
    for (int r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double factor = cell(r, enter);
      if (factor == 0.0) continue;
      for (int c = 0; c < width; ++c) cell(r, c) -= factor * cell(leave, c);
      rhs[r] -= factor * rhs[leave];
      if (rhs[r] < 0 && rhs[r] > -tol) rhs[r] = 0.0;
    }
    const double factor = reduced[enter];
    for (int c = 0; c < width; ++c) reduced[c] -= factor * cell(leave, c);
    objective += factor * rhs[leave];
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.objective = objective;
  sol.x.assign(cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < cols) sol.x[basis[r]] = rhs[r];
  }
  sol.duals.assign(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    const double y = -reduced[cols + r];
    sol.duals[r] = y > 0 ? y : 0.0;
  }
  return sol;
}

}  // namespace maxmin
