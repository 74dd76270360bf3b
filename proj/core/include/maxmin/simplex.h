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

#ifndef MAXMIN_SIMPLEX_H_
#define MAXMIN_SIMPLEX_H_

#include <vector>

namespace maxmin {

// maximize c'x  subject to  A x <= b, x >= 0, with b >= 0 so that the slack
// basis is feasible. Dense tableau, Bland's rule.
struct LinearProgram {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<double> a;  // row-major, num_rows x num_cols
  std::vector<double> b;
  std::vector<double> c;

  double& at(int row, int col) { return a[static_cast<size_t>(row) * num_cols + col]; }
};

struct LpSolution {
  enum class Status { kOptimal, kUnbounded, kPivotLimit };
  Status status = Status::kOptimal;
  double objective = 0.0;
  std::vector<double> x;      // primal values of the structural columns
  std::vector<double> duals;  // one non-negative price per row
  int pivots = 0;
};

LpSolution SolveLp(const LinearProgram& lp, double tol = 1e-9,
                   int max_pivots = 100000);

}  // namespace maxmin

#endif  // MAXMIN_SIMPLEX_H_
