// Copyright 2026 The Surrogate Compiler Authors
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

#include "surrogate/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace surrogate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;
constexpr double kSingularPivot = 1e-11;

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), m_(lp.rows.size()), n_(lp.num_vars()) {
    Setup(lp);
  }

  LpResult Run();

 private:
  enum class Outcome { kOptimal, kUnbounded, kIterationLimit, kSingular };

  double& T(std::size_t i, std::size_t j) { return tab_[i * ncols_ + j]; }
  double A(std::size_t i, std::size_t j) const { return a_[i * ncols_ + j]; }

  void Setup(const LinearProgram& lp);
  bool Reinvert();
  void ComputeReducedCosts();
  Outcome Iterate(bool phase_two);
  bool ChooseEntering(std::size_t& q, int& dir) const;
  void Pivot(std::size_t r, std::size_t q);
  void DriveOutArtificials();
  double PrimalViolation() const;
  LpResult Finish(SolveStatus status, const std::string& message);

  const SimplexOptions& options_;
  std::size_t m_;
  std::size_t n_;
  std::size_t ncols_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> phase2_cost_;
  std::vector<double> cost_;
  std::vector<double> unit_sign_;       // per row: coefficient of its unit column
  std::vector<std::size_t> unit_col_;   // per row: slack or artificial column
  std::vector<bool> artificial_;
  std::vector<double> tab_;
  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<std::size_t> basis_;
  std::vector<long> where_;
  std::int64_t iterations_ = 0;
  std::int64_t max_iterations_ = 0;
  int degenerate_run_ = 0;
  int since_refactor_ = 0;
  bool bland_ = false;
  bool used_bland_ = false;
  double objective_offset_ = 0.0;
};

void DenseSimplex::Setup(const LinearProgram& lp) {
  objective_offset_ = lp.cost_offset;
  // Structural columns first, then one slack per inequality row.
  std::vector<long> slack_of(m_, -1);
  std::size_t cols = n_;
  for (std::size_t i = 0; i < m_; ++i) {
    if (lp.rows[i].sense != RowSense::kEq) slack_of[i] = static_cast<long>(cols++);
  }
  lb_.assign(lp.lb.begin(), lp.lb.end());
  ub_.assign(lp.ub.begin(), lp.ub.end());
  lb_.resize(cols, 0.0);
  ub_.resize(cols, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (slack_of[i] < 0) continue;
    const auto s = static_cast<std::size_t>(slack_of[i]);
    if (lp.rows[i].sense == RowSense::kLe) {
      lb_[s] = 0.0;
      ub_[s] = kInf;
    } else {
      lb_[s] = -kInf;
      ub_[s] = 0.0;
    }
  }
  x_.assign(cols, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (std::isfinite(lb_[j])) {
      x_[j] = lb_[j];
    } else if (std::isfinite(ub_[j])) {
      x_[j] = ub_[j];
    }
  }
  // Residual each row's unit column must absorb.
  b_.resize(m_);
  std::vector<double> residual(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    b_[i] = lp.rows[i].rhs;
    double r = lp.rows[i].rhs;
    for (const auto& [j, coef] : lp.rows[i].terms) r -= coef * x_[j];
    residual[i] = r;
  }
  unit_col_.resize(m_);
  unit_sign_.assign(m_, 1.0);
  std::vector<bool> needs_artificial(m_, false);
  for (std::size_t i = 0; i < m_; ++i) {
    const double r = residual[i];
    if (slack_of[i] >= 0) {
      const auto s = static_cast<std::size_t>(slack_of[i]);
      if (r >= lb_[s] && r <= ub_[s]) {
        unit_col_[i] = s;
        continue;
      }
    }
    needs_artificial[i] = true;
  }
  artificial_.assign(cols, false);
  for (std::size_t i = 0; i < m_; ++i) {
    if (!needs_artificial[i]) continue;
    unit_col_[i] = cols++;
    unit_sign_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
    lb_.push_back(0.0);
    ub_.push_back(kInf);
    x_.push_back(0.0);
    artificial_.push_back(true);
  }
  ncols_ = cols;

  a_.assign(m_ * ncols_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const auto& [j, coef] : lp.rows[i].terms) a_[i * ncols_ + j] += coef;
    if (slack_of[i] >= 0) a_[i * ncols_ + static_cast<std::size_t>(slack_of[i])] = 1.0;
    if (needs_artificial[i]) a_[i * ncols_ + unit_col_[i]] = unit_sign_[i];
  }

  basis_.resize(m_);
  where_.assign(ncols_, -1);
  tab_.assign(m_ * ncols_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t u = unit_col_[i];
    basis_[i] = u;
    where_[u] = static_cast<long>(i);
    x_[u] = residual[i] / unit_sign_[i];
    const double inv = 1.0 / unit_sign_[i];
    for (std::size_t j = 0; j < ncols_; ++j) T(i, j) = A(i, j) * inv;
  }

  phase2_cost_.assign(ncols_, 0.0);
  std::copy(lp.cost.begin(), lp.cost.end(), phase2_cost_.begin());
  max_iterations_ = options_.max_iterations > 0
                        ? options_.max_iterations
                        : 10000 + 50 * static_cast<std::int64_t>(m_ + ncols_);
}

bool DenseSimplex::Reinvert() {
  // Gauss-Jordan on [A | rhs] pivoting on the basic columns.
  const std::size_t w = ncols_ + 1;
  std::vector<double> mat(m_ * w);
  for (std::size_t i = 0; i < m_; ++i) {
    double rhs = b_[i];
    for (std::size_t j = 0; j < ncols_; ++j) {
      mat[i * w + j] = A(i, j);
      if (where_[j] < 0 && x_[j] != 0.0) rhs -= A(i, j) * x_[j];
    }
    mat[i * w + ncols_] = rhs;
  }
  std::vector<std::size_t> cols = basis_;
  std::vector<std::size_t> new_basis(m_);
  std::vector<bool> used(m_, false);
  for (std::size_t k = 0; k < m_; ++k) {
    const std::size_t q = cols[k];
    std::size_t best = m_;
    double best_abs = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (used[i]) continue;
      const double v = std::abs(mat[i * w + q]);
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best == m_ || best_abs < kSingularPivot) return false;
    used[best] = true;
    new_basis[best] = q;
    double* prow = &mat[best * w];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == best) continue;
      double* row = &mat[i * w];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
  }
  basis_ = new_basis;
  std::fill(where_.begin(), where_.end(), -1);
  for (std::size_t i = 0; i < m_; ++i) {
    where_[basis_[i]] = static_cast<long>(i);
    for (std::size_t j = 0; j < ncols_; ++j) T(i, j) = mat[i * w + j];
    x_[basis_[i]] = mat[i * w + ncols_];
  }
  since_refactor_ = 0;
  return true;
}

void DenseSimplex::ComputeReducedCosts() {
  d_ = cost_;
  for (std::size_t i = 0; i < m_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= cb * T(i, j);
  }
  for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
}

bool DenseSimplex::ChooseEntering(std::size_t& q, int& dir) const {
  double best = 0.0;
  bool found = false;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (where_[j] >= 0) continue;
    const double dj = d_[j];
    int candidate_dir = 0;
    if (dj < -options_.optimality_tolerance && x_[j] < ub_[j]) {
      candidate_dir = 1;
    } else if (dj > options_.optimality_tolerance && x_[j] > lb_[j]) {
      candidate_dir = -1;
    }
    if (candidate_dir == 0) continue;
    if (bland_) {
      q = j;
      dir = candidate_dir;
      return true;
    }
    if (std::abs(dj) > best) {
      best = std::abs(dj);
      q = j;
      dir = candidate_dir;
      found = true;
    }
  }
  return found;
}

void DenseSimplex::Pivot(std::size_t r, std::size_t q) {
  double* prow = &tab_[r * ncols_];
  const double inv = 1.0 / prow[q];
  for (std::size_t j = 0; j < ncols_; ++j) prow[j] *= inv;
  prow[q] = 1.0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[i * ncols_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
    row[q] = 0.0;
  }
  const double f = d_[q];
  if (f != 0.0) {
    for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= f * prow[j];
  }
  d_[q] = 0.0;
  where_[basis_[r]] = -1;
  basis_[r] = q;
  where_[q] = static_cast<long>(r);
  ++since_refactor_;
}

DenseSimplex::Outcome DenseSimplex::Iterate(bool phase_two) {
  while (true) {
    if (iterations_ >= max_iterations_) return Outcome::kIterationLimit;
    if (since_refactor_ >= options_.refactor_every) {
      if (!Reinvert()) return Outcome::kSingular;
      ComputeReducedCosts();
    }
    std::size_t q = 0;
    int dir = 0;
    if (!ChooseEntering(q, dir)) return Outcome::kOptimal;

    double best_t = kInf;
    std::size_t best_r = m_;
    double best_alpha = 0.0;
    bool leaves_at_upper = false;
    for (std::size_t i = 0; i < m_; ++i) {
      const double alpha = T(i, q);
      if (std::abs(alpha) <= options_.pivot_tolerance) continue;
      const std::size_t jb = basis_[i];
      const double rate = -dir * alpha;
      double t;
      bool upper;
      if (rate < 0.0) {
        if (!std::isfinite(lb_[jb])) continue;
        t = (x_[jb] - lb_[jb]) / -rate;
        upper = false;
      } else {
        if (!std::isfinite(ub_[jb])) continue;
        t = (ub_[jb] - x_[jb]) / rate;
        upper = true;
      }
      if (t < 0.0) t = 0.0;
      bool take = false;
      if (t < best_t - kTieTolerance) {
        take = true;
      } else if (best_r < m_ && std::abs(t - best_t) <= kTieTolerance) {
        take = bland_ ? jb < basis_[best_r]
                      : std::abs(alpha) > std::abs(best_alpha);
      }
      if (take) {
        best_t = t;
        best_r = i;
        best_alpha = alpha;
        leaves_at_upper = upper;
      }
    }
    const double flip_t = ub_[q] - lb_[q];
    const bool flip = flip_t <= best_t;
    if (!flip && best_r == m_) {
      if (phase_two) return Outcome::kUnbounded;
      // Phase 1 is bounded below by zero; a missing pivot is round-off.
      return Outcome::kSingular;
    }
    const double t = flip ? flip_t : best_t;
    if (!std::isfinite(t)) return Outcome::kUnbounded;

    if (t != 0.0) {
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = T(i, q);
        if (alpha != 0.0) x_[basis_[i]] -= dir * t * alpha;
      }
    }
    if (flip) {
      x_[q] = dir > 0 ? ub_[q] : lb_[q];
    } else {
      x_[q] += dir * t;
      const std::size_t leaving = basis_[best_r];
      Pivot(best_r, q);
      x_[leaving] = leaves_at_upper ? ub_[leaving] : lb_[leaving];
    }
    ++iterations_;
    if (t <= kTieTolerance) {
      if (++degenerate_run_ >= options_.bland_after_degenerate) {
        bland_ = true;
        used_bland_ = true;
      }
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
  }
}

void DenseSimplex::DriveOutArtificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (!artificial_[basis_[r]]) continue;
    std::size_t best = ncols_;
    double best_abs = 1e-7;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (where_[j] >= 0 || artificial_[j]) continue;
      if (std::abs(T(r, j)) > best_abs) {
        best_abs = std::abs(T(r, j));
        best = j;
      }
    }
    // No candidate means the row is redundant; the artificial stays basic,
    // pinned to zero by its bounds.
    if (best < ncols_) Pivot(r, best);
  }
}

double DenseSimplex::PrimalViolation() const {
  double v = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j = basis_[i];
    v = std::max(v, lb_[j] - x_[j]);
    v = std::max(v, x_[j] - ub_[j]);
  }
  return v;
}

LpResult DenseSimplex::Finish(SolveStatus status, const std::string& message) {
  LpResult result;
  result.status = status;
  result.iterations = iterations_;
  result.used_bland = used_bland_;
  result.message = message;
  result.x.assign(x_.begin(), x_.begin() + static_cast<long>(n_));
  double obj = objective_offset_;
  for (std::size_t j = 0; j < n_; ++j) obj += phase2_cost_[j] * x_[j];
  result.objective = obj;
  if (status == SolveStatus::kOptimal) {
    result.reduced_costs.assign(d_.begin(), d_.begin() + static_cast<long>(n_));
    result.row_duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t u = unit_col_[i];
      result.row_duals[i] = (cost_[u] - d_[u]) / unit_sign_[i];
    }
  }
  return result;
}

LpResult DenseSimplex::Run() {
  const bool has_artificial =
      std::find(artificial_.begin(), artificial_.end(), true) !=
      artificial_.end();
  if (has_artificial) {
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (artificial_[j]) cost_[j] = 1.0;
    }
    ComputeReducedCosts();
    const Outcome phase1 = Iterate(false);
    if (phase1 == Outcome::kIterationLimit) {
      return Finish(SolveStatus::kNumericalFailure, "iteration limit in phase 1");
    }
    if (phase1 == Outcome::kSingular || !Reinvert()) {
      return Finish(SolveStatus::kNumericalFailure,
                    "numerical breakdown in phase 1");
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (double b : b_) scale = std::max(scale, std::abs(b));
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (artificial_[j]) infeasibility += std::abs(x_[j]);
    }
    if (infeasibility > 1e-8 * scale) {
      return Finish(SolveStatus::kInfeasible, "");
    }
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (!artificial_[j]) continue;
      ub_[j] = 0.0;
      if (where_[j] < 0) x_[j] = 0.0;
    }
    DriveOutArtificials();
    if (!Reinvert()) {
      return Finish(SolveStatus::kNumericalFailure,
                    "singular basis after phase 1");
    }
  }
  cost_ = phase2_cost_;
  ComputeReducedCosts();
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Outcome phase2 = Iterate(true);
    switch (phase2) {
      case Outcome::kUnbounded:
        return Finish(SolveStatus::kUnbounded, "");
      case Outcome::kIterationLimit:
        return Finish(SolveStatus::kNumericalFailure,
                      "iteration limit in phase 2");
      case Outcome::kSingular:
        return Finish(SolveStatus::kNumericalFailure,
                      "numerical breakdown in phase 2");
      case Outcome::kOptimal:
        break;
    }
    // Rebuild from the original data and confirm optimality.
    if (!Reinvert()) {
      return Finish(SolveStatus::kNumericalFailure, "singular final basis");
    }
    ComputeReducedCosts();
    if (PrimalViolation() > 1e-7) {
      return Finish(SolveStatus::kNumericalFailure,
                    "final basis is primal infeasible after refactorization");
    }
    std::size_t q = 0;
    int dir = 0;
    if (!ChooseEntering(q, dir)) return Finish(SolveStatus::kOptimal, "");
  }
  return Finish(SolveStatus::kNumericalFailure,
                "optimality could not be confirmed after refactorization");
}

}  // namespace

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
    case SolveStatus::kNodeLimit:
      return "NodeLimit";
    case SolveStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "NumericalFailure";
}

LpResult SolveLinearProgram(const LinearProgram& lp,
                            const SimplexOptions& options) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lb[j] > lp.ub[j]) {
      LpResult r;
      r.status = SolveStatus::kInfeasible;
      r.x.assign(lp.num_vars(), 0.0);
      r.message = "empty variable domain";
      return r;
    }
  }
  return DenseSimplex(lp, options).Run();
}

}  // namespace surrogate
