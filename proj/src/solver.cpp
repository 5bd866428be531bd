#include "rdc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace rdc::solver {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

// Dense tableau for  min c.y  s.t.  A y <= b, 0 <= y  (uppers already folded
// into A). Rows with negative b get an artificial variable; phase 1 drives the
// artificials to zero or proves infeasibility.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, std::size_t n)
      : n_(n), m_(a.size()), cols_(n + a.size()) {
    // Layout: [structural | slack] plus artificials appended on demand.
    t_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign * a[i][j];
      t_[i][n_ + i] = sign;  // slack
      t_[i][cols_] = sign * b[i];
      if (sign < 0.0) flipped_.push_back(i);
    }
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    if (!flipped_.empty()) {
      // Append one artificial column per flipped row.
      for (std::size_t k = 0; k < flipped_.size(); ++k) {
        for (std::size_t i = 0; i < m_; ++i) {
          t_[i].insert(t_[i].end() - 1, i == flipped_[k] ? 1.0 : 0.0);
        }
        basis_[flipped_[k]] = cols_ + k;
      }
      first_artificial_ = cols_;
      cols_ += flipped_.size();
    } else {
      first_artificial_ = cols_;
    }
  }

  // Runs simplex with the given cost vector over all columns (artificials
  // included). Returns false on unboundedness.
  bool optimize(const std::vector<double>& cost, bool allow_artificials) {
    std::vector<double> reduced(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
      double cb = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (cost[basis_[i]] != 0.0) cb += cost[basis_[i]] * t_[i][j];
      }
      reduced[j] = cost[j] - cb;
    }
    while (true) {
      // Bland: lowest-index column with negative reduced cost.
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificials && j >= first_artificial_) break;
        if (reduced[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] > kPivotTol) {
          const double ratio = t_[i][cols_] / t_[i][enter];
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave == m_ || basis_[i] < basis_[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_) return false;  // unbounded direction
      pivot(leave, enter, reduced);
      ++iterations_;
    }
  }

  void pivot(std::size_t row, std::size_t col, std::vector<double>& reduced) {
    const double piv = t_[row][col];
    for (double& v : t_[row]) v /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    const double rf = reduced[col];
    if (rf != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced[j] -= rf * t_[row][j];
    }
    basis_[row] = col;
  }

  // Total infeasibility left after phase 1 (sum of basic artificial values).
  double artificial_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) r += t_[i][cols_];
    }
    return r;
  }

  // Pivots still-basic artificials (at value zero) out of the basis where a
  // structural or slack column is available; degenerate all-zero rows keep
  // their artificial harmlessly pinned at zero.
  void expel_artificials() {
    std::vector<double> dummy(cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::fabs(t_[i][j]) > kPivotTol) {
          pivot(i, j, dummy);
          break;
        }
      }
    }
  }

  std::vector<double> extract(std::size_t n) const {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n) y[basis_[i]] = t_[i][cols_];
    }
    return y;
  }

  std::size_t cols() const noexcept { return cols_; }
  std::size_t first_artificial() const noexcept { return first_artificial_; }
  bool needs_phase1() const noexcept { return !flipped_.empty(); }
  long iterations() const noexcept { return iterations_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t cols_;
  std::size_t first_artificial_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> flipped_;
  long iterations_ = 0;
};

}  // namespace

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (n == 0) throw std::invalid_argument("linear program has no variables");
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("box bound dimensions do not match objective");
  }
  if (rows.size() != rhs.size()) {
    throw std::invalid_argument("row count does not match rhs count");
  }
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("constraint row dimension mismatch");
    }
  }
  auto finite = [](double v) { return std::isfinite(v); };
  for (std::size_t j = 0; j < n; ++j) {
    if (!finite(lower[j]) || !finite(upper[j]) || lower[j] > upper[j] + 1e-15) {
      throw std::invalid_argument("box bounds must be finite with lower <= upper");
    }
    if (!finite(objective[j])) {
      throw std::invalid_argument("objective coefficients must be finite");
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!finite(rhs[i])) throw std::invalid_argument("rhs must be finite");
    for (double v : rows[i]) {
      if (!finite(v)) throw std::invalid_argument("row coefficients must be finite");
    }
  }
}

double LinearProgram::max_violation(std::span<const double> x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += rows[i][j] * x[j];
    worst = std::max(worst, lhs - rhs[i]);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  return worst;
}

SolveReport solve_lp(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.num_vars();

  // Shift to y = x - lower >= 0 and fold the upper bounds in as rows.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.reserve(lp.rows.size() + n);
  b.reserve(lp.rows.size() + n);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) shift += lp.rows[i][j] * lp.lower[j];
    a.push_back(lp.rows[i]);
    b.push_back(lp.rhs[i] - shift);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    a.push_back(std::move(row));
    b.push_back(lp.upper[j] - lp.lower[j]);
  }

  Tableau tab(a, b, n);
  SolveReport report;

  if (tab.needs_phase1()) {
    std::vector<double> phase1(tab.cols(), 0.0);
    for (std::size_t j = tab.first_artificial(); j < tab.cols(); ++j) {
      phase1[j] = 1.0;
    }
    tab.optimize(phase1, true);
    const double residual = tab.artificial_residual();
    if (residual > kFeasTol) {
      report.status = SolveStatus::infeasible;
      report.objective = residual;  // minimal-violation certificate
      report.iterations = tab.iterations();
      return report;
    }
    tab.expel_artificials();
  }

  std::vector<double> cost(tab.cols(), 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  if (!tab.optimize(cost, false)) {
    report.status = SolveStatus::unbounded;
    report.iterations = tab.iterations();
    return report;
  }

  std::vector<double> y = tab.extract(n);
  report.x.resize(n);
  report.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    report.x[j] = lp.lower[j] + y[j];
    // Snap round-off back inside the box so downstream residual checks are clean.
    report.x[j] = std::clamp(report.x[j], lp.lower[j], lp.upper[j]);
    report.objective += lp.objective[j] * report.x[j];
  }
  report.status = SolveStatus::optimal;
  report.gap = 0.0;
  report.iterations = tab.iterations();
  return report;
}

namespace {

// Exact minimization of convex phi(t) = f(x + t*d) over [0,1] via bisection
// on phi'(t) = grad(x + t*d) . d. Returns the fixed Frank-Wolfe fallback step
// when the derivative at 0 is not negative (should not happen when gap > 0).
double line_search(const Gradient& grad, std::span<const double> x,
                   std::span<const double> d, double fallback,
                   std::vector<double>& probe, std::vector<double>& g) {
  const std::size_t n = x.size();
  auto slope = [&](double t) {
    for (std::size_t j = 0; j < n; ++j) probe[j] = x[j] + t * d[j];
    grad(probe, g);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g[j] * d[j];
    return s;
  };
  if (slope(0.0) >= 0.0) return fallback;
  if (slope(1.0) <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SolveReport minimize_convex(const Objective& f, const Gradient& grad,
                            const LinearProgram& polytope,
                            const ConvexOptions& options) {
  polytope.validate();
  if (options.starts < 1) throw std::invalid_argument("starts must be >= 1");
  const std::size_t n = polytope.num_vars();

  LinearProgram sub = polytope;  // objective replaced per linearized step
  bool probing = true;
  auto vertex = [&](const std::vector<double>& direction) {
    sub.objective = direction;
    SolveReport r = solve_lp(sub);
    if (r.status != SolveStatus::optimal && !probing) {
      throw std::runtime_error("linearized subproblem failed on a feasible polytope");
    }
    return r;
  };

  // Feasibility probe doubles as the deterministic base vertex.
  SolveReport probe0 = vertex(std::vector<double>(n, 0.0));
  if (probe0.status != SolveStatus::optimal) {
    SolveReport rep;
    rep.status = SolveStatus::infeasible;
    rep.objective = probe0.objective;  // phase-1 violation certificate
    return rep;
  }
  probing = false;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  SolveReport best;
  best.status = SolveStatus::iteration_limit;
  best.objective = std::numeric_limits<double>::infinity();
  long total_iterations = 0;

  std::vector<double> x(n), g(n), d(n), probe(n), dir(n);

  for (int start = 0; start < options.starts; ++start) {
    // Random interior-leaning start: convex combination of two random vertices.
    for (std::size_t j = 0; j < n; ++j) dir[j] = sym(rng);
    SolveReport va = vertex(dir);
    for (std::size_t j = 0; j < n; ++j) dir[j] = sym(rng);
    SolveReport vb = vertex(dir);
    const double w = unit(rng);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = w * va.x[j] + (1.0 - w) * vb.x[j];
    }

    double run_gap = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (long k = 0; k < options.max_iterations; ++k) {
      grad(x, g);
      SolveReport lin = vertex(std::vector<double>(g.begin(), g.end()));
      double gap = 0.0;
      for (std::size_t j = 0; j < n; ++j) gap += g[j] * (x[j] - lin.x[j]);
      run_gap = gap;
      ++total_iterations;
      if (gap < options.gap_tolerance) {
        converged = true;
        break;
      }
      for (std::size_t j = 0; j < n; ++j) d[j] = lin.x[j] - x[j];
      const double step =
          line_search(grad, x, d, 2.0 / static_cast<double>(k + 2), probe, g);
      for (std::size_t j = 0; j < n; ++j) x[j] += step * d[j];
    }

    // Report the run's final iterate, not an earlier objective-argmin: the
    // exact line search keeps the sequence monotone to round-off, and the
    // objective has non-differentiable corner points where an iterate a few
    // ulps earlier can look better by ~1e-16 while its linearization (and
    // hence its gap certificate) is meaningless. The final iterate is the
    // point the loop's gap test actually certified.
    const double run_value = f(x);
    if (run_value < best.objective) {
      best.objective = run_value;
      best.x.assign(x.begin(), x.end());
      best.gap = run_gap;
      best.status = converged ? SolveStatus::optimal : SolveStatus::iteration_limit;
    }
  }

  // Re-evaluate the duality gap at the reported iterate so the certificate
  // matches what is returned, not the run that produced it.
  grad(best.x, g);
  SolveReport lin = vertex(std::vector<double>(g.begin(), g.end()));
  double gap = 0.0;
  for (std::size_t j = 0; j < n; ++j) gap += g[j] * (best.x[j] - lin.x[j]);
  best.gap = gap;
  best.status = gap < options.gap_tolerance ? SolveStatus::optimal
                                            : SolveStatus::iteration_limit;
  best.iterations = total_iterations;
  return best;
}

}  // namespace rdc::solver
