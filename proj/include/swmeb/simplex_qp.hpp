#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace swmeb {

inline constexpr std::size_t kMaxFrankWolfeIterations = 1'000'000;

// Dense symmetric kernel matrix that grows one point at a time.
class GramMatrix {
 public:
  std::size_t size() const noexcept { return rows_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return rows_[i][j]; }
  std::span<const double> row(std::size_t i) const noexcept { return rows_[i]; }
  std::span<const double> diagonal() const noexcept { return diag_; }

  // `cross` holds k(new, p_j) for every existing j; `self` is k(new, new).
  void append(std::span<const double> cross, double self);

 private:
  std::vector<std::vector<double>> rows_;
  std::vector<double> diag_;
};

struct SimplexSolveStats {
  std::size_t iterations = 0;
  // max_i d(c, p_i)^2 and alpha' diag(K) - alpha' K alpha at termination.
  double primal_sq = 0.0;
  double dual_sq = 0.0;
  double quad = 0.0;  // alpha' K alpha
  // sqrt(primal / dual) - 1: relative gap between the enclosing radius and
  // the dual lower bound on the optimal radius.
  double residual = 0.0;
};

// Maximizes alpha' diag(K) - alpha' K alpha over the unit simplex, starting
// from `alpha` (a warm start; must be on the simplex). Frank-Wolfe with away
// steps and exact line search. Stops once
//   max_i d(c, p_i) <= (1 + tolerance) * sqrt(dual),
// i.e. the enclosing radius is within a (1 + tolerance) factor of optimal.
// Throws ConvergenceError when max_iterations is exceeded.
//
// `gradient`, when given and of matching size, is taken as K alpha for the
// warm start; on return it holds K alpha for the returned weights.
SimplexSolveStats maximize_simplex_dual(const GramMatrix& gram, std::vector<double>& alpha,
                                        double tolerance,
                                        std::size_t max_iterations = kMaxFrankWolfeIterations,
                                        std::vector<double>* gradient = nullptr);

}  // namespace swmeb
