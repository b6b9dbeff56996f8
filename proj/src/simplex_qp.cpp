#include "swmeb/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swmeb/error.hpp"

namespace swmeb {

void GramMatrix::append(std::span<const double> cross, double self) {
  if (cross.size() != rows_.size()) throw InvalidInput("gram row has the wrong length");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].push_back(cross[i]);
  std::vector<double> row(cross.begin(), cross.end());
  row.push_back(self);
  rows_.push_back(std::move(row));
  diag_.push_back(self);
}

namespace {

double relative_gap(double primal_sq, double dual_sq) {
  if (primal_sq <= 0.0) return 0.0;
  if (dual_sq <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(primal_sq / dual_sq) - 1.0;
}

// Iterate state. quad = alpha' K alpha and lin = alpha' diag(K) are carried
// along each step and recomputed exactly on every refresh.
struct State {
  const GramMatrix& gram;
  std::vector<double>& alpha;
  std::vector<double> grad;
  double quad = 0.0;
  double lin = 0.0;
  // Furthest point overall and nearest point with positive weight.
  std::size_t toward = 0;
  std::size_t away = 0;
  double far_sq = 0.0;
  double near_sq = 0.0;

  void refresh() {
    // Renormalizing here keeps sum(alpha) == 1 from drifting over long runs.
    double total = 0.0;
    for (double a : alpha) total += a;
    for (double& a : alpha) a /= total;

    const std::size_t n = gram.size();
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0.0) continue;
      const double a = alpha[j];
      const double* col = gram.row(j).data();
      for (std::size_t i = 0; i < n; ++i) grad[i] += a * col[i];
    }
    summarize();
    scan();
  }

  void summarize() {
    const auto diag = gram.diagonal();
    quad = 0.0;
    lin = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0.0) continue;
      quad += alpha[i] * grad[i];
      lin += alpha[i] * diag[i];
    }
  }

  void reset_extremes() {
    far_sq = -std::numeric_limits<double>::infinity();
    near_sq = std::numeric_limits<double>::infinity();
    toward = 0;
    away = alpha.size();
  }

  void visit(std::size_t i, double diag_i) {
    // d_i^2 = |phi(p_i) - c|^2 = K_ii - 2 (K alpha)_i + alpha' K alpha
    const double d_sq = diag_i - 2.0 * grad[i] + quad;
    if (d_sq > far_sq) {
      far_sq = d_sq;
      toward = i;
    }
    if (alpha[i] > 0.0 && d_sq < near_sq) {
      near_sq = d_sq;
      away = i;
    }
  }

  void scan() {
    const auto diag = gram.diagonal();
    reset_extremes();
    for (std::size_t i = 0; i < alpha.size(); ++i) visit(i, diag[i]);
  }

  // alpha <- (1 - s) alpha + s e_j
  void step_toward(std::size_t j, double s) {
    const auto diag = gram.diagonal();
    const double g_j = grad[j];
    quad = (1.0 - s) * (1.0 - s) * quad + 2.0 * s * (1.0 - s) * g_j + s * s * diag[j];
    lin = (1.0 - s) * lin + s * diag[j];
    const double* col = gram.row(j).data();
    reset_extremes();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      alpha[i] *= (1.0 - s);
      if (i == j) alpha[i] += s;
      grad[i] = (1.0 - s) * grad[i] + s * col[i];
      visit(i, diag[i]);
    }
  }

  // alpha <- (1 + s) alpha - s e_k; `drop` zeroes alpha_k exactly.
  void step_away(std::size_t k, double s, bool drop) {
    const auto diag = gram.diagonal();
    const double g_k = grad[k];
    quad = (1.0 + s) * (1.0 + s) * quad - 2.0 * s * (1.0 + s) * g_k + s * s * diag[k];
    lin = (1.0 + s) * lin - s * diag[k];
    const double* col = gram.row(k).data();
    reset_extremes();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      alpha[i] *= (1.0 + s);
      if (i == k) alpha[i] = drop ? 0.0 : std::max(0.0, alpha[i] - s);
      grad[i] = (1.0 + s) * grad[i] - s * col[i];
      visit(i, diag[i]);
    }
  }
};

}  // namespace

SimplexSolveStats maximize_simplex_dual(const GramMatrix& gram, std::vector<double>& alpha,
                                        double tolerance, std::size_t max_iterations,
                                        std::vector<double>* gradient) {
  const std::size_t n = gram.size();
  if (n == 0) throw InvalidInput("simplex solve on an empty point set");
  if (alpha.size() != n) throw InvalidInput("weight vector does not match gram size");
  if (!(tolerance > 0.0)) throw InvalidInput("solver tolerance must be positive");

  const double target = (1.0 + tolerance) * (1.0 + tolerance);
  const std::size_t refresh_period = std::max<std::size_t>(n, 64);

  State st{gram, alpha, std::vector<double>(n)};
  std::size_t since_refresh = 0;
  if (gradient != nullptr && gradient->size() == n) {
    st.grad = *gradient;
    st.summarize();
    st.scan();
    since_refresh = 1;  // not verified yet
  } else {
    st.refresh();
  }

  SimplexSolveStats stats;
  for (std::size_t iter = 0;; ++iter) {
    if (since_refresh >= refresh_period) {
      st.refresh();
      since_refresh = 0;
    }
    const double dual = std::max(0.0, st.lin - st.quad);
    const double primal = std::max(0.0, st.far_sq);

    if (primal <= target * dual) {
      if (since_refresh == 0) {
        stats.iterations = iter;
        stats.primal_sq = primal;
        stats.dual_sq = dual;
        stats.quad = st.quad;
        stats.residual = relative_gap(primal, dual);
        if (gradient != nullptr) *gradient = std::move(st.grad);
        return stats;
      }
      // Confirm against a freshly computed gradient before stopping.
      st.refresh();
      since_refresh = 0;
      continue;
    }
    if (iter >= max_iterations) {
      throw ConvergenceError("Frank-Wolfe iteration cap reached", relative_gap(primal, dual));
    }

    const double toward_gap = st.far_sq - dual;
    const double away_gap = dual - st.near_sq;
    if (toward_gap >= away_gap || st.away == n) {
      const double step = std::clamp(toward_gap / (2.0 * st.far_sq), 0.0, 1.0);
      st.step_toward(st.toward, step);
    } else {
      const std::size_t k = st.away;
      const double a_k = alpha[k];
      const double max_step =
          a_k < 1.0 ? a_k / (1.0 - a_k) : std::numeric_limits<double>::infinity();
      double step = st.near_sq > 0.0 ? away_gap / (2.0 * st.near_sq) : max_step;
      const bool drop = step >= max_step;
      if (drop) step = max_step;
      st.step_away(k, step, drop);
    }
    ++since_refresh;
  }
}

}  // namespace swmeb
