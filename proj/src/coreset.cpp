#include "swmeb/coreset.hpp"

#include <algorithm>
#include <cmath>

#include "swmeb/error.hpp"

namespace swmeb {

Coreset::Coreset(KernelSpec space, Point first, std::size_t position)
    : space_(space), center_(first) {
  if (first.dim() == 0) throw InvalidInput("points must have at least one coordinate");
  std::vector<double> scratch;
  const auto a = anchored(first, scratch);
  gram_.append({}, kernel_eval_raw(space_, a, a));
  norm2_ = gram_(0, 0);
  gradient_.push_back(gram_(0, 0));
  members_.push_back(std::move(first));
  positions_.push_back(position);
  weights_.push_back(1.0);
}

std::span<const double> Coreset::anchored(const Point& p, std::vector<double>& scratch) const {
  if (!space_.is_linear() || members_.empty()) {
    if (space_.is_linear()) {
      // The first member is its own anchor.
      scratch.assign(p.dim(), 0.0);
      return scratch;
    }
    return p.coords();
  }
  const Point& anchor = members_.front();
  scratch.resize(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) scratch[k] = p[k] - anchor[k];
  return scratch;
}

double Coreset::distance(const Point& q) const {
  if (q.dim() != dim()) throw InvalidInput("dimension mismatch against coreset");
  if (space_.is_linear()) return std::sqrt(squared_distance(center_.coords(), q.coords()));
  double cross = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    cross += weights_[i] * kernel_eval_raw(space_, members_[i].coords(), q.coords());
  }
  const double self = kernel_eval_raw(space_, q.coords(), q.coords());
  return std::sqrt(clamp_squared(norm2_ + self - 2.0 * cross));
}

bool Coreset::contains(const Point& q, double mu) const {
  return distance(q) <= mu * radius_ + containment_tolerance(radius_);
}

Ball Coreset::ball() const { return Ball{center(), radius_}; }

const Point& Coreset::center() const {
  if (!space_.is_linear()) throw InvalidInput("explicit center exists only in linear space");
  return center_;
}

KernelCenter Coreset::kernel_center() const {
  if (space_.is_linear()) {
    // The cached norm lives in anchored coordinates; recompute in absolute ones.
    return KernelCenter(space_, members_, weights_);
  }
  return KernelCenter(space_, members_, weights_, norm2_);
}

void Coreset::add(Point p, std::size_t position) {
  if (p.dim() != dim()) throw InvalidInput("dimension mismatch against coreset");
  std::vector<double> scratch_p;
  std::vector<double> scratch_q;
  const auto a = anchored(p, scratch_p);
  std::vector<double> cross(members_.size());
  for (std::size_t j = 0; j < members_.size(); ++j) {
    cross[j] = kernel_eval_raw(space_, a, anchored(members_[j], scratch_q));
  }
  gram_.append(cross, kernel_eval_raw(space_, a, a));
  double g = 0.0;
  for (std::size_t j = 0; j < cross.size(); ++j) g += weights_[j] * cross[j];
  gradient_.push_back(g);
  members_.push_back(std::move(p));
  positions_.push_back(position);
  weights_.push_back(0.0);
}

SimplexSolveStats Coreset::resolve(double tolerance) {
  const SimplexSolveStats stats =
      maximize_simplex_dual(gram_, weights_, tolerance, kMaxFrankWolfeIterations, &gradient_);
  double total = 0.0;
  for (double w : weights_) total += w;
  for (double& w : weights_) w /= total;
  for (double& g : gradient_) g /= total;
  refresh_geometry(stats);
  return stats;
}

void Coreset::refresh_geometry(const SimplexSolveStats& stats) {
  dual_radius_ = std::sqrt(stats.dual_sq);
  if (!space_.is_linear()) {
    norm2_ = stats.quad;
    radius_ = std::sqrt(stats.primal_sq);
    return;
  }
  norm2_ = stats.quad;
  const Point& anchor = members_.front();
  const std::size_t m = anchor.dim();
  std::vector<double> c(anchor.coords().begin(), anchor.coords().end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) c[k] += weights_[i] * (members_[i][k] - anchor[k]);
  }
  center_ = Point(std::move(c));
  double far_sq = 0.0;
  for (const Point& p : members_) {
    far_sq = std::max(far_sq, squared_distance(center_.coords(), p.coords()));
  }
  radius_ = std::sqrt(far_sq);
}

}  // namespace swmeb
