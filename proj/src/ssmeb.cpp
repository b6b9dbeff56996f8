#include "swmeb/ssmeb.hpp"

#include <cmath>

#include "swmeb/error.hpp"

namespace swmeb {

Ssmeb::Ssmeb(const Point& first, KernelSpec space) : space_(space) {
  if (first.dim() == 0) throw InvalidInput("points must have at least one coordinate");
  if (space_.is_linear()) {
    center_.assign(first.coords().begin(), first.coords().end());
  } else {
    support_.push_back(first);
    alpha_.push_back(1.0);
    norm2_ = kernel_eval(space_, first, first);
  }
}

double Ssmeb::squared_distance_to(const Point& q, double& cross) const {
  if (space_.is_linear()) {
    if (q.dim() != center_.size()) throw InvalidInput("dimension mismatch against ball");
    cross = 0.0;
    return squared_distance(center_, q.coords());
  }
  if (q.dim() != support_.front().dim()) throw InvalidInput("dimension mismatch against ball");
  cross = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    cross += alpha_[i] * kernel_eval_raw(space_, support_[i].coords(), q.coords());
  }
  const double self = kernel_eval_raw(space_, q.coords(), q.coords());
  return clamp_squared(norm2_ + self - 2.0 * cross);
}

double Ssmeb::distance(const Point& q) const {
  double cross = 0.0;
  return std::sqrt(squared_distance_to(q, cross));
}

void Ssmeb::update(const Point& p) {
  double cross = 0.0;
  const double d = std::sqrt(squared_distance_to(p, cross));
  ++points_seen_;
  if (d <= radius_) return;
  const double r_new = 0.5 * (radius_ + d);
  // c' = s c + (1 - s) p
  const double s = r_new / d;
  if (space_.is_linear()) {
    for (std::size_t k = 0; k < center_.size(); ++k) center_[k] += (1.0 - s) * (p[k] - center_[k]);
  } else {
    const double self = kernel_eval(space_, p, p);
    norm2_ = s * s * norm2_ + 2.0 * s * (1.0 - s) * cross + (1.0 - s) * (1.0 - s) * self;
    for (double& a : alpha_) a *= s;
    support_.push_back(p);
    alpha_.push_back(1.0 - s);
  }
  radius_ = r_new;
}

Ball Ssmeb::ball() const {
  if (!space_.is_linear()) throw InvalidInput("explicit center exists only in linear space");
  return Ball{Point(center_), radius_};
}

KernelCenter Ssmeb::kernel_center() const {
  if (space_.is_linear()) return KernelCenter(space_, {Point(center_)}, {1.0});
  // Repeated rescaling lets the weight sum drift by round-off.
  double total = 0.0;
  for (double a : alpha_) total += a;
  std::vector<double> alpha = alpha_;
  for (double& a : alpha) a /= total;
  return KernelCenter(space_, support_, std::move(alpha), norm2_);
}

}  // namespace swmeb
