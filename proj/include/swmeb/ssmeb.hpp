#pragma once

#include <cstddef>
#include <vector>

#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb {

// Single-ball streaming baseline. A point outside the ball moves the center
// along the chord towards it so the new ball just covers both the old ball
// and the point. Gives a 1.5-approximate MEB, no coreset.
//
// In a kernel space the center is kept as a convex combination of the
// points that enlarged the ball.
class Ssmeb {
 public:
  Ssmeb(const Point& first, KernelSpec space = KernelSpec::linear());

  void update(const Point& p);

  double radius() const noexcept { return radius_; }
  double distance(const Point& q) const;
  std::size_t points_seen() const noexcept { return points_seen_; }
  const KernelSpec& space() const noexcept { return space_; }

  // Linear space only.
  Ball ball() const;
  KernelCenter kernel_center() const;
  // Points carried by the center representation (1 in linear space).
  std::size_t stored_points() const noexcept { return space_.is_linear() ? 1 : support_.size(); }

 private:
  // Returns the squared distance; also the inner product <c, phi(q)>.
  double squared_distance_to(const Point& q, double& cross) const;

  KernelSpec space_;
  std::vector<double> center_;  // linear space
  std::vector<Point> support_;  // kernel space
  std::vector<double> alpha_;
  double norm2_ = 0.0;
  double radius_ = 0.0;
  std::size_t points_seen_ = 1;
};

}  // namespace swmeb
