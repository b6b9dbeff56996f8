#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"
#include "swmeb/simplex_qp.hpp"

namespace swmeb {

// A coreset S together with the (approximate) MEB of S in the space given by
// a kernel. The center is c = sum_i w_i phi(s_i) with weights on the unit
// simplex; radius() is the enclosing radius max_i d(c, s_i), so the ball
// always contains every member. dual_radius() is the matching lower bound on
// r*(S).
//
// In the linear space the center is also kept explicitly and the Gram matrix
// is built on coordinates relative to the first member, which keeps the
// quadratic form well conditioned for data far from the origin.
//
// Copies are deep: a copied coreset evolves independently.
class Coreset {
 public:
  Coreset(KernelSpec space, Point first, std::size_t position);

  const KernelSpec& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const noexcept { return members_.front().dim(); }

  std::span<const Point> members() const noexcept { return members_; }
  std::span<const std::size_t> positions() const noexcept { return positions_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double radius() const noexcept { return radius_; }
  double dual_radius() const noexcept { return dual_radius_; }

  // Distance in feature space from the current center to phi(q).
  double distance(const Point& q) const;
  bool contains(const Point& q, double mu) const;

  // Linear space only.
  Ball ball() const;
  const Point& center() const;

  KernelCenter kernel_center() const;

  // Appends a member with weight 0. The center is unchanged; radius() is
  // stale until the next resolve().
  void add(Point p, std::size_t position);

  // Re-optimizes the weights (warm start) so radius() <= (1 + tolerance) * r*(S).
  SimplexSolveStats resolve(double tolerance);

 private:
  std::span<const double> anchored(const Point& p, std::vector<double>& scratch) const;
  void refresh_geometry(const SimplexSolveStats& stats);

  KernelSpec space_;
  std::vector<Point> members_;
  std::vector<std::size_t> positions_;
  std::vector<double> weights_;
  GramMatrix gram_;
  std::vector<double> gradient_;  // K w, kept for warm starts
  Point center_;         // linear space only
  double norm2_ = 0.0;   // w' K w
  double radius_ = 0.0;
  double dual_radius_ = 0.0;
};

}  // namespace swmeb
