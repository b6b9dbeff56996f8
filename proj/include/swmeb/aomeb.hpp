#pragma once

#include <cstddef>
#include <span>

#include "swmeb/coreset.hpp"
#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb {

enum class UpdateOutcome { unchanged, grew };

// Append-only streaming coreset. A point outside (1 + eps1) * B joins the
// coreset and B is re-solved to MEB(S); otherwise nothing changes. Every
// processed point ends up inside (sqrt(2) + eps1) * B.
//
// Positions are supplied by the caller so that an instance can also scan a
// stream segment backwards (see Swmeb).
class Aomeb {
 public:
  // Single-update start: S = {first}, B = (first, 0).
  static Aomeb start(double eps1, const Point& first, std::size_t position,
                     const KernelSpec& space = KernelSpec::linear());

  // Mini-batch start: S = core_meb(first_batch, eps1). Positions are
  // first_position, first_position + 1, ...
  static Aomeb start_batch(double eps1, std::span<const Point> first_batch,
                           std::size_t first_position,
                           const KernelSpec& space = KernelSpec::linear());

  UpdateOutcome update(const Point& p, std::size_t position);

  // Membership of every batch point is tested against the pre-batch ball;
  // the ball is re-solved once. Returns the number of points added.
  std::size_t update_batch(std::span<const Point> batch, std::size_t first_position);

  const Coreset& coreset() const noexcept { return coreset_; }
  double eps1() const noexcept { return eps1_; }
  double radius() const noexcept { return coreset_.radius(); }
  double distance(const Point& q) const { return coreset_.distance(q); }

  std::size_t points_seen() const noexcept { return points_seen_; }
  // Smallest and largest stream positions processed so far.
  std::size_t start_index() const noexcept { return min_position_; }
  std::size_t last_index() const noexcept { return max_position_; }

  // Tolerance of every MEB(S) re-solve: min(eps1 / 10, eps1^2 / 100).
  double solve_tolerance() const noexcept { return solve_tolerance_; }

 private:
  Aomeb(double eps1, Coreset coreset, std::size_t points_seen, std::size_t min_position,
        std::size_t max_position);
  void track(std::size_t position) noexcept;

  double eps1_;
  double solve_tolerance_;
  Coreset coreset_;
  std::size_t points_seen_;
  std::size_t min_position_;
  std::size_t max_position_;
};

double aomeb_solve_tolerance(double eps1);

}  // namespace swmeb
