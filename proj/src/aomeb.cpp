#include "swmeb/aomeb.hpp"

#include <algorithm>
#include <vector>

#include "swmeb/error.hpp"
#include "swmeb/meb_batch.hpp"

namespace swmeb {

namespace {

void require_eps1(double eps1) {
  if (!(eps1 > 0.0 && eps1 < 1.0)) throw InvalidInput("eps1 must lie in (0, 1)");
}

}  // namespace

double aomeb_solve_tolerance(double eps1) {
  // Radius growth per insertion can be as small as eps1^2 / 8, so the
  // re-solve error has to sit below that.
  return std::min(eps1 / 10.0, eps1 * eps1 / 100.0);
}

Aomeb::Aomeb(double eps1, Coreset coreset, std::size_t points_seen, std::size_t min_position,
             std::size_t max_position)
    : eps1_(eps1),
      solve_tolerance_(aomeb_solve_tolerance(eps1)),
      coreset_(std::move(coreset)),
      points_seen_(points_seen),
      min_position_(min_position),
      max_position_(max_position) {}

Aomeb Aomeb::start(double eps1, const Point& first, std::size_t position,
                   const KernelSpec& space) {
  require_eps1(eps1);
  return Aomeb(eps1, Coreset(space, first, position), 1, position, position);
}

Aomeb Aomeb::start_batch(double eps1, std::span<const Point> first_batch,
                         std::size_t first_position, const KernelSpec& space) {
  require_eps1(eps1);
  if (first_batch.empty()) throw InvalidInput("initial batch is empty");
  if (first_batch.size() == 1) return start(eps1, first_batch.front(), first_position, space);
  // Intermediate CoreMEB solves only pick the next furthest point, so they run
  // at CoreMEB's own tolerance; the starting ball is then tightened once.
  Coreset cs = core_meb(first_batch, eps1, space, 0.0, first_position);
  cs.resolve(aomeb_solve_tolerance(eps1));
  return Aomeb(eps1, std::move(cs), first_batch.size(), first_position,
               first_position + first_batch.size() - 1);
}

void Aomeb::track(std::size_t position) noexcept {
  ++points_seen_;
  min_position_ = std::min(min_position_, position);
  max_position_ = std::max(max_position_, position);
}

UpdateOutcome Aomeb::update(const Point& p, std::size_t position) {
  const bool inside = coreset_.contains(p, 1.0 + eps1_);
  track(position);
  if (inside) return UpdateOutcome::unchanged;
  coreset_.add(p, position);
  coreset_.resolve(solve_tolerance_);
  return UpdateOutcome::grew;
}

std::size_t Aomeb::update_batch(std::span<const Point> batch, std::size_t first_position) {
  if (batch.empty()) throw InvalidInput("empty batch");
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!coreset_.contains(batch[i], 1.0 + eps1_)) outside.push_back(i);
  }
  for (std::size_t i = 0; i < batch.size(); ++i) track(first_position + i);
  if (outside.empty()) return 0;
  for (std::size_t i : outside) coreset_.add(batch[i], first_position + i);
  coreset_.resolve(solve_tolerance_);
  return outside.size();
}

}  // namespace swmeb
