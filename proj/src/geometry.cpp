#include "swmeb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swmeb/error.hpp"

namespace swmeb {

namespace {

void require_finite(const std::vector<double>& coords) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw InvalidInput("non-finite coordinate at index " + std::to_string(i));
    }
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

double containment_tolerance(double radius) noexcept { return 1e-12 * std::max(1.0, radius); }

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

void require_same_dim(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) {
    throw InvalidInput("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                       std::to_string(q.dim()));
  }
}

double distance(const Point& p, const Point& q) {
  require_same_dim(p, q);
  return std::sqrt(squared_distance(p.coords(), q.coords()));
}

Ball two_point_ball(const Point& p, const Point& q) {
  require_same_dim(p, q);
  std::vector<double> mid(p.dim());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (p[i] + q[i]);
  return Ball{Point(std::move(mid)), 0.5 * distance(p, q)};
}

bool contains_expanded(const Ball& ball, const Point& p, double mu) {
  if (!(mu >= 1.0)) throw InvalidInput("expansion factor must be >= 1");
  return distance(ball.center, p) <= mu * ball.radius + containment_tolerance(ball.radius);
}

}  // namespace swmeb
