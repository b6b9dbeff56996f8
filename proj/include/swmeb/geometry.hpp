#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace swmeb {

// Dense point in R^m. Coordinates are finite doubles; the dimension is fixed
// at construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

// Containment slack applied at ball boundaries: 1e-12 * max(1, radius).
double containment_tolerance(double radius) noexcept;

struct Ball {
  Point center;
  double radius = 0.0;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double distance(const Point& p, const Point& q);

Ball two_point_ball(const Point& p, const Point& q);

// True iff distance(ball.center, p) <= mu * ball.radius + containment_tolerance.
bool contains_expanded(const Ball& ball, const Point& p, double mu);

void require_same_dim(const Point& p, const Point& q);

}  // namespace swmeb
