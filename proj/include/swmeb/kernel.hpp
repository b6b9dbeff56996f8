#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swmeb/geometry.hpp"

namespace swmeb {

enum class KernelKind { linear, gaussian };

// Kernel k(p, q) = <phi(p), phi(q)>. Gaussian width gamma is in squared
// distance units: k(p, q) = exp(-d(p, q)^2 / gamma).
struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  double gamma = 1.0;

  static KernelSpec linear() { return {}; }
  static KernelSpec gaussian(double gamma);

  bool is_linear() const noexcept { return kind == KernelKind::linear; }
  std::string describe() const;
};

double kernel_eval(const KernelSpec& spec, const Point& p, const Point& q);

// Unchecked variant for inner loops; both spans must have the same length.
double kernel_eval_raw(const KernelSpec& spec, std::span<const double> p,
                       std::span<const double> q) noexcept;

// Distance between phi(p) and phi(q).
double feature_distance(const KernelSpec& spec, const Point& p, const Point& q);

// Mean squared pairwise distance over all ordered pairs, i == j included.
double estimate_gamma(std::span<const Point> sample);

// Implicit RKHS center c = sum_i alpha_i phi(p_i).
class KernelCenter {
 public:
  // Computes cached_norm2 = alpha' K alpha from the support.
  KernelCenter(KernelSpec spec, std::vector<Point> support, std::vector<double> alpha);
  // Trusts a caller-provided alpha' K alpha (solvers already hold it).
  KernelCenter(KernelSpec spec, std::vector<Point> support, std::vector<double> alpha,
               double cached_norm2);

  const KernelSpec& spec() const noexcept { return spec_; }
  std::span<const Point> support() const noexcept { return support_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double cached_norm2() const noexcept { return norm2_; }

 private:
  void validate() const;

  KernelSpec spec_;
  std::vector<Point> support_;
  std::vector<double> alpha_;
  double norm2_ = 0.0;
};

double kernel_distance(const KernelCenter& center, const Point& q, const KernelSpec& spec);

// sqrt(max(0, alpha' diag(K) - alpha' K alpha)).
double kernel_radius(const KernelCenter& center, const KernelSpec& spec);

// Clamps tiny negative round-off to 0. Values below -1e-8 are counted as
// numerical anomalies; see negative_roundoff_events().
double clamp_squared(double value) noexcept;
std::uint64_t negative_roundoff_events() noexcept;

}  // namespace swmeb
