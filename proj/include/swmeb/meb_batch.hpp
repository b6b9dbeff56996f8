#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "swmeb/coreset.hpp"
#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb {

struct SolveReport {
  Ball ball;
  std::vector<double> weights;  // aligned with the input points; zero off the active set
  std::size_t iterations = 0;   // Frank-Wolfe iterations summed over all re-solves
  double residual = 0.0;        // final relative radius gap of the inner solve
};

// High-precision enclosing-ball solver in an arbitrary kernel space. Grows an
// active set by the furthest point and re-solves the simplex dual until every
// input lies within (1 + tolerance) times the dual radius. The returned
// coreset's positions are indices into `points`.
Coreset solve_enclosing(std::span<const Point> points, const KernelSpec& space, double tolerance,
                        std::size_t* iterations = nullptr);

// Euclidean MEB: ball contains every point within a (1 + tolerance)
// expansion and its radius is within (1 + tolerance) of r*(P).
SolveReport solve_meb(std::span<const Point> points, double tolerance);

// Kernelized MEB via the simplex dual. Returns the implicit center and its radius.
std::pair<KernelCenter, double> solve_kernel_meb(std::span<const Point> points,
                                                 const KernelSpec& spec, double tolerance);

// Batch (1 + eps)-coreset by furthest-point insertion. The initial pair is
// the point furthest from the first point and the point furthest from that
// one; ties go to the lowest index. Every insertion re-solves MEB(S) with
// `solve_tolerance` (eps / 10 when 0). Positions are first_position + index.
Coreset core_meb(std::span<const Point> points, double eps,
                 const KernelSpec& space = KernelSpec::linear(), double solve_tolerance = 0.0,
                 std::size_t first_position = 0);

inline constexpr std::size_t kWelzlMaxDim = 12;

// Exact Euclidean MEB (move-to-front with pivoting). Dimension is capped at
// kWelzlMaxDim; above it UnsupportedDimension is thrown.
Ball welzl_exact(std::span<const Point> points);

}  // namespace swmeb
