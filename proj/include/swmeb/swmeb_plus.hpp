#pragma once

#include <cstddef>
#include <deque>
#include <span>

#include "swmeb/aomeb.hpp"
#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb {

// eps2 as a function of index rank i (1-based).
class Eps2Schedule {
 public:
  // min(4^(i-1) * eps1 / 10, 0.1)
  static Eps2Schedule geometric(double eps1);
  static Eps2Schedule constant(double eps2);

  double at(std::size_t rank) const noexcept;
  bool is_constant() const noexcept { return growth_ == 1.0; }

 private:
  Eps2Schedule(double base, double growth, double cap) : base_(base), growth_(growth), cap_(cap) {}

  double base_;
  double growth_;
  double cap_;
};

struct SwmebPlusParams {
  std::size_t window = 100'000;  // N
  double eps1 = 1e-3;
  Eps2Schedule eps2 = Eps2Schedule::geometric(1e-3);
  std::size_t batch = 1;  // one index per batch
  KernelSpec space = KernelSpec::linear();
};

// Single pruned index sequence x_1 < ... < x_s over the window. An index is
// dropped when its two-hop neighbours have radii within (1 + eps2(i)); at
// most one expired index (x_1) is retained.
class SwmebPlus {
 public:
  struct Index {
    std::size_t position;
    Aomeb instance;
  };

  explicit SwmebPlus(SwmebPlusParams params);

  void insert(const Point& p);
  void insert_batch(std::span<const Point> batch);

  // S[x_1, t] when x_1 is live, else S[x_2, t]. Throws WarmUpError when empty.
  const Aomeb& query() const;

  const SwmebPlusParams& params() const noexcept { return params_; }
  std::size_t now() const noexcept { return now_; }
  std::size_t window_start() const noexcept;
  const std::deque<Index>& indices() const noexcept { return indices_; }
  std::size_t stored_points() const noexcept;

 private:
  void prune();

  SwmebPlusParams params_;
  std::size_t now_ = 0;
  std::deque<Index> indices_;
};

}  // namespace swmeb
