#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "swmeb/aomeb.hpp"
#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb {

struct SwmebParams {
  std::size_t window = 100'000;    // N
  std::size_t partition = 10'000;  // L; must divide N
  double eps1 = 1e-3;
  double eps2 = 0.1;
  // Points per insert call (b). Must divide L. Index positions snap to
  // batch starts.
  std::size_t batch = 1;
  // Largest distance between neighbouring indices of one partition.
  // 0 selects the default max(batch, L / 10) rounded up to a multiple of b.
  std::size_t max_index_gap = 0;
  KernelSpec space = KernelSpec::linear();
};

// Partitioned sliding-window coreset. The window is split into N / L
// partitions; each sealed partition keeps indices x_{i,1} > x_{i,2} > ...
// whose AOMEB instances started at x_{i,j} and have seen every later point.
class Swmeb {
 public:
  struct Index {
    std::size_t position;
    double radius_at_creation;
    Aomeb instance;
  };
  using Partition = std::vector<Index>;  // positions strictly decreasing

  explicit Swmeb(SwmebParams params);

  // Single point (requires batch == 1).
  void insert(const Point& p);
  // Exactly `batch` points, positions now()+1 ... now()+batch.
  void insert_batch(std::span<const Point> batch);

  // Instance of the earliest live index. Throws WarmUpError before the
  // first partition is sealed.
  const Aomeb& query() const;
  bool ready() const noexcept { return !partitions_.empty(); }

  const SwmebParams& params() const noexcept { return params_; }
  std::size_t now() const noexcept { return now_; }  // position of the latest point (1-based)
  const std::deque<Partition>& partitions() const noexcept { return partitions_; }
  std::size_t buffered() const noexcept { return buffer_.size(); }
  std::size_t index_count() const noexcept;
  // Coreset points held by all live instances plus the buffer.
  std::size_t stored_points() const noexcept;

 private:
  void seal_partition();
  void expire();

  SwmebParams params_;
  std::size_t gap_;
  std::size_t now_ = 0;
  std::vector<Point> buffer_;  // Q; positions now_ - |Q| + 1 ... now_
  std::deque<Partition> partitions_;
};

}  // namespace swmeb
