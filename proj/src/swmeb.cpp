#include "swmeb/swmeb.hpp"

#include <algorithm>
#include <optional>

#include "swmeb/error.hpp"

namespace swmeb {

namespace {

std::size_t resolve_gap(const SwmebParams& p) {
  std::size_t gap = p.max_index_gap != 0 ? p.max_index_gap : p.partition / 10;
  gap = std::max(gap, p.batch);
  // Round up to whole batches.
  return (gap + p.batch - 1) / p.batch * p.batch;
}

}  // namespace

Swmeb::Swmeb(SwmebParams params) : params_(params) {
  if (params_.window == 0 || params_.partition == 0 || params_.batch == 0) {
    throw InvalidConfig("window, partition and batch sizes must be positive");
  }
  if (params_.window % params_.partition != 0) {
    throw InvalidConfig("partition size must divide the window size");
  }
  if (params_.partition % params_.batch != 0) {
    throw InvalidConfig("batch size must divide the partition size");
  }
  if (!(params_.eps1 > 0.0 && params_.eps1 < 1.0) || !(params_.eps2 > 0.0 && params_.eps2 < 1.0)) {
    throw InvalidConfig("eps1 and eps2 must lie in (0, 1)");
  }
  gap_ = resolve_gap(params_);
  buffer_.reserve(params_.partition);
}

void Swmeb::insert(const Point& p) {
  if (params_.batch != 1) throw InvalidInput("single-point insert requires batch size 1");
  insert_batch(std::span<const Point>(&p, 1));
}

void Swmeb::insert_batch(std::span<const Point> batch) {
  if (batch.size() != params_.batch) throw InvalidInput("batch has the wrong size");
  const std::size_t m = buffer_.empty() ? batch.front().dim() : buffer_.front().dim();
  for (const Point& p : batch) {
    if (p.dim() != m) throw InvalidInput("dimension mismatch in stream");
  }
  if (!partitions_.empty() && partitions_.front().front().instance.coreset().dim() != m) {
    throw InvalidInput("dimension mismatch in stream");
  }

  const std::size_t first = now_ + 1;
  buffer_.insert(buffer_.end(), batch.begin(), batch.end());
  now_ += batch.size();

  // Phases 1-2: seal a full buffer into a new partition with fresh indices.
  if (buffer_.size() == params_.partition) seal_partition();
  // Phase 3.
  expire();
  // Phase 4: instances that have not yet seen this batch process it.
  for (Partition& part : partitions_) {
    for (Index& index : part) {
      if (index.instance.last_index() >= first) continue;
      index.instance.update_batch(batch, first);
    }
  }
}

void Swmeb::seal_partition() {
  if (partitions_.size() == params_.window / params_.partition) partitions_.pop_front();

  const std::size_t length = params_.partition;
  const std::size_t begin = now_ - length + 1;
  Partition part;
  std::optional<Aomeb> scan;
  double last_radius = 0.0;
  std::size_t last_position = now_;
  for (std::size_t k = length; k-- > 0;) {
    const std::size_t position = begin + k;
    const Point& p = buffer_[k];
    if (!scan) {
      scan = Aomeb::start(params_.eps1, p, position, params_.space);
    } else {
      scan->update(p, position);
    }
    if (k % params_.batch != 0) continue;

    const double r = scan->radius();
    const bool first_index = part.empty();
    const bool grew = r > 0.0 && r >= (1.0 + params_.eps2) * last_radius;
    const bool gap_reached = last_position - position >= gap_;
    if (first_index || grew || gap_reached) {
      part.push_back(Index{position, r, *scan});
      last_radius = r;
      last_position = position;
    }
  }
  partitions_.push_back(std::move(part));
  buffer_.clear();
}

void Swmeb::expire() {
  if (now_ < params_.window) return;
  const std::size_t window_start = now_ - params_.window + 1;
  while (!partitions_.empty()) {
    Partition& front = partitions_.front();
    if (!front.empty() && front.back().position >= window_start) break;
    if (!front.empty()) front.pop_back();
    if (front.empty()) partitions_.pop_front();
  }
}

const Aomeb& Swmeb::query() const {
  if (partitions_.empty()) throw WarmUpError("no sealed partition yet");
  return partitions_.front().back().instance;
}

std::size_t Swmeb::index_count() const noexcept {
  std::size_t count = 0;
  for (const Partition& part : partitions_) count += part.size();
  return count;
}

std::size_t Swmeb::stored_points() const noexcept {
  std::size_t count = buffer_.size();
  for (const Partition& part : partitions_) {
    for (const Index& index : part) count += index.instance.coreset().size();
  }
  return count;
}

}  // namespace swmeb
