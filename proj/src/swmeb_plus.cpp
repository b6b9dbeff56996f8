#include "swmeb/swmeb_plus.hpp"

#include <algorithm>
#include <cmath>

#include "swmeb/error.hpp"

namespace swmeb {

Eps2Schedule Eps2Schedule::geometric(double eps1) {
  if (!(eps1 > 0.0 && eps1 < 1.0)) throw InvalidInput("eps1 must lie in (0, 1)");
  return Eps2Schedule(eps1 / 10.0, 4.0, 0.1);
}

Eps2Schedule Eps2Schedule::constant(double eps2) {
  if (!(eps2 > 0.0 && eps2 < 1.0)) throw InvalidInput("eps2 must lie in (0, 1)");
  return Eps2Schedule(eps2, 1.0, eps2);
}

double Eps2Schedule::at(std::size_t rank) const noexcept {
  if (growth_ == 1.0) return base_;
  const double exponent = static_cast<double>(rank == 0 ? 0 : rank - 1);
  return std::min(base_ * std::pow(growth_, exponent), cap_);
}

SwmebPlus::SwmebPlus(SwmebPlusParams params) : params_(params) {
  if (params_.window == 0) throw InvalidConfig("window size must be positive");
  if (params_.batch == 0 || params_.window % params_.batch != 0) {
    throw InvalidConfig("batch size must divide the window size");
  }
  if (!(params_.eps1 > 0.0 && params_.eps1 < 1.0)) throw InvalidConfig("eps1 must lie in (0, 1)");
}

std::size_t SwmebPlus::window_start() const noexcept {
  return now_ < params_.window ? 1 : now_ - params_.window + 1;
}

void SwmebPlus::insert(const Point& p) {
  if (params_.batch != 1) throw InvalidInput("single-point insert requires batch size 1");
  insert_batch(std::span<const Point>(&p, 1));
}

void SwmebPlus::insert_batch(std::span<const Point> batch) {
  if (batch.size() != params_.batch) throw InvalidInput("batch has the wrong size");
  if (!indices_.empty()) {
    const std::size_t m = indices_.front().instance.coreset().dim();
    for (const Point& p : batch) {
      if (p.dim() != m) throw InvalidInput("dimension mismatch in stream");
    }
  }
  const std::size_t first = now_ + 1;
  now_ += batch.size();

  // Phase 1: a fresh index at the start of this batch.
  Aomeb fresh = batch.size() == 1
                    ? Aomeb::start(params_.eps1, batch.front(), first, params_.space)
                    : Aomeb::start_batch(params_.eps1, batch, first, params_.space);

  // Phase 2: keep at most one expired index.
  const std::size_t start = window_start();
  while (indices_.size() >= 2 && indices_[1].position < start) indices_.pop_front();

  // Phase 3.
  for (Index& index : indices_) index.instance.update_batch(batch, first);
  indices_.push_back(Index{first, std::move(fresh)});

  // Phase 4.
  prune();
}

void SwmebPlus::prune() {
  // Lowest-first scan. After deleting x_{i+1}, pairs (j, j + 2) with j < i - 1
  // are untouched and keep their ranks, so resuming at i - 1 is the same as
  // restarting from x_1.
  std::size_t i = 0;
  while (i + 2 < indices_.size()) {
    const double eps2 = params_.eps2.at(i + 1);
    if (indices_[i].instance.radius() <= (1.0 + eps2) * indices_[i + 2].instance.radius()) {
      indices_.erase(indices_.begin() + static_cast<std::ptrdiff_t>(i + 1));
      i = i == 0 ? 0 : i - 1;
    } else {
      ++i;
    }
  }
}

const Aomeb& SwmebPlus::query() const {
  if (indices_.empty()) throw WarmUpError("no index yet");
  if (indices_.front().position >= window_start() || indices_.size() == 1) {
    return indices_.front().instance;
  }
  return indices_[1].instance;
}

std::size_t SwmebPlus::stored_points() const noexcept {
  std::size_t count = 0;
  for (const Index& index : indices_) count += index.instance.coreset().size();
  return count;
}

}  // namespace swmeb
