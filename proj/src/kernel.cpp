#include "swmeb/kernel.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

#include "swmeb/error.hpp"

namespace swmeb {

namespace {

std::atomic<std::uint64_t> g_negative_roundoff{0};

constexpr double kAnomalyThreshold = -1e-8;

}  // namespace

KernelSpec KernelSpec::gaussian(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("gaussian kernel width must be positive");
  }
  return KernelSpec{KernelKind::gaussian, gamma};
}

std::string KernelSpec::describe() const {
  if (is_linear()) return "linear";
  std::ostringstream os;
  os.precision(17);
  os << "gaussian(" << gamma << ")";
  return os.str();
}

double kernel_eval_raw(const KernelSpec& spec, std::span<const double> p,
                       std::span<const double> q) noexcept {
  if (spec.is_linear()) {
    return std::inner_product(p.begin(), p.end(), q.begin(), 0.0);
  }
  return std::exp(-squared_distance(p, q) / spec.gamma);
}

double kernel_eval(const KernelSpec& spec, const Point& p, const Point& q) {
  require_same_dim(p, q);
  return kernel_eval_raw(spec, p.coords(), q.coords());
}

double feature_distance(const KernelSpec& spec, const Point& p, const Point& q) {
  require_same_dim(p, q);
  if (spec.is_linear()) return std::sqrt(squared_distance(p.coords(), q.coords()));
  return std::sqrt(clamp_squared(2.0 - 2.0 * kernel_eval_raw(spec, p.coords(), q.coords())));
}

double estimate_gamma(std::span<const Point> sample) {
  if (sample.size() < 2) throw InvalidInput("gamma estimation needs at least two points");
  const std::size_t m = sample.front().dim();
  bool all_same = true;
  for (const Point& p : sample) {
    if (p.dim() != m) throw InvalidInput("dimension mismatch in gamma sample");
    if (all_same && !(p == sample.front())) all_same = false;
  }
  if (all_same) throw DegenerateKernel("all sampled points coincide; gamma would be 0");

  // (1/n^2) sum_{i,j} |p_i - p_j|^2 == (2/n) sum_i |p_i - mean|^2
  const double n = static_cast<double>(sample.size());
  std::vector<double> mean(m, 0.0);
  for (const Point& p : sample) {
    for (std::size_t k = 0; k < m; ++k) mean[k] += p[k];
  }
  for (double& v : mean) v /= n;
  double spread = 0.0;
  for (const Point& p : sample) spread += squared_distance(p.coords(), mean);
  return 2.0 * spread / n;
}

KernelCenter::KernelCenter(KernelSpec spec, std::vector<Point> support, std::vector<double> alpha)
    : spec_(spec), support_(std::move(support)), alpha_(std::move(alpha)) {
  validate();
  double norm2 = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (alpha_[i] == 0.0) continue;
    for (std::size_t j = 0; j < support_.size(); ++j) {
      if (alpha_[j] == 0.0) continue;
      norm2 += alpha_[i] * alpha_[j] *
               kernel_eval_raw(spec_, support_[i].coords(), support_[j].coords());
    }
  }
  norm2_ = norm2;
}

KernelCenter::KernelCenter(KernelSpec spec, std::vector<Point> support, std::vector<double> alpha,
                           double cached_norm2)
    : spec_(spec), support_(std::move(support)), alpha_(std::move(alpha)), norm2_(cached_norm2) {
  validate();
}

void KernelCenter::validate() const {
  if (support_.empty()) throw InvalidInput("kernel center needs at least one support point");
  if (support_.size() != alpha_.size()) throw InvalidInput("support and weights differ in length");
  double total = 0.0;
  for (double a : alpha_) {
    if (!(a >= 0.0)) throw InvalidInput("negative kernel center weight");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("kernel center weights must sum to 1");
  const std::size_t m = support_.front().dim();
  for (const Point& p : support_) {
    if (p.dim() != m) throw InvalidInput("dimension mismatch in kernel center support");
  }
}

double kernel_distance(const KernelCenter& center, const Point& q, const KernelSpec& spec) {
  if (q.dim() != center.support().front().dim()) {
    throw InvalidInput("dimension mismatch in kernel distance");
  }
  double cross = 0.0;
  const auto support = center.support();
  const auto alpha = center.alpha();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    cross += alpha[i] * kernel_eval_raw(spec, support[i].coords(), q.coords());
  }
  const double self = kernel_eval_raw(spec, q.coords(), q.coords());
  return std::sqrt(clamp_squared(center.cached_norm2() + self - 2.0 * cross));
}

double kernel_radius(const KernelCenter& center, const KernelSpec& spec) {
  double diag = 0.0;
  const auto support = center.support();
  const auto alpha = center.alpha();
  for (std::size_t i = 0; i < support.size(); ++i) {
    diag += alpha[i] * kernel_eval_raw(spec, support[i].coords(), support[i].coords());
  }
  return std::sqrt(clamp_squared(diag - center.cached_norm2()));
}

double clamp_squared(double value) noexcept {
  if (value >= 0.0) return value;
  if (value < kAnomalyThreshold) g_negative_roundoff.fetch_add(1, std::memory_order_relaxed);
  return 0.0;
}

std::uint64_t negative_roundoff_events() noexcept {
  return g_negative_roundoff.load(std::memory_order_relaxed);
}

}  // namespace swmeb
