#include "swmeb/meb_batch.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iterator>
#include <list>
#include <string>

#include "swmeb/error.hpp"

namespace swmeb {

namespace {

void require_points(std::span<const Point> points) {
  if (points.empty()) throw InvalidInput("MEB of an empty point set");
  const std::size_t m = points.front().dim();
  if (m == 0) throw InvalidInput("points must have at least one coordinate");
  for (const Point& p : points) {
    if (p.dim() != m) throw InvalidInput("dimension mismatch in point set");
  }
}

void require_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in (0, 1)");
  }
}

// Index of the point furthest from `from` (ties to the lowest index).
template <typename DistanceFn>
std::size_t furthest(std::span<const Point> points, DistanceFn&& dist) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = dist(points[i]);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

Coreset solve_enclosing(std::span<const Point> points, const KernelSpec& space, double tolerance,
                        std::size_t* iterations) {
  require_points(points);
  require_unit_interval(tolerance, "solver tolerance");

  Coreset cs(space, points.front(), 0);
  std::vector<char> active(points.size(), 0);
  active[0] = 1;
  std::size_t total_iterations = 0;
  for (;;) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = cs.distance(points[i]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    const double bound = (1.0 + tolerance) * cs.dual_radius();
    if (far_d <= bound + containment_tolerance(bound) || active[far]) break;
    cs.add(points[far], far);
    active[far] = 1;
    total_iterations += cs.resolve(tolerance).iterations;
  }
  if (iterations != nullptr) *iterations = total_iterations;
  return cs;
}

SolveReport solve_meb(std::span<const Point> points, double tolerance) {
  std::size_t iterations = 0;
  Coreset cs = solve_enclosing(points, KernelSpec::linear(), tolerance, &iterations);
  SolveReport report;
  report.ball = cs.ball();
  report.weights.assign(points.size(), 0.0);
  for (std::size_t i = 0; i < cs.size(); ++i) report.weights[cs.positions()[i]] += cs.weights()[i];
  report.iterations = iterations;
  report.residual = cs.dual_radius() > 0.0 ? cs.radius() / cs.dual_radius() - 1.0 : 0.0;
  return report;
}

std::pair<KernelCenter, double> solve_kernel_meb(std::span<const Point> points,
                                                 const KernelSpec& spec, double tolerance) {
  Coreset cs = solve_enclosing(points, spec, tolerance);
  return {cs.kernel_center(), cs.radius()};
}

Coreset core_meb(std::span<const Point> points, double eps, const KernelSpec& space,
                 double solve_tolerance, std::size_t first_position) {
  require_points(points);
  require_unit_interval(eps, "eps");
  const double tol = solve_tolerance > 0.0 ? solve_tolerance : eps / 10.0;

  const std::size_t a = furthest(
      points, [&](const Point& p) { return feature_distance(space, points.front(), p); });
  const std::size_t b =
      furthest(points, [&](const Point& p) { return feature_distance(space, points[a], p); });

  Coreset cs(space, points[a], first_position + a);
  std::vector<char> in_set(points.size(), 0);
  in_set[a] = 1;
  if (b != a) {
    cs.add(points[b], first_position + b);
    in_set[b] = 1;
    cs.resolve(tol);
  }

  for (;;) {
    std::size_t q = points.size();
    double q_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (in_set[i]) continue;
      const double d = cs.distance(points[i]);
      if (d > q_d) {
        q_d = d;
        q = i;
      }
    }
    if (q == points.size()) break;
    // Test against the dual radius, a lower bound on r*(S) <= r*(P), so that
    // the final expansion is certified against the true optimum.
    const double bound = (1.0 + eps) * cs.dual_radius();
    if (q_d <= bound + containment_tolerance(bound)) break;
    cs.add(points[q], first_position + q);
    in_set[q] = 1;
    cs.resolve(tol);
  }
  return cs;
}

namespace {

// Move-to-front miniball with pivoting over a point list; the support
// stack's ball is the circumsphere of the pushed points.
class Miniball {
 public:
  Miniball(std::span<const Point> points, std::size_t dim)
      : dim_(dim), center_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim))) {
    for (const Point& p : points) list_.push_back(&p);
  }

  Ball solve() {
    support_end_ = list_.begin();
    pivot_mb(list_.end());
    return Ball{Point(std::vector<double>(center_.data(), center_.data() + center_.size())),
                std::sqrt(std::max(0.0, sq_radius_))};
  }

 private:
  using It = std::list<const Point*>::iterator;

  Eigen::VectorXd vec(const Point& p) const {
    return Eigen::Map<const Eigen::VectorXd>(p.coords().data(),
                                             static_cast<Eigen::Index>(p.dim()));
  }

  double excess(const Point& p) const {
    const double d_sq = (vec(p) - center_).squaredNorm();
    return d_sq - sq_radius_ - 1e-14 * std::max(sq_radius_, 1e-300);
  }

  bool push(const Point* p) {
    if (support_.empty()) {
      center_ = vec(*p);
      sq_radius_ = 0.0;
      support_.push_back(p);
      return true;
    }
    const std::size_t k = support_.size();  // columns of V after the push
    const Eigen::VectorXd origin = vec(*support_.front());
    Eigen::MatrixXd v(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(k));
    for (std::size_t i = 1; i < k; ++i) v.col(static_cast<Eigen::Index>(i - 1)) = vec(*support_[i]) - origin;
    v.col(static_cast<Eigen::Index>(k - 1)) = vec(*p) - origin;

    // Circumcenter in the affine hull: c = origin + V lambda with
    // 2 V'V lambda = diag(V'V).
    const Eigen::MatrixXd gram = v.transpose() * v;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(2.0 * gram);
    lu.setThreshold(1e-12);
    if (lu.rank() < static_cast<Eigen::Index>(k)) return false;
    const Eigen::VectorXd lambda = lu.solve(gram.diagonal());
    center_ = origin + v * lambda;
    sq_radius_ = (v * lambda).squaredNorm();
    support_.push_back(p);
    return true;
  }

  void pop() { support_.pop_back(); }

  void move_to_front(It j) {
    if (support_end_ == j) ++support_end_;
    list_.splice(list_.begin(), list_, j);
  }

  void mtf_mb(It end) {
    support_end_ = list_.begin();
    if (support_.size() == dim_ + 1) return;
    for (It k = list_.begin(); k != end;) {
      It j = k++;
      if (excess(**j) > 0.0 && push(*j)) {
        mtf_mb(j);
        pop();
        move_to_front(j);
      }
    }
  }

  void pivot_mb(It end) {
    It t = std::next(list_.begin());
    mtf_mb(t);
    double max_e = 0.0;
    double old_sq_radius = -1.0;
    do {
      It pivot = end;
      max_e = 0.0;
      for (It k = t; k != end; ++k) {
        const double e = excess(**k);
        if (e > max_e) {
          max_e = e;
          pivot = k;
        }
      }
      if (max_e > 0.0) {
        t = support_end_;
        if (t == pivot) ++t;
        old_sq_radius = sq_radius_;
        if (!push(*pivot)) break;
        mtf_mb(support_end_);
        pop();
        move_to_front(pivot);
      }
    } while (max_e > 0.0 && sq_radius_ > old_sq_radius);
  }

  std::size_t dim_;
  std::list<const Point*> list_;
  std::vector<const Point*> support_;
  It support_end_;
  Eigen::VectorXd center_;
  double sq_radius_ = -1.0;
};

}  // namespace

Ball welzl_exact(std::span<const Point> points) {
  require_points(points);
  const std::size_t m = points.front().dim();
  if (m > kWelzlMaxDim) {
    throw UnsupportedDimension("exact MEB supports dimension <= " + std::to_string(kWelzlMaxDim) +
                               ", got " + std::to_string(m));
  }
  if (points.size() == 1) return Ball{points.front(), 0.0};
  return Miniball(points, m).solve();
}

}  // namespace swmeb
