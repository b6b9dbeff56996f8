// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Tolerances are pinned here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "swmeb/aomeb.hpp"
#include "swmeb/bench.hpp"
#include "swmeb/kernel.hpp"
#include "swmeb/meb_batch.hpp"
#include "swmeb/ssmeb.hpp"
#include "swmeb/swmeb.hpp"
#include "swmeb/swmeb_plus.hpp"
#include "../test_support.hpp"

namespace {

using namespace swmeb;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kEta = 1e-12;             // relative containment slack, times max(1, r)
constexpr double kGrowthSlack = 1e-12;
constexpr double kErrorFloor = -1e-9;      // eps' >= 0 up to round-off
constexpr double kPropertySlack = 1e-7;
constexpr double kTwoPointTol = 1e-9;
constexpr double kLinearKernelTol = 1e-6;
constexpr double kGammaRelTol = 0.10;
constexpr double kSsmebSlack = 1e-9;
constexpr double kMeanErrorCap = 0.05;
constexpr double kPlusOverAomeb = 10.0;
constexpr double kPlusOverCoremeb = 50.0;
constexpr double kSwmebPlusHardBound = 9.66 + 0.5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double slack(double r) { return kEta * std::max(1.0, r); }

double elapsed_s(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Distance from the instance's center that does not go through Coreset::distance.
double independent_distance(const Coreset& c, const Point& p) {
  if (c.space().is_linear()) return testing::naive_distance(c.center(), p);
  return kernel_distance(c.kernel_center(), p, c.space());
}

double exact_radius(std::span<const Point> pts) {
  if (pts.front().dim() <= kWelzlMaxDim) return welzl_exact(pts).radius;
  return solve_enclosing(pts, KernelSpec::linear(), 1e-9).dual_radius();
}

// 1. CoreMEB coverage and error.
Outcome coremeb_coverage() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> n_dist(50, 1000), m_dist(1, 20);
  const double eps = 1e-3;
  std::size_t violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing::random_points(rng, n_dist(rng), m_dist(rng));
    const Coreset c = core_meb(pts, eps);
    for (const Point& p : pts) {
      if (testing::naive_distance(c.center(), p) > (1 + eps) * c.radius() + slack(c.radius())) {
        ++violations;
      }
    }
    const double err = bench::coreset_error(pts, c, exact_radius(pts));
    worst = std::max(worst, err);
    if (err < kErrorFloor || err > eps) ++violations;
  }
  const double secs = elapsed_s(t0);
  return {violations == 0 && secs < 30.0,
          fmt("200 instances, %.0f violations, worst eps'=%.3e, %.1fs (limit 30s)",
              static_cast<double>(violations), worst, secs)};
}

struct AomebStats {
  std::size_t coverage_violations = 0;
  std::size_t growth_violations = 0;
  std::size_t growths = 0;
  double worst_ratio = 0.0;  // max d / r over all checks
};

// Runs one stream. The center only moves on a growing update and every other
// point is inside (1 + eps1) B when it arrives, so checking all processed
// points after each growing update covers every state.
void check_aomeb_stream(const std::vector<Point>& pts, double eps1, const KernelSpec& space,
                        AomebStats& stats) {
  Aomeb a = Aomeb::start(eps1, pts.front(), 1, space);
  const double factor = std::sqrt(2.0) + eps1;
  const double growth = 1 + eps1 * eps1 / 8;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double before = a.radius();
    if (a.update(pts[i], i + 1) != UpdateOutcome::grew) continue;
    ++stats.growths;
    if (before > 0.0 && a.radius() / before < growth - kGrowthSlack) ++stats.growth_violations;
    const double r = a.radius();
    for (std::size_t j = 0; j <= i; ++j) {
      const double d = independent_distance(a.coreset(), pts[j]);
      if (r > 0.0) stats.worst_ratio = std::max(stats.worst_ratio, d / r);
      if (d > factor * r + slack(r)) ++stats.coverage_violations;
    }
  }
}

AomebStats euclidean_aomeb_stats(double& secs) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> n_dist(100, 2000), m_dist(1, 20);
  AomebStats stats;
  for (int trial = 0; trial < 200; ++trial) {
    const double eps1 = trial % 2 == 0 ? 1e-3 : 1e-2;
    check_aomeb_stream(testing::random_points(rng, n_dist(rng), m_dist(rng)), eps1,
                       KernelSpec::linear(), stats);
  }
  secs = elapsed_s(t0);
  return stats;
}

// 4. SWMEB coverage.
Outcome swmeb_coverage() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1004);
  const double eps1 = 1e-3, eps2 = 0.1;
  const double eps_star = (1 + eps1) * (1 + eps2) + std::sqrt(eps2 * (2 + eps2)) - 1;
  const double factor = std::sqrt(2.0) + eps_star;
  std::size_t violations = 0, checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t window = 100 * (1 + trial % 5);
    const std::size_t batch = trial % 3 == 2 ? 5 : 1;
    const auto pts = testing::random_points(rng, 2 * window, 1 + trial % 5);
    Swmeb s(SwmebParams{.window = window, .partition = window / 10, .eps1 = eps1, .eps2 = eps2,
                        .batch = batch});
    const std::span<const Point> all(pts);
    for (std::size_t t = batch; t <= pts.size(); t += batch) {
      s.insert_batch(all.subspan(t - batch, batch));
      if (!s.ready()) continue;
      const Aomeb& q = s.query();
      const double r = q.radius();
      const std::size_t start = t > window ? t - window + 1 : 1;
      for (std::size_t i = start; i <= t; ++i) {
        if (testing::naive_distance(q.coreset().center(), pts[i - 1]) > factor * r + slack(r)) {
          ++violations;
        }
      }
      ++checks;
    }
  }
  const double secs = elapsed_s(t0);
  return {violations == 0 && secs < 120.0,
          fmt("50 streams, %.0f checkpoints, %.0f violations, eps*=%.4f, %.1fs (limit 120s)",
              static_cast<double>(checks), static_cast<double>(violations), eps_star, secs)};
}

// 5. SWMEB+ structure and hard coverage bound.
Outcome swmebplus_invariants() {
  std::mt19937_64 rng(1005);
  std::size_t structural = 0, coverage = 0, inserts = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t window = 100 * (1 + trial % 5);
    const std::size_t batch = trial % 3 == 2 ? 10 : 1;
    const auto schedule =
        trial % 2 == 0 ? Eps2Schedule::geometric(1e-3) : Eps2Schedule::constant(0.1);
    const auto pts = testing::random_points(rng, 3 * window, 1 + trial % 5);
    SwmebPlus s(SwmebPlusParams{.window = window, .eps1 = 1e-3, .eps2 = schedule, .batch = batch});
    const std::span<const Point> all(pts);
    for (std::size_t t = batch; t <= pts.size(); t += batch) {
      s.insert_batch(all.subspan(t - batch, batch));
      ++inserts;
      const auto& idx = s.indices();
      std::size_t expired = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i].position < s.window_start()) ++expired;
        if (i > 0 && idx[i - 1].position >= idx[i].position) ++structural;
        if (i + 2 < idx.size() &&
            !(idx[i].instance.radius() > (1 + schedule.at(i + 1)) * idx[i + 2].instance.radius())) {
          ++structural;
        }
      }
      if (expired > 1 || (expired == 1 && idx.front().position >= s.window_start())) ++structural;
      const Aomeb& q = s.query();
      const double r = q.radius();
      for (std::size_t i = s.window_start(); i <= t; ++i) {
        if (testing::naive_distance(q.coreset().center(), pts[i - 1]) >
            kSwmebPlusHardBound * r + slack(r)) {
          ++coverage;
        }
      }
    }
  }
  return {structural == 0 && coverage == 0,
          fmt("50 streams, %.0f inserts, %.0f structural and %.0f coverage violations",
              static_cast<double>(inserts), static_cast<double>(structural),
              static_cast<double>(coverage))};
}

// 6 and 7 share one run.
struct DeskRun {
  bench::ExperimentResult result;
  double secs = 0.0;

  const bench::AlgorithmSummary& of(const char* name) const {
    for (const auto& s : result.summary) {
      if (s.algorithm == name) return s;
    }
    throw std::logic_error(std::string("missing summary for ") + name);
  }
};

DeskRun desk_run() {
  bench::RunConfig c;
  c.algorithms = {bench::Algorithm::swmebplus, bench::Algorithm::swmeb, bench::Algorithm::aomeb,
                  bench::Algorithm::coremeb};
  c.window = 10'000;
  c.batch = 100;
  c.checkpoints = 100;
  const auto t0 = Clock::now();
  DeskRun run{bench::run_experiment(c, bench::gen_synthetic(100'000, 50, 2024)), 0.0};
  run.secs = elapsed_s(t0);
  return run;
}

Outcome empirical_error(const DeskRun& run) {
  const double plus = run.of("swmebplus").mean_error;
  const double sw = run.of("swmeb").mean_error;
  bool floor_ok = true;
  for (const auto& row : run.result.rows) floor_ok = floor_ok && row.error >= kErrorFloor;
  return {plus <= kMeanErrorCap && sw <= kMeanErrorCap && floor_ok && run.secs < 600.0,
          fmt("mean eps' swmeb=%.3e swmebplus=%.3e (cap %.2f), run %.0fs (limit 600s)", sw, plus,
              kMeanErrorCap, run.secs)};
}

Outcome speed_ordering(const DeskRun& run) {
  const double plus = run.of("swmebplus").mean_update_ms;
  const double sw = run.of("swmeb").mean_update_ms;
  const double ao = run.of("aomeb").mean_update_ms;
  const double core = run.of("coremeb").mean_update_ms;
  const bool pass = plus <= sw && ao / plus >= kPlusOverAomeb && core / plus >= kPlusOverCoremeb;
  return {pass, fmt("ms/batch swmebplus=%.3f swmeb=%.3f; aomeb/swmebplus=%.1fx (need 10x), "
                    "coremeb/swmebplus=%.1fx (need 50x)",
                    plus, sw, ao / plus, core / plus)};
}

// 8. Kernel correctness.
Outcome kernel_checks() {
  std::mt19937_64 rng(1008);
  std::string failed;

  double worst_a = 0.0;
  for (int i = 0; i < 50; ++i) {
    const KernelSpec g = KernelSpec::gaussian(0.25 + 0.5 * i);
    const Point p = testing::random_point(rng, 1 + i % 6);
    const Point q = testing::random_point(rng, 1 + i % 6);
    const double k = std::exp(-std::pow(testing::naive_distance(p, q), 2) / g.gamma);
    const double r = solve_kernel_meb(std::vector<Point>{p, q}, g, 1e-12).second;
    worst_a = std::max(worst_a, std::abs(r - std::sqrt((1 - k) / 2)));
  }
  if (worst_a > kTwoPointTol) failed += " a";

  double worst_b = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto pts = testing::random_points(rng, 5 + i % 60, 1 + i % 10);
    const double r = solve_kernel_meb(pts, KernelSpec::linear(), 1e-10).second;
    worst_b = std::max(worst_b, std::abs(r - welzl_exact(pts).radius));
  }
  if (worst_b > kLinearKernelTol) failed += " b";

  AomebStats stats;
  std::uniform_int_distribution<std::size_t> n_dist(100, 800), m_dist(1, 10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = testing::random_points(rng, n_dist(rng), m_dist(rng));
    check_aomeb_stream(pts, 1e-3, KernelSpec::gaussian(estimate_gamma(pts)), stats);
  }
  if (stats.coverage_violations + stats.growth_violations > 0) failed += " c";

  const auto synth = bench::gen_synthetic(10'000, 50, 7);
  const double gamma = estimate_gamma(synth);
  if (std::abs(gamma - 100.0) > kGammaRelTol * 100.0) failed += " d";

  return {failed.empty(),
          fmt("(a) max err %.1e (b) max err %.1e (c) %.0f violations (d) gamma=%.2f", worst_a, worst_b,
              static_cast<double>(stats.coverage_violations + stats.growth_violations), gamma) +
              (failed.empty() ? "" : "; failed:" + failed)};
}

// 9. Exact-oracle properties of enclosing balls.
std::vector<Point> concat(std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Point> random_subset(std::mt19937_64& rng, const std::vector<Point>& pts,
                                 std::size_t k) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(k);
  std::sort(order.begin(), order.end());
  std::vector<Point> out;
  for (std::size_t i : order) out.push_back(pts[i]);
  return out;
}

std::vector<Point> cluster(std::mt19937_64& rng, std::size_t n, std::size_t m, double scale,
                           double offset) {
  const Point shift = testing::random_point(rng, m, offset);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = testing::random_point(rng, m, scale);
    std::vector<double> c(m);
    for (std::size_t k = 0; k < m; ++k) c[k] = p[k] + shift[k];
    out.emplace_back(std::move(c));
  }
  return out;
}

Outcome property_suite() {
  std::mt19937_64 rng(1009);
  std::size_t nesting = 0, smooth = 0;
  std::uniform_int_distribution<int> size(2, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p1 = testing::random_points(rng, static_cast<std::size_t>(size(rng)), 1 + trial % 5);
    std::uniform_int_distribution<std::size_t> k(1, p1.size() - 1);
    const auto p2 = random_subset(rng, p1, k(rng));
    const Ball b1 = welzl_exact(p1), b2 = welzl_exact(p2);
    const double d = testing::naive_distance(b1.center, b2.center);
    if (d * d > b1.radius * b1.radius - b2.radius * b2.radius + kPropertySlack) ++nesting;
  }
  std::uniform_real_distribution<double> scale(0.05, 3.0), offset(0.0, 6.0);
  std::uniform_int_distribution<int> csize(2, 25);
  int tested = 0;
  for (int trial = 0; tested < 1000; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const auto p1 = cluster(rng, static_cast<std::size_t>(csize(rng)), m, scale(rng), 0.0);
    std::uniform_int_distribution<std::size_t> k(2, p1.size());
    const auto p2 = random_subset(rng, p1, k(rng));
    const auto p3 = cluster(rng, static_cast<std::size_t>(csize(rng)), m, scale(rng), offset(rng));
    const double r2 = welzl_exact(p2).radius;
    if (r2 <= 1e-9) continue;
    ++tested;
    const double z = welzl_exact(p1).radius / r2;
    const double lhs = welzl_exact(concat(p1, p3)).radius / welzl_exact(concat(p2, p3)).radius;
    if (lhs > z + std::sqrt(2.0) / 2 + kPropertySlack) ++smooth;
  }
  // Adding p4 grows the three-point ball but not the ball of its two-point subset.
  const Point p1{0, 10}, p2{-1, 0}, p3{1, 0}, p4{0, -0.5};
  const std::vector<Point> big{p1, p2, p3}, small{p2, p3};
  const double gain_big = welzl_exact(concat(big, {p4})).radius - welzl_exact(big).radius;
  const double gain_small = welzl_exact(concat(small, {p4})).radius - welzl_exact(small).radius;
  const bool fixture = gain_small < gain_big;
  return {nesting == 0 && smooth == 0 && fixture,
          fmt("nesting %.0f/1000 and smoothness %.0f/1000 violations; fixture gains %.4f > %.4f",
              static_cast<double>(nesting), static_cast<double>(smooth), gain_big, gain_small)};
}

// 10. SSMEB sandwich.
Outcome ssmeb_sandwich() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<std::size_t> n_dist(10, 2000), m_dist(1, 12);
  std::size_t violations = 0, checks = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing::random_points(rng, n_dist(rng), m_dist(rng));
    Ssmeb s(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      s.update(pts[i]);
      if ((i + 1) % 250 != 0 && i + 1 != pts.size()) continue;
      const double exact = welzl_exact(std::span<const Point>(pts).first(i + 1)).radius;
      ++checks;
      worst = std::max(worst, s.radius() / exact);
      if (s.radius() < exact * (1 - kEta) || s.radius() > 1.5 * exact + kSsmebSlack) ++violations;
    }
  }
  return {violations == 0, fmt("200 streams, %.0f checks, %.0f violations, worst r/r*=%.4f",
                               static_cast<double>(checks), static_cast<double>(violations), worst)};
}

bool report(int number, const Outcome& o) {
  std::printf("CRITERION %d %s: %s\n", number, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, coremeb_coverage());

  double aomeb_secs = 0.0;
  const AomebStats ao = euclidean_aomeb_stats(aomeb_secs);
  all &= report(2, {ao.coverage_violations == 0 && aomeb_secs < 60.0,
                    fmt("200 streams, %.0f coverage violations, worst d/r=%.4f, %.1fs (limit 60s)",
                        static_cast<double>(ao.coverage_violations), ao.worst_ratio, aomeb_secs)});
  all &= report(3, {ao.growth_violations == 0,
                    fmt("%.0f growing updates, %.0f below 1+eps1^2/8",
                        static_cast<double>(ao.growths),
                        static_cast<double>(ao.growth_violations))});

  all &= report(4, swmeb_coverage());
  all &= report(5, swmebplus_invariants());

  const DeskRun run = desk_run();
  all &= report(6, empirical_error(run));
  all &= report(7, speed_ordering(run));

  all &= report(8, kernel_checks());
  all &= report(9, property_suite());
  all &= report(10, ssmeb_sandwich());
  return all ? 0 : 1;
}
