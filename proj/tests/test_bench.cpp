#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swmeb/bench.hpp"
#include "swmeb/error.hpp"
#include "swmeb/meb_batch.hpp"
#include "test_support.hpp"

namespace swmeb::bench {
namespace {

std::vector<Point> normal_points(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testing::random_points(rng, n, m);
}

TEST(BenchIo, ParsesDensePoints) {
  std::istringstream in("1 2 3\n4 5 6\n");
  const auto pts = parse_dense_points(in);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], (Point{1, 2, 3}));
  EXPECT_EQ(pts[1], (Point{4, 5, 6}));
}

TEST(BenchIo, RaggedLineReportsLineNumber) {
  std::istringstream in("1 2\n3\n");
  try {
    parse_dense_points(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(BenchIo, BadTokenAndBlankLines) {
  std::istringstream blanks("\n1 2\n\n3 4\r\n");
  EXPECT_EQ(parse_dense_points(blanks).size(), 2u);
  std::istringstream bad("1 2\n3 x\n");
  EXPECT_THROW(parse_dense_points(bad), ParseError);
}

TEST(BenchIo, RoundTripIsExact) {
  const auto pts = normal_points(1000, 7, 11);
  std::stringstream buf;
  write_dense_points(buf, pts);
  EXPECT_EQ(parse_dense_points(buf), pts);
}

TEST(BenchData, SyntheticIsDeterministicAndCentred) {
  const auto a = gen_synthetic(4000, 5, 42);
  EXPECT_EQ(a, gen_synthetic(4000, 5, 42));
  EXPECT_NE(a, gen_synthetic(4000, 5, 43));
  for (std::size_t k = 0; k < 5; ++k) {
    double mean = 0.0;
    for (const Point& p : a) mean += p[k];
    mean /= 4000.0;
    EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(4000.0));
  }
}

TEST(BenchData, ParseSynthetic) {
  const SyntheticSpec s = parse_synthetic("100,3,9");
  EXPECT_EQ(s.n, 100u);
  EXPECT_EQ(s.m, 3u);
  EXPECT_EQ(s.seed, 9u);
  EXPECT_THROW(parse_synthetic("100,3"), InvalidConfig);
  EXPECT_THROW(parse_synthetic("0,3,1"), InvalidConfig);
}

TEST(BenchData, SampledGammaNearTwiceDimension) {
  // E|p - q|^2 = 2m for independent standard normals, so m = 50 gives 100.
  const auto pts = gen_synthetic(20000, 50, 3);
  const double g = sampled_gamma(pts, 10000, 1);
  EXPECT_NEAR(g, 100.0, 10.0);
}

TEST(BenchMetrics, CoresetErrorExamples) {
  const std::vector<Point> square{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const double r = std::sqrt(2.0);
  EXPECT_NEAR(coreset_error(square, Ball{Point{0, 0}, r}, r), 0.0, 1e-15);
  // The error depends on the centre only; a reported radius below r* does not matter.
  EXPECT_NEAR(coreset_error(square, Ball{Point{0, 0}, 0.9 * r}, r), 0.0, 1e-15);
  EXPECT_NEAR(coreset_error(square, Ball{Point{1, 0}, r}, r), (std::sqrt(5.0) - r) / r, 1e-12);
  EXPECT_NEAR(radius_error(1.1, 1.0), 0.1, 1e-12);
}

TEST(BenchMetrics, CoreMebErrorWithinEps) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = normal_points(500, 4, seed);
    const Coreset c = core_meb(pts, 1e-3);
    const double e = coreset_error(pts, c, welzl_exact(pts).radius);
    EXPECT_GE(e, -1e-9);
    EXPECT_LE(e, 1e-3);
  }
}

TEST(BenchMetrics, ZeroRadiusWindowIsDegenerate) {
  const std::vector<Point> same(5, Point{1, 1});
  EXPECT_THROW(coreset_error(same, Ball{Point{1, 1}, 0.0}, 0.0), DegenerateWindow);
  EXPECT_THROW(radius_error(1.0, 0.0), DegenerateWindow);
}

TEST(BenchMetrics, ExactRadiusDispatch) {
  EXPECT_TRUE(exact_reference_is_welzl(12, KernelSpec::linear()));
  EXPECT_FALSE(exact_reference_is_welzl(13, KernelSpec::linear()));
  EXPECT_FALSE(exact_reference_is_welzl(2, KernelSpec::gaussian(1.0)));
  const auto low = normal_points(300, 3, 5);
  EXPECT_DOUBLE_EQ(exact_window_radius(low, KernelSpec::linear()), welzl_exact(low).radius);
  // Above the cap the solver's lower bound is used; it is within 1e-9 of r*.
  const auto high = normal_points(300, 20, 5);
  const double r = exact_window_radius(high, KernelSpec::linear());
  const Coreset ref = solve_enclosing(high, KernelSpec::linear(), 1e-9);
  EXPECT_LE(r, ref.radius());
  EXPECT_GE(r * (1.0 + 1e-9), ref.radius());
}

TEST(BenchRun, CheckpointPositions) {
  const auto cps = checkpoint_positions(1000, 200, 10, 5);
  ASSERT_EQ(cps.size(), 5u);
  EXPECT_EQ(cps.front(), 200u);
  EXPECT_EQ(cps.back(), 1000u);
  for (std::size_t j = 1; j < cps.size(); ++j) {
    EXPECT_LT(cps[j - 1], cps[j]);
    EXPECT_EQ(cps[j] % 10, 0u);
  }
  EXPECT_THROW(checkpoint_positions(1000, 200, 10, 100), InvalidConfig);
  EXPECT_THROW(checkpoint_positions(100, 200, 10, 1), InvalidConfig);
}

RunConfig small_config() {
  RunConfig c;
  c.algorithms = {Algorithm::coremeb, Algorithm::aomeb, Algorithm::swmeb, Algorithm::swmebplus,
                  Algorithm::ssmeb};
  c.window = 200;
  c.batch = 10;
  c.checkpoints = 6;
  c.eps1 = 1e-2;
  return c;
}

TEST(BenchRun, RowsPerCheckpointAndAlgorithm) {
  const auto stream = gen_synthetic(600, 3, 1);
  const ExperimentResult r = run_experiment(small_config(), stream);
  ASSERT_EQ(r.rows.size(), 6u * 5u);
  EXPECT_EQ(r.exact_reference, "welzl");
  EXPECT_EQ(r.summary.size(), 5u);
  for (const MetricRow& row : r.rows) {
    EXPECT_GE(row.error, -1e-9) << row.algorithm;
    EXPECT_GE(row.update_ms, 0.0);
    EXPECT_GT(row.coreset_size, 0u);
  }
  // CoreMEB is a (1 + eps1)-coreset of every window.
  for (const MetricRow& row : r.rows) {
    if (row.algorithm == "coremeb") EXPECT_LE(row.error, 1e-2);
  }
}

TEST(BenchRun, ErrorColumnsAreDeterministic) {
  const auto stream = gen_synthetic(600, 3, 2);
  RunConfig c = small_config();
  c.gaussian = true;
  const ExperimentResult a = run_experiment(c, stream);
  const ExperimentResult b = run_experiment(c, stream);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].algorithm, b.rows[i].algorithm);
    EXPECT_EQ(a.rows[i].t, b.rows[i].t);
    EXPECT_EQ(a.rows[i].error, b.rows[i].error);
    EXPECT_EQ(a.rows[i].coreset_size, b.rows[i].coreset_size);
    EXPECT_EQ(a.rows[i].stored_points, b.rows[i].stored_points);
  }
  EXPECT_EQ(a.space.gamma, b.space.gamma);
}

TEST(BenchRun, CsvRoundTrip) {
  const auto stream = gen_synthetic(400, 2, 3);
  const ExperimentResult r = run_experiment(small_config(), stream);
  std::stringstream buf;
  write_csv(buf, r.rows);
  EXPECT_EQ(read_csv(buf), r.rows);
  std::istringstream wrong("a,b\n");
  EXPECT_THROW(read_csv(wrong), ParseError);
}

TEST(BenchRun, WritesCsvAndManifest) {
  const auto dir = std::filesystem::temp_directory_path() / "swmeb_bench_test";
  std::filesystem::create_directories(dir);
  RunConfig c = small_config();
  c.algorithms = {Algorithm::swmebplus};
  c.synthetic = SyntheticSpec{400, 2, 4};
  c.output = dir / "out.csv";
  run_experiment(c);
  EXPECT_TRUE(std::filesystem::exists(dir / "out.csv"));
  std::ifstream manifest(dir / "out.csv.manifest");
  std::stringstream text;
  text << manifest.rdbuf();
  EXPECT_NE(text.str().find("synthetic_seed=4"), std::string::npos);
  EXPECT_NE(text.str().find("exact_reference=welzl"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(BenchConfig, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.resolved_eps1(), 1e-3);
  c.gaussian = true;
  EXPECT_DOUBLE_EQ(c.resolved_eps1(), 1e-4);
  c = RunConfig{};
  c.batch = 7;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = RunConfig{};
  c.algorithms = {Algorithm::swmeb};
  c.partition = 30'000;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = RunConfig{};
  c.algorithms.clear();
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = RunConfig{};
  c.gamma = -1.0;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = RunConfig{};
  EXPECT_THROW(run_experiment(c), InvalidConfig);  // no dataset
  EXPECT_THROW(parse_algorithm("nope"), InvalidConfig);
  EXPECT_EQ(parse_algorithm("swmebplus"), Algorithm::swmebplus);
}

}  // namespace
}  // namespace swmeb::bench
