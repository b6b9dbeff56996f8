#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swmeb/coreset.hpp"
#include "swmeb/geometry.hpp"
#include "swmeb/kernel.hpp"

namespace swmeb::bench {

enum class Algorithm { coremeb, aomeb, swmeb, swmebplus, ssmeb };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);
// coremeb, aomeb and ssmeb have no deletions; they are re-run on the window.
bool is_restart(Algorithm a) noexcept;

struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

// "n,m,seed"
SyntheticSpec parse_synthetic(std::string_view text);

struct RunConfig {
  std::vector<Algorithm> algorithms = {Algorithm::swmebplus};
  bool gaussian = false;
  std::optional<double> gamma;  // nullopt: estimate from a sample
  std::size_t gamma_sample = 10'000;
  std::uint64_t gamma_seed = 1;
  std::size_t window = 100'000;
  std::size_t batch = 100;
  std::size_t partition = 0;   // 0: window / 10
  std::optional<double> eps1;  // nullopt: 1e-3 Euclidean, 1e-4 kernel
  double eps2 = 0.1;
  bool constant_eps2 = false;  // SWMEB+ uses eps2 for every rank instead of the schedule
  std::size_t checkpoints = 100;
  std::optional<std::filesystem::path> input;
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::filesystem::path> output;

  double resolved_eps1() const noexcept { return eps1 ? *eps1 : (gaussian ? 1e-4 : 1e-3); }
  std::size_t resolved_partition() const noexcept { return partition ? partition : window / 10; }
  // Throws InvalidConfig.
  void validate() const;
};

struct MetricRow {
  std::string algorithm;
  std::size_t t = 0;
  double error = 0.0;
  double update_ms = 0.0;
  std::size_t coreset_size = 0;
  std::size_t stored_points = 0;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "algorithm,t,error,update_ms,coreset_size,stored_points";

// One point per line, coordinates separated by single spaces. Blank lines
// are skipped. Dimension comes from the first line.
std::vector<Point> parse_dense_points(std::istream& in);
std::vector<Point> read_dense_points(const std::filesystem::path& path);
// Shortest round-trip decimal form.
void write_dense_points(std::ostream& out, std::span<const Point> points);

// Every coordinate drawn from N(0, 1).
std::vector<Point> gen_synthetic(std::size_t n, std::size_t m, std::uint64_t seed);

// Mean squared pairwise distance over at most `sample` points picked with `seed`.
double sampled_gamma(std::span<const Point> points, std::size_t sample, std::uint64_t seed);

// (max_{p in window} d(c, p) - exact_r) / exact_r.
double coreset_error(std::span<const Point> window, const Coreset& coreset, double exact_r);
double coreset_error(std::span<const Point> window, const Ball& ball, double exact_r);
// (r - exact_r) / exact_r, for baselines that report a ball rather than a coreset.
double radius_error(double radius, double exact_r);

// Exact Euclidean MEB within the Welzl dimension cap, else the Frank-Wolfe
// solver at tolerance 1e-9. Always the solver in a kernel space.
double exact_window_radius(std::span<const Point> window, const KernelSpec& space);
bool exact_reference_is_welzl(std::size_t m, const KernelSpec& space) noexcept;

struct AlgorithmSummary {
  std::string algorithm;
  double mean_update_ms = 0.0;
  double mean_error = 0.0;
  std::size_t updates_timed = 0;
};

struct ExperimentResult {
  std::vector<MetricRow> rows;  // grouped by checkpoint, algorithms in config order
  std::vector<AlgorithmSummary> summary;
  KernelSpec space;
  double eps1 = 0.0;
  std::size_t stream_length = 0;
  std::size_t dim = 0;
  std::string exact_reference;
  std::uint64_t negative_roundoff_events = 0;
};

// Batch-end positions t >= N where metrics are taken; exactly `count` of them,
// spread evenly and ending at the last full batch.
std::vector<std::size_t> checkpoint_positions(std::size_t stream_length, std::size_t window,
                                              std::size_t batch, std::size_t count);

ExperimentResult run_experiment(const RunConfig& config, std::span<const Point> stream);
// Loads the dataset named by the config, runs, and writes the CSV and
// manifest when config.output is set.
ExperimentResult run_experiment(const RunConfig& config);

void write_csv(std::ostream& out, std::span<const MetricRow> rows);
std::vector<MetricRow> read_csv(std::istream& in);
void write_manifest(std::ostream& out, const RunConfig& config, const ExperimentResult& result);

std::string_view library_version() noexcept;

}  // namespace swmeb::bench
