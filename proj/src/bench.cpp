#include "swmeb/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "swmeb/aomeb.hpp"
#include "swmeb/error.hpp"
#include "swmeb/meb_batch.hpp"
#include "swmeb/ssmeb.hpp"
#include "swmeb/swmeb.hpp"
#include "swmeb/swmeb_plus.hpp"

#ifndef SWMEB_VERSION
#define SWMEB_VERSION "0.0.0"
#endif

namespace swmeb::bench {

namespace {

constexpr double kExactTolerance = 1e-9;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = line.find(sep, begin);
    out.push_back(line.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Timer {
  double interval_ms = 0.0;
  std::size_t interval_updates = 0;
  double total_ms = 0.0;
  std::size_t total_updates = 0;

  void add(double ms) {
    interval_ms += ms;
    ++interval_updates;
    total_ms += ms;
    ++total_updates;
  }
  double take_interval_mean() {
    const double mean = interval_updates ? interval_ms / static_cast<double>(interval_updates) : 0.0;
    interval_ms = 0.0;
    interval_updates = 0;
    return mean;
  }
};

struct Measurement {
  double error;
  std::size_t coreset_size;
  std::size_t stored_points;
};

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::coremeb: return "coremeb";
    case Algorithm::aomeb: return "aomeb";
    case Algorithm::swmeb: return "swmeb";
    case Algorithm::swmebplus: return "swmebplus";
    case Algorithm::ssmeb: return "ssmeb";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::coremeb, Algorithm::aomeb, Algorithm::swmeb, Algorithm::swmebplus,
                      Algorithm::ssmeb}) {
    if (name == to_string(a)) return a;
  }
  throw InvalidConfig("unknown algorithm '" + std::string(name) + "'");
}

bool is_restart(Algorithm a) noexcept {
  return a == Algorithm::coremeb || a == Algorithm::aomeb || a == Algorithm::ssmeb;
}

SyntheticSpec parse_synthetic(std::string_view text) {
  const auto parts = split(text, ',');
  SyntheticSpec spec;
  if (parts.size() != 3 || !parse_number(parts[0], spec.n) || !parse_number(parts[1], spec.m) ||
      !parse_number(parts[2], spec.seed)) {
    throw InvalidConfig("synthetic spec must be n,m,seed");
  }
  if (spec.n == 0 || spec.m == 0) throw InvalidConfig("synthetic n and m must be positive");
  return spec;
}

void RunConfig::validate() const {
  if (algorithms.empty()) throw InvalidConfig("no algorithm selected");
  if (window == 0 || batch == 0) throw InvalidConfig("window and batch must be positive");
  if (window % batch != 0) throw InvalidConfig("batch size must divide the window size");
  const double e1 = resolved_eps1();
  if (!(e1 > 0.0 && e1 < 1.0)) throw InvalidConfig("eps1 must lie in (0, 1)");
  if (!(eps2 > 0.0 && eps2 < 1.0)) throw InvalidConfig("eps2 must lie in (0, 1)");
  if (checkpoints == 0) throw InvalidConfig("checkpoints must be positive");
  if (gamma && !(*gamma > 0.0)) throw InvalidConfig("gamma must be positive");
  if (gaussian && !gamma && gamma_sample < 2) throw InvalidConfig("gamma sample needs 2 points");
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::swmeb) != algorithms.end()) {
    const std::size_t l = resolved_partition();
    if (l == 0 || window % l != 0) throw InvalidConfig("partition size must divide the window size");
    if (l % batch != 0) throw InvalidConfig("batch size must divide the partition size");
  }
}

std::vector<Point> parse_dense_points(std::istream& in) {
  std::vector<Point> points;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim_cr(line);
    if (view.find_first_not_of(" \t") == std::string_view::npos) continue;
    coords.clear();
    std::size_t pos = 0;
    while (pos < view.size()) {
      const std::size_t begin = view.find_first_not_of(" \t", pos);
      if (begin == std::string_view::npos) break;
      std::size_t end = view.find_first_of(" \t", begin);
      if (end == std::string_view::npos) end = view.size();
      double value = 0.0;
      if (!parse_number(view.substr(begin, end - begin), value) || !std::isfinite(value)) {
        throw ParseError("bad number '" + std::string(view.substr(begin, end - begin)) + "'",
                         line_no);
      }
      coords.push_back(value);
      pos = end;
    }
    if (dim == 0) dim = coords.size();
    if (coords.size() != dim) {
      throw ParseError("expected " + std::to_string(dim) + " coordinates, found " +
                           std::to_string(coords.size()),
                       line_no);
    }
    points.emplace_back(coords);
  }
  return points;
}

std::vector<Point> read_dense_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return parse_dense_points(in);
}

void write_dense_points(std::ostream& out, std::span<const Point> points) {
  std::string line;
  for (const Point& p : points) {
    line.clear();
    for (std::size_t k = 0; k < p.dim(); ++k) {
      if (k > 0) line += ' ';
      line += format_double(p[k]);
    }
    line += '\n';
    out << line;
  }
}

std::vector<Point> gen_synthetic(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw InvalidInput("n and m must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(n);
  std::vector<double> c(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : c) x = normal(rng);
    out.emplace_back(c);
  }
  return out;
}

double sampled_gamma(std::span<const Point> points, std::size_t sample, std::uint64_t seed) {
  if (points.size() <= sample) return estimate_gamma(points);
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> picked;
  picked.reserve(sample);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), sample, rng);
  std::vector<Point> subset;
  subset.reserve(sample);
  for (std::size_t i : picked) subset.push_back(points[i]);
  return estimate_gamma(subset);
}

double coreset_error(std::span<const Point> window, const Coreset& coreset, double exact_r) {
  if (!(exact_r > 0.0)) throw DegenerateWindow("window has zero radius");
  double furthest = 0.0;
  for (const Point& p : window) furthest = std::max(furthest, coreset.distance(p));
  return (furthest - exact_r) / exact_r;
}

double coreset_error(std::span<const Point> window, const Ball& ball, double exact_r) {
  if (!(exact_r > 0.0)) throw DegenerateWindow("window has zero radius");
  double furthest = 0.0;
  for (const Point& p : window) furthest = std::max(furthest, distance(ball.center, p));
  return (furthest - exact_r) / exact_r;
}

double radius_error(double radius, double exact_r) {
  if (!(exact_r > 0.0)) throw DegenerateWindow("window has zero radius");
  return (radius - exact_r) / exact_r;
}

bool exact_reference_is_welzl(std::size_t m, const KernelSpec& space) noexcept {
  return space.is_linear() && m <= kWelzlMaxDim;
}

double exact_window_radius(std::span<const Point> window, const KernelSpec& space) {
  if (window.empty()) throw InvalidInput("empty window");
  if (exact_reference_is_welzl(window.front().dim(), space)) return welzl_exact(window).radius;
  return solve_enclosing(window, space, kExactTolerance).dual_radius();
}

std::vector<std::size_t> checkpoint_positions(std::size_t stream_length, std::size_t window,
                                              std::size_t batch, std::size_t count) {
  if (batch == 0 || window % batch != 0) throw InvalidConfig("batch size must divide the window size");
  if (count == 0) throw InvalidConfig("checkpoints must be positive");
  if (stream_length < window) throw InvalidConfig("stream is shorter than the window");
  const std::size_t first = window / batch;
  const std::size_t last = stream_length / batch;
  const std::size_t candidates = last - first + 1;
  if (count > candidates) {
    throw InvalidConfig("only " + std::to_string(candidates) + " full-window batch ends exist, " +
                        std::to_string(count) + " checkpoints requested");
  }
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t offset = count == 1 ? candidates - 1 : j * (candidates - 1) / (count - 1);
    out.push_back((first + offset) * batch);
  }
  return out;
}

ExperimentResult run_experiment(const RunConfig& config, std::span<const Point> stream) {
  config.validate();
  if (stream.empty()) throw InvalidInput("empty stream");
  const std::size_t n = stream.size();
  const std::size_t m = stream.front().dim();
  const std::vector<std::size_t> checkpoints =
      checkpoint_positions(n, config.window, config.batch, config.checkpoints);

  ExperimentResult result;
  result.eps1 = config.resolved_eps1();
  result.stream_length = n;
  result.dim = m;
  if (config.gaussian) {
    const double gamma =
        config.gamma ? *config.gamma : sampled_gamma(stream, config.gamma_sample, config.gamma_seed);
    result.space = KernelSpec::gaussian(gamma);
  }
  const KernelSpec& space = result.space;
  result.exact_reference = exact_reference_is_welzl(m, space)
                               ? "welzl"
                               : "frank-wolfe@" + format_double(kExactTolerance);
  const std::uint64_t roundoff_before = negative_roundoff_events();

  const double eps1 = result.eps1;
  const std::size_t b = config.batch;
  std::optional<Swmeb> sw;
  std::optional<SwmebPlus> swp;
  std::vector<Timer> timers(config.algorithms.size());
  std::vector<double> error_sums(config.algorithms.size(), 0.0);
  for (Algorithm a : config.algorithms) {
    if (a == Algorithm::swmeb && !sw) {
      sw.emplace(SwmebParams{.window = config.window,
                             .partition = config.resolved_partition(),
                             .eps1 = eps1,
                             .eps2 = config.eps2,
                             .batch = b,
                             .space = space});
    } else if (a == Algorithm::swmebplus && !swp) {
      swp.emplace(SwmebPlusParams{
          .window = config.window,
          .eps1 = eps1,
          .eps2 = config.constant_eps2 ? Eps2Schedule::constant(config.eps2)
                                       : Eps2Schedule::geometric(eps1),
          .batch = b,
          .space = space});
    }
  }

  std::size_t next_checkpoint = 0;
  const std::size_t batches = checkpoints.back() / b;
  for (std::size_t k = 0; k < batches; ++k) {
    const std::size_t t = (k + 1) * b;
    const auto batch = stream.subspan(k * b, b);
    for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
      const Algorithm a = config.algorithms[i];
      if (is_restart(a)) continue;
      const auto start = Clock::now();
      if (a == Algorithm::swmeb) {
        sw->insert_batch(batch);
      } else {
        swp->insert_batch(batch);
      }
      timers[i].add(elapsed_ms(start));
    }
    if (t != checkpoints[next_checkpoint]) continue;
    ++next_checkpoint;

    const auto window = stream.subspan(t - config.window, config.window);
    const double exact_r = exact_window_radius(window, space);
    for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
      const Algorithm a = config.algorithms[i];
      Measurement meas{};
      double update_ms = 0.0;
      switch (a) {
        case Algorithm::coremeb: {
          const auto start = Clock::now();
          const Coreset cs = core_meb(window, eps1, space);
          update_ms = elapsed_ms(start);
          meas = {coreset_error(window, cs, exact_r), cs.size(), window.size()};
          break;
        }
        case Algorithm::aomeb: {
          const auto start = Clock::now();
          Aomeb inst = Aomeb::start_batch(eps1, window.first(b), t - config.window + 1, space);
          for (std::size_t s = b; s < window.size(); s += b) {
            inst.update_batch(window.subspan(s, b), t - config.window + 1 + s);
          }
          update_ms = elapsed_ms(start);
          meas = {coreset_error(window, inst.coreset(), exact_r), inst.coreset().size(),
                  window.size()};
          break;
        }
        case Algorithm::ssmeb: {
          const auto start = Clock::now();
          Ssmeb inst(window.front(), space);
          for (std::size_t s = 1; s < window.size(); ++s) inst.update(window[s]);
          update_ms = elapsed_ms(start);
          meas = {radius_error(inst.radius(), exact_r), inst.stored_points(), window.size()};
          break;
        }
        case Algorithm::swmeb: {
          const Aomeb& q = sw->query();
          meas = {coreset_error(window, q.coreset(), exact_r), q.coreset().size(),
                  sw->stored_points()};
          break;
        }
        case Algorithm::swmebplus: {
          const Aomeb& q = swp->query();
          meas = {coreset_error(window, q.coreset(), exact_r), q.coreset().size(),
                  swp->stored_points()};
          break;
        }
      }
      if (is_restart(a)) timers[i].add(update_ms);
      update_ms = timers[i].take_interval_mean();
      error_sums[i] += meas.error;
      result.rows.push_back(MetricRow{std::string(to_string(a)), t, meas.error, update_ms,
                                      meas.coreset_size, meas.stored_points});
    }
  }

  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    const Timer& timer = timers[i];
    result.summary.push_back(AlgorithmSummary{
        std::string(to_string(config.algorithms[i])),
        timer.total_updates ? timer.total_ms / static_cast<double>(timer.total_updates) : 0.0,
        error_sums[i] / static_cast<double>(checkpoints.size()), timer.total_updates});
  }
  result.negative_roundoff_events = negative_roundoff_events() - roundoff_before;
  return result;
}

ExperimentResult run_experiment(const RunConfig& config) {
  config.validate();
  if (config.input.has_value() == config.synthetic.has_value()) {
    throw InvalidConfig("give exactly one of an input file or a synthetic spec");
  }
  const std::vector<Point> stream =
      config.input ? read_dense_points(*config.input)
                   : gen_synthetic(config.synthetic->n, config.synthetic->m, config.synthetic->seed);
  ExperimentResult result = run_experiment(config, stream);
  if (config.output) {
    std::ofstream csv(*config.output);
    if (!csv) throw InvalidInput("cannot write " + config.output->string());
    write_csv(csv, result.rows);
    std::ofstream manifest(config.output->string() + ".manifest");
    if (!manifest) throw InvalidInput("cannot write manifest for " + config.output->string());
    write_manifest(manifest, config, result);
  }
  return result;
}

void write_csv(std::ostream& out, std::span<const MetricRow> rows) {
  out << kCsvHeader << '\n';
  for (const MetricRow& r : rows) {
    out << r.algorithm << ',' << r.t << ',' << format_double(r.error) << ','
        << format_double(r.update_ms) << ',' << r.coreset_size << ',' << r.stored_points << '\n';
  }
}

std::vector<MetricRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != kCsvHeader) {
    throw ParseError("missing or wrong CSV header", 1);
  }
  std::vector<MetricRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim_cr(line);
    if (view.empty()) continue;
    const auto fields = split(view, ',');
    MetricRow row;
    if (fields.size() != 6) throw ParseError("expected 6 fields", line_no);
    row.algorithm = std::string(fields[0]);
    if (!parse_number(fields[1], row.t) || !parse_number(fields[2], row.error) ||
        !parse_number(fields[3], row.update_ms) || !parse_number(fields[4], row.coreset_size) ||
        !parse_number(fields[5], row.stored_points)) {
      throw ParseError("bad numeric field", line_no);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_manifest(std::ostream& out, const RunConfig& config, const ExperimentResult& result) {
  std::string algos;
  for (Algorithm a : config.algorithms) {
    if (!algos.empty()) algos += ',';
    algos += to_string(a);
  }
  out << "version=" << library_version() << '\n';
  out << "algorithms=" << algos << '\n';
  out << "space=" << result.space.describe() << '\n';
  if (config.gaussian) {
    out << "gamma_source=" << (config.gamma ? "given" : "estimated") << '\n';
    if (!config.gamma) {
      out << "gamma_sample=" << config.gamma_sample << '\n';
      out << "gamma_seed=" << config.gamma_seed << '\n';
    }
  }
  if (config.input) out << "dataset=" << config.input->string() << '\n';
  if (config.synthetic) {
    out << "dataset=synthetic\n";
    out << "synthetic_n=" << config.synthetic->n << '\n';
    out << "synthetic_m=" << config.synthetic->m << '\n';
    out << "synthetic_seed=" << config.synthetic->seed << '\n';
  }
  out << "stream_length=" << result.stream_length << '\n';
  out << "dim=" << result.dim << '\n';
  out << "window=" << config.window << '\n';
  out << "batch=" << config.batch << '\n';
  out << "partition=" << config.resolved_partition() << '\n';
  out << "eps1=" << format_double(result.eps1) << '\n';
  out << "eps2=" << format_double(config.eps2) << '\n';
  out << "eps2_schedule=" << (config.constant_eps2 ? "constant" : "geometric") << '\n';
  out << "checkpoints=" << config.checkpoints << '\n';
  out << "exact_reference=" << result.exact_reference << '\n';
  out << "timing_clock=steady_clock\n";
  out << "negative_roundoff_events=" << result.negative_roundoff_events << '\n';
  for (const AlgorithmSummary& s : result.summary) {
    out << "mean_update_ms." << s.algorithm << '=' << format_double(s.mean_update_ms) << '\n';
    out << "mean_error." << s.algorithm << '=' << format_double(s.mean_error) << '\n';
  }
}

std::string_view library_version() noexcept { return SWMEB_VERSION; }

}  // namespace swmeb::bench
