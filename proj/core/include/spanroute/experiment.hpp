#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spanroute {

/// Frozen lightness constant: wt(G) / wt(T) <= k^2 (log2 n / log2 k + 2) * C.
/// Calibrated once over every tree shape, n = 2^7..2^13, k in {4, 8, 16},
/// seeds 1..3: the largest ratio was 0.2228 (path, k = 4, n = 8192), rounded
/// up to 0.25. Not retuned afterwards.
inline constexpr double kLightnessConstant = 0.25;

struct ExperimentConfig {
  /// A tree shape, "grid-points", "uniform-points" or "explicit".
  std::string generator = "random-recursive-tree";
  std::size_t n = 100;
  std::size_t k = 4;
  double gamma = 8.0;
  std::uint64_t seed = 1;
  /// Sampled ordered pairs; nullopt routes every ordered pair.
  std::optional<std::size_t> pairs;
  /// Branching factor of balanced-b-ary.
  std::size_t branching = 2;
  /// Run the brute-force oracles. Off, only the report columns are filled.
  bool verify = true;
  /// Shortest-path and net-structure oracles run only up to this size.
  std::size_t oracle_limit = 2000;
};

bool is_point_generator(const std::string& generator);

/// Throws std::invalid_argument naming the bad field.
void validate(const ExperimentConfig& cfg);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct StatsRow {
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  /// "k" for trees, "gamma" for point sets.
  std::string param_name;
  double param = 0.0;
  std::size_t edges = 0;
  /// wt(G)/wt(T) for trees, wt(H)/wt(MST) for point sets.
  double lightness = 0.0;
  std::size_t max_degree = 0;
  /// Max degree of the input tree; unset for point sets.
  std::optional<std::size_t> input_max_degree;
  std::size_t max_hops = 0;
  double mean_hops = 0.0;
  double max_stretch = 0.0;
  double mean_stretch = 0.0;
  std::size_t max_label_bits = 0;
  /// Longest canonical sequence (largest over light subtrees for point sets).
  std::size_t max_sequence = 0;
  std::size_t pairs = 0;
  double wall_ms = 0.0;
  std::vector<Check> checks;

  bool passed() const;
  const Check* check(const std::string& name) const;
};

struct StatsReport {
  std::vector<StatsRow> rows;

  bool passed() const;
  /// One line per failed check: property, instance and seed.
  std::vector<std::string> failures() const;
};

StatsRow run_experiment(const ExperimentConfig& cfg);
StatsReport run_sweep(const std::vector<ExperimentConfig>& configs);

/// Tab-separated, header first. Check columns are the union over rows in
/// first-seen order; a row without that check prints "-". The wall-time
/// column is written only when asked, since it breaks byte-identical output.
void write_report(std::ostream& out, const StatsReport& report,
                  bool with_timing = false);

/// Growth of max hops against log2 n over a size sweep.
struct GrowthCheck {
  /// Least-squares slope of hops on log2 n.
  double slope = 0.0;
  /// Largest hops(2n)/hops(n) among the larger half of the sweep.
  double worst_doubling_ratio = 0.0;
  bool passed = true;
};

/// Fails when some consecutive pair in the upper half of the sweep (sizes
/// ascending) has a hop ratio above max_ratio per doubling of n.
GrowthCheck check_log_growth(const std::vector<std::pair<std::size_t, std::size_t>>& n_hops,
                             double max_ratio = 1.5);

}  // namespace spanroute
