#pragma once

// Seeded property suites. Each property draws from its own generator, seeded
// from the run seed and the property name, so results do not depend on which
// other properties run alongside it.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace timelike {

struct PropertyResult {
  std::string name;
  long cases = 0;            // instances actually evaluated
  double max_violation = 0;  // largest observed excess over the exact relation
  double tolerance = 0;      // pass threshold for max_violation
  bool passed = false;
  bool diagnostic = false;   // reported only, never fails a suite
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<PropertyResult> properties;
  bool passed = false;
  double wall_seconds = 0;  // never part of the formatted report
};

/// Chart families a property is drawn from.
enum class ChartMix { euclidean, hyperbolic, mixed, spherical };

namespace properties {

using Results = std::vector<PropertyResult>;

Results funk_dual_forms(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
Results funk_functional_forms(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
/// Generic chains (inequality) and collinear chains (equality).
Results funk_time_inequality(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
/// Ray-hit order vs hyperplane-family inclusion, and transitivity.
Results funk_order(std::uint64_t seed, int cases);
Results funk_chord_quadrature(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
Results funk_maximality(std::uint64_t seed, int pairs, int perturbations);
Results funk_future_spheres(std::uint64_t seed, int cases);
Results funk_monotonicity(std::uint64_t seed, int cases);
Results funk_concavity(std::uint64_t seed, int segments);
Results funk_broken_segment(std::uint64_t seed, int cases);
Results funk_diagnostics(std::uint64_t seed, int cases);
Results hyperbolic_wall_example();

Results hilbert_cross_ratio(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
Results hilbert_time_inequality(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
Results hilbert_strip(std::uint64_t seed, int cases);
Results hilbert_funk_limit();
Results hilbert_chord_quadrature(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix);
Results hilbert_maximality(std::uint64_t seed, int pairs, int perturbations);

Results spherical_rotation(std::uint64_t seed, int cases);
Results spherical_tangent_chords(std::uint64_t seed, int cases);
Results spherical_gnomonic(std::uint64_t seed, int cases);

Results desitter_isometry(std::uint64_t seed, int cases);
Results desitter_null_classification(std::uint64_t seed, int cases);

}  // namespace properties

/// "funk", "hilbert", "spherical", "hyperbolic", "desitter" and "all".
const std::vector<std::string>& suite_names();

/// Runs a suite. `cases` sets the size of the main random samples; costly
/// properties (quadrature, maximality) use proportionally fewer instances.
SuiteReport run_suite(std::string_view suite, std::uint64_t seed, int cases);

/// "text", "csv" or "json". The wall time is left out so that reports are
/// byte-stable for a fixed seed.
std::string format_report(const SuiteReport& report, std::string_view format);

}  // namespace timelike
