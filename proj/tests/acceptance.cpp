// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "timelike/cli.hpp"
#include "timelike/suite.hpp"

using namespace timelike;
using namespace timelike::properties;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kCases = 1000;

/// A property checked against a tolerance fixed here, not the one it reports.
struct Requirement {
  std::string property;
  double tolerance;
  long min_cases;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Requirement> requirements;
  Results results;
  std::string extra_failure;  // set when a non-numeric condition fails
  std::string extra_note;
};

const PropertyResult* find(const Results& results, const std::string& name) {
  for (const PropertyResult& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

Results join(std::initializer_list<Results> parts) {
  Results all;
  for (const Results& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

bool report(const Criterion& c) {
  bool ok = c.extra_failure.empty();
  std::string detail;
  char buf[256];
  for (const Requirement& q : c.requirements) {
    const PropertyResult* r = find(c.results, q.property);
    if (!r) {
      ok = false;
      detail += " " + q.property + "=missing";
      continue;
    }
    const bool good = r->cases >= q.min_cases && r->max_violation <= q.tolerance;
    ok = ok && good;
    std::snprintf(buf, sizeof buf, " %s=%.3g/%.0e(n=%ld)%s", q.property.c_str(), r->max_violation,
                  q.tolerance, r->cases, good ? "" : "!");
    detail += buf;
  }
  std::printf("criterion %2d: %s  %s:%s\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(),
              detail.c_str());
  if (!c.extra_failure.empty()) std::printf("    %s\n", c.extra_failure.c_str());
  if (!c.extra_note.empty()) std::printf("    %s\n", c.extra_note.c_str());
  std::fflush(stdout);
  return ok;
}

std::string run_check(int& status) {
  std::ostringstream out, err;
  status = run_cli({"check", "--seed", std::to_string(kSeed)}, out, err);
  return out.str();
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1,
                      "dual-form Funk agreement",
                      {{"funk.dual_forms", 1e-9, kCases}, {"hyperbolic.dual_forms", 1e-9, kCases}},
                      join({funk_dual_forms(kSeed, kCases, ChartMix::mixed, "funk"),
                            funk_dual_forms(kSeed, kCases, ChartMix::hyperbolic, "hyperbolic")}),
                      {},
                      {}});

  criteria.push_back({2,
                      "time inequality",
                      {{"funk.time_inequality", 1e-9, kCases},
                       {"funk.collinear_equality", 1e-9, kCases},
                       {"hilbert.time_inequality", 1e-9, kCases},
                       {"hilbert.collinear_equality", 1e-9, kCases}},
                      join({funk_time_inequality(kSeed, kCases, ChartMix::mixed, "funk"),
                            hilbert_time_inequality(kSeed, kCases, ChartMix::mixed, "hilbert")}),
                      {},
                      {}});

  criteria.push_back({3,
                      "order characterization",
                      {{"funk.order_equivalence", 0.0, kCases}, {"funk.transitivity", 0.0, 100}},
                      funk_order(kSeed, kCases),
                      {},
                      {}});

  criteria.push_back({4,
                      "Finsler consistency",
                      {{"funk.functional_forms", 1e-9, kCases},
                       {"funk.chord_quadrature", 1e-6, 50},
                       {"hilbert.chord_quadrature", 1e-6, 50}},
                      join({funk_functional_forms(kSeed, kCases, ChartMix::mixed, "funk"),
                            funk_chord_quadrature(kSeed, 50, ChartMix::mixed, "funk"),
                            hilbert_chord_quadrature(kSeed, 50, ChartMix::mixed, "hilbert")}),
                      {},
                      {}});

  // Cases count pairs; each pair gets 200 perturbations.
  criteria.push_back({5,
                      "maximality",
                      {{"funk.maximality", 1e-6, 4}, {"hilbert.maximality", 1e-6, 4}},
                      join({funk_maximality(kSeed, 4, 200), hilbert_maximality(kSeed, 4, 200)}),
                      {},
                      {}});

  criteria.push_back({6,
                      "future spheres",
                      {{"funk.future_spheres", 1e-9, 3 * 200}},
                      funk_future_spheres(kSeed, 200),
                      {},
                      {}});

  criteria.push_back({7,
                      "monotonicity and concavity",
                      {{"funk.monotonicity", 1e-12, 100}, {"funk.concavity", 1e-8, 100}},
                      join({funk_monotonicity(kSeed, 250), funk_concavity(kSeed, 100)}),
                      {},
                      {}});

  criteria.push_back({8,
                      "Hilbert closed forms",
                      {{"hilbert.strip_closed_form", 1e-9, 1},
                       {"hilbert.funk_limit_1e3", 1e-3, 1},
                       {"hilbert.funk_limit_1e6", 1e-6, 1}},
                      join({hilbert_strip(kSeed, kCases), hilbert_funk_limit()}),
                      {},
                      {}});

  criteria.push_back({9,
                      "spherical suite",
                      {{"spherical.rotation_invariance", 1e-9, kCases},
                       {"spherical.tangent_chords", 1e-9, kCases},
                       {"spherical.gnomonic_cross_ratio", 1e-9, 500}},
                      join({spherical_rotation(kSeed, kCases), spherical_tangent_chords(kSeed, kCases),
                            spherical_gnomonic(kSeed, kCases)}),
                      {},
                      {}});

  {
    Criterion c{10,
                "de Sitter identification",
                {{"desitter.isometry", 1e-9, kCases}, {"desitter.cross_ratio", 1e-9, kCases}},
                desitter_isometry(kSeed, kCases),
                {},
                {}};
    const PropertyResult* iso = find(c.results, "desitter.isometry");
    if (iso && iso->note.find("inconsistent") == std::string::npos)
      c.extra_failure = "the report does not flag the d = 2 H statement";
    else if (iso)
      c.extra_note = iso->note;
    criteria.push_back(std::move(c));
  }

  criteria.push_back({11,
                      "broken-segment geodesic",
                      {{"funk.broken_segment", 1e-9, 500}},
                      funk_broken_segment(kSeed, kCases),
                      {},
                      {}});

  {
    int first = 0, second = 0;
    const std::string a = run_check(first), b = run_check(second);
    Criterion c{12, "determinism of check --seed 7", {}, {}, {}, {}};
    if (a.empty() || a != b)
      c.extra_failure = "the two reports differ";
    else if (first != kExitOk || second != kExitOk)
      c.extra_failure = "the suite run did not pass";
    c.extra_note = std::to_string(a.size()) + " identical bytes in both runs";
    criteria.push_back(std::move(c));
  }

  int failed = 0;
  for (const Criterion& c : criteria) failed += report(c) ? 0 : 1;
  std::printf("acceptance: %d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
