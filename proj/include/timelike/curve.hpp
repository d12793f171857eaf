#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "timelike/context.hpp"

namespace timelike {

/// Point and velocity of a curve at a parameter in [0, 1].
struct CurveSample {
  Vector point;
  Vector tangent;
};

class TimelikeCurve {
 public:
  using Evaluator = std::function<CurveSample(double)>;

  TimelikeCurve(Evaluator evaluator, int samples = 2048)
      : evaluator_(std::move(evaluator)), samples_(samples) {}

  CurveSample operator()(double t) const;
  int samples() const { return samples_; }
  TimelikeCurve with_samples(int n) const { return TimelikeCurve(evaluator_, n); }

  /// Geodesic from p to q in the chart.
  static TimelikeCurve segment(const Chart& chart, const Vector& p, const Vector& q);
  /// Piecewise linear through the vertices, uniform parameter per piece
  /// (euclidean).
  static TimelikeCurve polyline(std::vector<Vector> vertices);
  /// Cubic Hermite spline through points with given velocities (per piece,
  /// parameter rescaled to [0, 1]); euclidean.
  static TimelikeCurve hermite(std::vector<Vector> points, std::vector<Vector> tangents);
  /// Ambient curve pushed onto the chart: normalized onto the sphere or
  /// rescaled onto the hyperboloid; euclidean curves pass through.
  static TimelikeCurve on_chart(const Chart& chart, const TimelikeCurve& ambient);
  /// Geodesic chord plus sum_k amp_k sin(k pi t) * dir_k, pushed onto the chart.
  static TimelikeCurve bump(const Chart& chart, const Vector& p, const Vector& q,
                            std::vector<double> amplitudes, std::vector<Vector> directions);
  /// Restriction to [a, b], reparametrized over [0, 1].
  TimelikeCurve restricted(double a, double b) const;
  /// Composition with a monotone reparametrization phi of [0, 1].
  TimelikeCurve reparametrized(std::function<std::pair<double, double>(double)> phi) const;

 private:
  Evaluator evaluator_;
  int samples_;
};

/// Minkowski functional of the context at (x, v): P for Funk contexts,
/// P_H for Hilbert contexts. Zero for v = 0.
double context_functional(const TimelikeContext& ctx, const Vector& x, const Vector& v);

struct TimelikeCheck {
  bool timelike = true;
  std::optional<double> first_violation;
};

/// Checks the tangent at samples()+1 uniformly spaced parameters.
TimelikeCheck is_timelike(const TimelikeContext& ctx, const TimelikeCurve& curve);

/// Integral of the functional along the curve by adaptive Simpson with
/// Richardson stopping, absolute tolerance `tol`.
double curve_length(const TimelikeContext& ctx, const TimelikeCurve& curve, double tol = 1e-8);

/// F(p,q) for Funk contexts, H(p,q) for Hilbert contexts.
double context_distance(const TimelikeContext& ctx, const Vector& p, const Vector& q);

struct MaximalityReport {
  double chord = 0.0;        // distance of the pair
  double chord_length = 0.0; // quadrature along the geodesic chord
  int accepted = 0;
  int rejected = 0;          // perturbations that had to be shrunk
  double max_length = 0.0;
  double max_excess = 0.0;   // max(length - chord), may be negative
  bool passed = false;       // every accepted length <= chord + 1e-6
};

/// m random endpoint-fixed sine-bump perturbations of the chord with amplitude
/// at most epsilon; a perturbation that is not timelike is shrunk by halves
/// until it is.
MaximalityReport maximality_check(const TimelikeContext& ctx, const Vector& p, const Vector& q,
                                  int m, double epsilon, std::uint64_t seed);

}  // namespace timelike
