#pragma once

#include <optional>
#include <vector>

#include "timelike/context.hpp"

namespace timelike {

struct FunkValue {
  double distance = 0.0;
  /// First boundary hit b(p,q) along the ray p -> q (boundary-hit form).
  std::optional<RayHit> hit;
  double t_q = 0.0;  // chart distance p -> q
  /// Minimizing hyperplane of the variational form.
  std::optional<Hyperplane> argmin;
};

struct FinslerValue {
  double value = 0.0;
  /// Arc length from p to the first hit along v (infinite when v = 0).
  double t_star = 0.0;
};

// Body-level forms, valid in every chart (the spherical kernel is only used
// through Hilbert contexts).

/// log(k(d(p,b)) / k(d(q,b))) with b the first hit of the ray p -> q.
FunkValue funk_distance(const ConvexBody& body, const Vector& p, const Vector& q);
FunkValue funk_distance_variational(const ConvexBody& body, const Vector& p, const Vector& q);
/// |v| / T(t*) with T the chart's tangent kernel.
FinslerValue funk_functional(const ConvexBody& body, const Vector& p, const Vector& v);
/// Minimum over P(p) of <v, eta> / T(d(p, pi)), eta the unit normal at p
/// pointing toward pi. Polytopes only.
FinslerValue funk_functional_variational(const ConvexBody& body, const Vector& p,
                                         const Vector& v);

// Context forms. Spherical Funk contexts are rejected.

FunkValue funk_distance(const TimelikeContext& ctx, const Vector& p, const Vector& q);
FunkValue funk_distance_variational(const TimelikeContext& ctx, const Vector& p,
                                    const Vector& q);
FinslerValue funk_functional(const TimelikeContext& ctx, const Vector& p, const Vector& v);
FinslerValue funk_functional_variational(const TimelikeContext& ctx, const Vector& p,
                                         const Vector& v);

/// Variational value over P(p) instead of P(q), for comparison.
double funk_variational_over_p(const ConvexBody& body, const Vector& p, const Vector& q);

struct SpherePoint {
  Vector point;
  Vector boundary;  // the visible boundary point it was dilated from
  double residual = 0.0;  // |F(p, point) - r|
};

/// q = (1 - e^-r) b + e^-r p for the first hit b of the ray from p along
/// `direction` (euclidean Funk contexts).
SpherePoint future_sphere_point(const TimelikeContext& ctx, const Vector& p, double r,
                                const Vector& direction);
/// `count` points on the future sphere of radius r, from directions toward
/// interior samples of the body. Each point is re-evaluated and must match r
/// within 1e-9.
std::vector<SpherePoint> future_sphere_sample(const TimelikeContext& ctx, const Vector& p,
                                              double r, int count);

struct MonotonicityReport {
  double inner = 0.0;  // F for the smaller body
  double outer = 0.0;  // F for the enclosing body
  bool holds = false;  // outer >= inner - 1e-12
};

/// Compares Funk distances for nested bodies inner within outer. Containment
/// is checked on 1000 sampled boundary points of the inner body.
MonotonicityReport funk_monotonicity_check(const ConvexBody& inner, const ConvexBody& outer,
                                           const Vector& p, const Vector& q);

/// Points on the boundary of a body, reached from its interior witness along
/// `count` spread-out directions; directions in which the body is unbounded
/// are skipped.
std::vector<Vector> sample_boundary(const ConvexBody& body, int count);

/// Unit directions spread over the sphere S^{n-1} (deterministic).
std::vector<Vector> spread_directions(int n, int count);

}  // namespace timelike
