#include "timelike/funk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "timelike/random.hpp"

namespace timelike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_point(const Vector& p, const Vector& q) { return (p - q).norm() <= 1e-12; }

const ConvexBody& funk_body(const TimelikeContext& ctx) {
  if (!ctx.is_funk()) fail(ErrorCode::unsupported, "expected a Funk context");
  if (ctx.chart().kind == ChartKind::spherical)
    fail(ErrorCode::unsupported, "there is no timelike Funk metric on the sphere");
  return ctx.body();
}

OrderWitness require_order(const ConvexBody& body, const Vector& p, const Vector& q) {
  auto w = body_order(body, p, q);
  if (!w) fail(ErrorCode::not_in_future, "q is not in the future of p");
  return *w;
}

/// Validated tangent vector at p; non-euclidean vectors must already be
/// tangent.
Vector tangent_at(const Chart& chart, const Vector& p, const Vector& v) {
  if (v.size() != chart.ambient_size())
    fail(ErrorCode::coordinate_domain, "tangent vector has the wrong size");
  if (!v.allFinite()) fail(ErrorCode::coordinate_domain, "non-finite tangent vector");
  if (chart.kind != ChartKind::euclidean &&
      std::abs(chart_dot(chart.kind, p, v)) > 1e-9 * (1.0 + v.norm()))
    fail(ErrorCode::coordinate_domain, "vector is not tangent to the chart at p");
  return v;
}

struct DirectionHit {
  double norm = 0.0;
  std::optional<RayHit> hit;
};

DirectionHit direction_hit(const ConvexBody& body, const Vector& p, const Vector& v) {
  const Chart& chart = body.chart();
  const double norm = tangent_norm(chart.kind, v);
  if (norm == 0.0) return {0.0, std::nullopt};
  const auto hit = ray_first_hit(body, GeodesicRay(chart, p, v));
  if (!hit || !hit->transversal)
    fail(ErrorCode::not_timelike_direction, "the ray along v does not cross the body transversally");
  return {norm, hit};
}

}  // namespace

FunkValue funk_distance(const ConvexBody& body, const Vector& p_in, const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if (same_point(p, q)) return {};
  const OrderWitness w = require_order(body, p, q);
  const double d_pb = w.hit.t;
  const double d_qb = chart_distance(chart, q, w.hit.point);
  FunkValue out;
  out.distance = std::log(distance_kernel(chart.kind, d_pb) / distance_kernel(chart.kind, d_qb));
  out.hit = w.hit;
  out.t_q = w.t_q;
  return out;
}

FunkValue funk_distance_variational(const ConvexBody& body, const Vector& p_in,
                                    const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if (same_point(p, q)) return {};
  const OrderWitness w = require_order(body, p, q);
  const RatioInfimum inf = ratio_infimum(body, p, q);
  FunkValue out;
  out.distance = inf.value;
  out.argmin = inf.argmin;
  out.t_q = w.t_q;
  return out;
}

FinslerValue funk_functional(const ConvexBody& body, const Vector& p_in, const Vector& v_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector v = tangent_at(chart, p, v_in);
  const DirectionHit dh = direction_hit(body, p, v);
  if (!dh.hit) return {0.0, kInf};
  return {dh.norm / tangent_kernel(chart.kind, dh.hit->t), dh.hit->t};
}

FinslerValue funk_functional_variational(const ConvexBody& body, const Vector& p_in,
                                         const Vector& v_in) {
  const Chart& chart = body.chart();
  if (!body.is_polytope())
    fail(ErrorCode::unsupported, "the variational functional needs a finite face family");
  const Vector p = validate_point(chart, p_in);
  const Vector v = tangent_at(chart, p, v_in);
  const DirectionHit dh = direction_hit(body, p, v);
  if (!dh.hit) return {0.0, kInf};
  double best = kInf;
  const HyperplaneFamily family = separating_hyperplanes(body, p);
  for (const auto& plane : family.finite()) {
    // Unit normal at p, pointing toward the plane (signed value decreasing).
    Vector eta;
    if (chart.kind == ChartKind::euclidean) {
      eta = -plane.normal();
    } else {
      const Vector tangential = tangent_projection(chart, p, plane.normal());
      eta = -tangential / tangent_norm(chart.kind, tangential);
    }
    const double d = hyperplane_distance(chart, p, plane);
    best = std::min(best, chart_dot(chart.kind, v, eta) / tangent_kernel(chart.kind, d));
  }
  return {best, dh.hit->t};
}

FunkValue funk_distance(const TimelikeContext& ctx, const Vector& p, const Vector& q) {
  return funk_distance(funk_body(ctx), p, q);
}

FunkValue funk_distance_variational(const TimelikeContext& ctx, const Vector& p,
                                    const Vector& q) {
  return funk_distance_variational(funk_body(ctx), p, q);
}

FinslerValue funk_functional(const TimelikeContext& ctx, const Vector& p, const Vector& v) {
  return funk_functional(funk_body(ctx), p, v);
}

FinslerValue funk_functional_variational(const TimelikeContext& ctx, const Vector& p,
                                         const Vector& v) {
  return funk_functional_variational(funk_body(ctx), p, v);
}

double funk_variational_over_p(const ConvexBody& body, const Vector& p_in, const Vector& q_in) {
  if (!body.is_polytope()) fail(ErrorCode::unsupported, "needs a finite face family");
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  double best = kInf;
  const HyperplaneFamily family = separating_hyperplanes(body, p);
  for (const auto& plane : family.finite()) {
    const double sq = plane.signed_value(q);
    if (sq > 0) best = std::min(best, std::log(plane.signed_value(p) / sq));
  }
  return best;
}

// ---------------------------------------------------------------------------

SpherePoint future_sphere_point(const TimelikeContext& ctx, const Vector& p_in, double r,
                                const Vector& direction) {
  const ConvexBody& body = funk_body(ctx);
  if (ctx.chart().kind != ChartKind::euclidean)
    fail(ErrorCode::unsupported, "future spheres are built in euclidean charts");
  if (!(r > 0) || !std::isfinite(r)) fail(ErrorCode::domain, "sphere radius must be positive");
  const Vector p = validate_point(ctx.chart(), p_in);
  const DirectionHit dh = direction_hit(body, p, direction);
  if (!dh.hit) fail(ErrorCode::degenerate_ray, "zero direction");
  const Vector& b = dh.hit->point;
  const double keep = std::exp(-r);
  SpherePoint out;
  out.point = -std::expm1(-r) * b + keep * p;
  out.boundary = b;
  out.residual = std::abs(funk_distance(body, p, out.point).distance - r);
  return out;
}

std::vector<SpherePoint> future_sphere_sample(const TimelikeContext& ctx, const Vector& p_in,
                                              double r, int count) {
  const ConvexBody& body = funk_body(ctx);
  if (count < 0) fail(ErrorCode::domain, "count must be nonnegative");
  const Vector p = validate_point(ctx.chart(), p_in);
  if (contains(body, p) != Containment::exterior)
    fail(ErrorCode::precondition, "apex is not exterior to the body");
  std::vector<SpherePoint> out;
  const Vector& w = body.interior_point();
  for (const Vector& dir : spread_directions(ctx.chart().dimension, count)) {
    const auto exit = body.boundary_point_from_interior(dir);
    const Vector target = exit ? Vector(w + 0.5 * (*exit - w)) : Vector(w + dir);
    SpherePoint s = future_sphere_point(ctx, p, r, target - p);
    if (!(s.residual <= 1e-9))
      fail(ErrorCode::degenerate_configuration, "future-sphere point failed its re-evaluation");
    out.push_back(std::move(s));
  }
  return out;
}

MonotonicityReport funk_monotonicity_check(const ConvexBody& inner, const ConvexBody& outer,
                                           const Vector& p, const Vector& q) {
  if (!(inner.chart() == outer.chart()))
    fail(ErrorCode::chart_mismatch, "bodies live in different charts");
  for (const Vector& b : sample_boundary(inner, 1000))
    if (contains(outer, b) == Containment::exterior)
      fail(ErrorCode::precondition, "the outer body does not contain the inner body");
  if (!body_order(inner, p, q) || !body_order(outer, p, q))
    fail(ErrorCode::precondition, "the pair is not ordered for both bodies");
  MonotonicityReport rep;
  rep.inner = funk_distance(inner, p, q).distance;
  rep.outer = funk_distance(outer, p, q).distance;
  rep.holds = rep.outer >= rep.inner - 1e-12;
  return rep;
}

std::vector<Vector> spread_directions(int n, int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  Rng rng(0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < count; ++i) {
    Vector d(n);
    if (n == 1) {
      d(0) = i % 2 == 0 ? 1.0 : -1.0;
    } else if (n == 2) {
      const double a = 2.0 * M_PI * (i + 0.5) / count;
      d << std::cos(a), std::sin(a);
    } else if (n == 3) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = M_PI * (3.0 - std::sqrt(5.0)) * i;
      d << rad * std::cos(a), rad * std::sin(a), z;
    } else {
      d = rng.unit_vector(n);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Vector> sample_boundary(const ConvexBody& body, int count) {
  const Chart& chart = body.chart();
  const Matrix basis = chart.kind == ChartKind::euclidean
                           ? Matrix(Matrix::Identity(chart.dimension, chart.dimension))
                           : tangent_basis(chart, body.interior_point());
  std::vector<Vector> out;
  for (const Vector& d : spread_directions(chart.dimension, count))
    if (auto b = body.boundary_point_from_interior(basis * d)) out.push_back(std::move(*b));
  return out;
}

}  // namespace timelike
