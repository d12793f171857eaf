#include "timelike/desitter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace timelike {

namespace {

void require_spherical_hilbert(const TimelikeContext& ctx) {
  if (ctx.kind() != ContextKind::spherical_hilbert &&
      ctx.kind() != ContextKind::projective_desitter)
    fail(ErrorCode::unsupported, "expected a spherical Hilbert or projective de Sitter context");
}

Matrix circle_plane(const Vector& p, const Vector& q) {
  Matrix plane(p.size(), 2);
  plane.col(0) = p;
  const Vector e2 = q - q.dot(p) * p;
  const double n = e2.norm();
  if (!(n > 1e-12)) fail(ErrorCode::ambiguous_geodesic, "points do not span a great circle");
  plane.col(1) = e2 / n;
  return plane;
}

}  // namespace

SphericalHilbertValue spherical_hilbert_distance(const TimelikeContext& ctx, const Vector& p_in,
                                                 const Vector& q_in) {
  require_spherical_hilbert(ctx);
  const Chart& chart = ctx.chart();
  SphericalHilbertValue out;
  out.p = validate_point(chart, p_in);
  out.q = validate_point(chart, q_in);
  if ((out.p - out.q).norm() <= 1e-12) return out;
  if (is_null_pair(ctx, out.p, out.q))
    fail(ErrorCode::null_chord, "the chord is tangent to the bodies; the pair is null");
  if (!hilbert_precedes(ctx, out.p, out.q))
    fail(ErrorCode::not_in_future, "q is not in the future of p");
  out.a2 = ray_first_hit(ctx.future(), geodesic_through(chart, out.p, out.q))->point;
  out.a1 = ray_first_hit(ctx.past(), geodesic_through(chart, out.q, out.p))->point;
  out.plane = circle_plane(out.p, out.q);
  out.distance = std::log(spherical_cross_ratio(out.a1, out.p, out.q, out.a2));
  return out;
}

SphericalHilbertValue null_chord_value(const TimelikeContext& ctx, const Vector& p_in,
                                       const Vector& q_in) {
  if (ctx.kind() != ContextKind::projective_desitter)
    fail(ErrorCode::unsupported, "null chords exist in projective de Sitter contexts only");
  SphericalHilbertValue out;
  out.p = validate_point(ctx.chart(), p_in);
  out.q = validate_point(ctx.chart(), q_in);
  if (!is_null_pair(ctx, out.p, out.q)) fail(ErrorCode::precondition, "the pair is not null");
  out.plane = circle_plane(out.p, out.q);
  const Vector& c = ctx.future().as_ball().center;
  const Vector touch = out.plane * (out.plane.transpose() * c);
  out.a2 = touch.normalized();
  out.a1 = -out.a2;
  out.distance = std::log(spherical_cross_ratio(out.a1, out.p, out.q, out.a2));
  return out;
}

ConvexBody antipodal_body(const ConvexBody& body) { return body.antipodal(); }

Vector gnomonic_project(const Vector& x) {
  if (x.size() < 2 || !(x(0) > 1e-9))
    fail(ErrorCode::projection_domain, "gnomonic projection needs x0 > 0");
  return x / x(0);
}

Vector gnomonic_lift(const Vector& y) {
  if (y.size() < 2 || !(std::abs(y(0) - 1.0) <= 1e-9))
    fail(ErrorCode::projection_domain, "gnomonic lift needs a point of the plane x0 = 1");
  return y.normalized();
}

Vector desitter_project(const Vector& x) {
  if (x.size() < 2 || !x.allFinite())
    fail(ErrorCode::coordinate_domain, "de Sitter points need at least two coordinates");
  if (!(std::abs(x(0)) > 1e-9))
    fail(ErrorCode::projection_domain, "the ray through x does not meet the plane x0 = 1");
  return x / x(0);
}

Vector validate_desitter_point(const Vector& x) {
  if (x.size() < 2 || !x.allFinite())
    fail(ErrorCode::coordinate_domain, "de Sitter points need at least two coordinates");
  if (!(std::abs(minkowski_dot(x, x) - 1.0) <= 1e-9))
    fail(ErrorCode::coordinate_domain, "point is not on the unit pseudo-sphere <x,x>_M = 1");
  return x;
}

Vector desitter_point(double t, int n) {
  Vector x = Vector::Zero(n + 1);
  x(0) = std::sinh(t);
  x(1) = std::cosh(t);
  return x;
}

double desitter_distance(const Vector& p_in, const Vector& q_in) {
  const Vector p = validate_desitter_point(p_in);
  const Vector q = validate_desitter_point(q_in);
  if (p.size() != q.size()) fail(ErrorCode::coordinate_domain, "mixed dimensions");
  if ((p - q).norm() <= 1e-12) return 0.0;
  const Vector diff = q - p;
  if (!(minkowski_dot(p, q) > 1.0 + 1e-12) || !(diff(0) > 0))
    fail(ErrorCode::not_timelike_separated, "the pair is not future timelike separated");
  // cosh d = <p,q>_M and <q-p,q-p>_M = 2 - 2 cosh d = -4 sinh^2(d/2).
  return 2.0 * std::asinh(0.5 * std::sqrt(-minkowski_dot(diff, diff)));
}

TimelikeContext desitter_context(int n) {
  const Chart chart = Chart::spherical(n);
  return TimelikeContext::projective_desitter(
      ConvexBody::ball(chart, -Vector::Unit(n + 1, 0), M_PI / 4));
}

DesitterReport desitter_isometry_check(const std::vector<DesitterPair>& pairs, double tolerance) {
  DesitterReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  std::map<int, TimelikeContext> contexts;
  bool ok = true;
  for (const auto& pair : pairs) {
    const int n = static_cast<int>(pair.p.size()) - 1;
    auto it = contexts.find(n);
    if (it == contexts.end()) it = contexts.emplace(n, desitter_context(n)).first;
    const TimelikeContext& ctx = it->second;
    const double d = desitter_distance(pair.p, pair.q);
    // Antipodes are identified; keep the representative on the side of x so
    // that pairs across x0 = 0 stay on one arc.
    const Vector pt = std::copysign(1.0, pair.p(0)) * gnomonic_lift(desitter_project(pair.p));
    const Vector qt = std::copysign(1.0, pair.q(0)) * gnomonic_lift(desitter_project(pair.q));
    ++rep.pairs;
    if (d == 0.0) {
      const double h = (pt - qt).norm() <= 1e-12 ? 0.0 : spherical_hilbert_distance(ctx, pt, qt).distance;
      rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(h));
      ok = ok && std::abs(h) <= tolerance;
      continue;
    }
    const SphericalHilbertValue h = spherical_hilbert_distance(ctx, pt, qt);
    const double rel = std::abs(h.distance - 2.0 * d) / (2.0 * d);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, rel);
    rep.min_ratio = std::min(rep.min_ratio, h.distance / d);
    rep.max_ratio = std::max(rep.max_ratio, h.distance / d);
    const double planar = affine_cross_ratio(h.a1 / h.a1(0), h.p / h.p(0), h.q / h.q(0),
                                             h.a2 / h.a2(0));
    const double cr_dev = std::abs(planar - std::exp(h.distance)) / planar;
    rep.max_cross_ratio_deviation = std::max(rep.max_cross_ratio_deviation, cr_dev);
    ok = ok && rel <= tolerance && cr_dev <= tolerance;
  }
  if (rep.pairs == 0 || !std::isfinite(rep.min_ratio)) rep.min_ratio = rep.max_ratio = 0.0;
  rep.passed = ok;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "observed H/d in [%.12g, %.12g]: the relation H = 2 d holds; the alternative "
                "statement d = 2 H is inconsistent with this factor",
                rep.min_ratio, rep.max_ratio);
  rep.note = buf;
  return rep;
}

Matrix lorentz_transform(int n, double angle, double boost) {
  Matrix rot = Matrix::Identity(n + 1, n + 1);
  if (n >= 2) {
    rot(1, 1) = std::cos(angle);
    rot(1, 2) = -std::sin(angle);
    rot(2, 1) = std::sin(angle);
    rot(2, 2) = std::cos(angle);
  }
  Matrix b = Matrix::Identity(n + 1, n + 1);
  b(0, 0) = b(1, 1) = std::cosh(boost);
  b(0, 1) = b(1, 0) = std::sinh(boost);
  return b * rot;
}

std::vector<NullDirection> null_directions(const TimelikeContext& ctx, const Vector& p_in,
                                           int count) {
  if (ctx.kind() != ContextKind::projective_desitter)
    fail(ErrorCode::unsupported, "null directions are defined for projective de Sitter contexts");
  if (!ctx.future().is_ball()) fail(ErrorCode::unsupported, "null directions need caps");
  const Chart& chart = ctx.chart();
  const Vector p = validate_point(chart, p_in);
  for (const ConvexBody* b : {&ctx.past(), &ctx.future()})
    if (contains(*b, p) != Containment::exterior)
      fail(ErrorCode::precondition, "p lies in a cap");
  const Ball& cap = ctx.future().as_ball();
  const double cr = std::cos(cap.radius);
  const double alpha = cap.center.dot(p);
  const Vector ct = cap.center - alpha * p;
  const Vector axis = ct / ct.norm();
  const double cos_phi = std::sqrt(std::max(0.0, (cr * cr - alpha * alpha) / (1.0 - alpha * alpha)));
  const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
  std::vector<NullDirection> out;
  const int m = chart.ambient_size();
  if (chart.dimension < 2) return out;
  // Orthonormal complement of span(p, axis).
  Matrix frame(m, 2);
  frame << p, axis;
  Eigen::HouseholderQR<Matrix> qr(frame);
  const Matrix q = qr.householderQ() * Matrix::Identity(m, m);
  const Matrix perp = q.rightCols(m - 2);
  std::vector<Vector> coeffs;
  if (chart.dimension == 2) {
    coeffs = {Vector::Constant(1, 1.0), Vector::Constant(1, -1.0)};
  } else {
    coeffs = spread_directions(chart.dimension - 1, count);
  }
  for (const Vector& c : coeffs) {
    NullDirection nd;
    nd.direction = cos_phi * axis + sin_phi * (perp * c);
    nd.certificate = std::abs(std::hypot(alpha, cap.center.dot(nd.direction)) - cr);
    out.push_back(std::move(nd));
  }
  return out;
}

}  // namespace timelike
