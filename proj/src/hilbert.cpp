#include "timelike/hilbert.hpp"

#include <cmath>

namespace timelike {

namespace {

void require_hilbert(const TimelikeContext& ctx) {
  if (ctx.is_funk()) fail(ErrorCode::unsupported, "expected a Hilbert context");
}

}  // namespace

HilbertValue hilbert_distance(const TimelikeContext& ctx, const Vector& p_in, const Vector& q_in) {
  require_hilbert(ctx);
  const Vector p = validate_point(ctx.chart(), p_in);
  const Vector q = validate_point(ctx.chart(), q_in);
  HilbertValue out;
  if ((p - q).norm() <= 1e-12) return out;
  if (!hilbert_precedes(ctx, p, q)) fail(ErrorCode::not_in_future, "q is not in the future of p");
  const FunkValue f2 = funk_distance(ctx.future(), p, q);
  const FunkValue f1 = funk_distance(ctx.past(), q, p);
  out.f2 = f2.distance;
  out.f1 = f1.distance;
  out.distance = out.f2 + out.f1;
  out.a2 = f2.hit->point;
  out.a1 = f1.hit->point;
  return out;
}

HilbertValue hilbert_distance_cross_ratio(const TimelikeContext& ctx, const Vector& p_in,
                                          const Vector& q_in) {
  require_hilbert(ctx);
  const Chart& chart = ctx.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  HilbertValue out;
  if ((p - q).norm() <= 1e-12) return out;
  if (!hilbert_precedes(ctx, p, q)) fail(ErrorCode::not_in_future, "q is not in the future of p");
  const auto a2 = ray_first_hit(ctx.future(), geodesic_through(chart, p, q));
  const auto a1 = ray_first_hit(ctx.past(), geodesic_through(chart, q, p));
  out.a1 = a1->point;
  out.a2 = a2->point;
  double ratio = 1.0;
  switch (chart.kind) {
    case ChartKind::euclidean: ratio = affine_cross_ratio(out.a1, p, q, out.a2); break;
    case ChartKind::spherical: ratio = spherical_cross_ratio(out.a1, p, q, out.a2); break;
    case ChartKind::hyperbolic:
      ratio = kernel_cross_ratio(chart.kind, chart_distance(chart, p, out.a2),
                                 chart_distance(chart, q, out.a1),
                                 chart_distance(chart, q, out.a2),
                                 chart_distance(chart, p, out.a1));
      break;
  }
  out.distance = std::log(ratio);
  return out;
}

FinslerValue hilbert_functional(const TimelikeContext& ctx, const Vector& p, const Vector& v) {
  require_hilbert(ctx);
  const FinslerValue forward = funk_functional(ctx.future(), p, v);
  const FinslerValue backward = funk_functional(ctx.past(), p, Vector(-v));
  return {forward.value + backward.value, forward.t_star};
}

double strip_closed_form(double a, double b) {
  if (!(a > -1.0 && a < 1.0 && b > -1.0 && b < 1.0))
    fail(ErrorCode::domain, "interval coordinates must lie in (-1, 1)");
  return std::log((a - 1.0) / (b - 1.0) * ((b + 1.0) / (a + 1.0)));
}

FunkLimit funk_limit_check(const ConvexBody& future, double a, const Vector& p, const Vector& q) {
  if (future.chart().kind != ChartKind::euclidean)
    fail(ErrorCode::unsupported, "the wall limit is built in euclidean charts");
  const int n = future.chart().dimension;
  if (!body_order(future, p, q)) fail(ErrorCode::precondition, "pair not ordered for the body");
  const ConvexBody wall = ConvexBody::half_space(Vector::Unit(n, 0), -a);
  const TimelikeContext ctx = TimelikeContext::hilbert(wall, future);
  if (!hilbert_precedes(ctx, p, q))
    fail(ErrorCode::precondition, "pair not ordered against the wall");
  FunkLimit out;
  out.hilbert = hilbert_distance(ctx, p, q).distance;
  out.funk = funk_distance(future, p, q).distance;
  out.gap = std::abs(out.hilbert - out.funk);
  return out;
}

}  // namespace timelike
