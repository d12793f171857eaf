#include "timelike/context.hpp"

#include <cmath>

namespace timelike {

std::string_view to_string(ContextKind kind) {
  switch (kind) {
    case ContextKind::funk: return "funk";
    case ContextKind::hilbert: return "hilbert";
    case ContextKind::spherical_hilbert: return "spherical_hilbert";
    case ContextKind::projective_desitter: return "projective_desitter";
  }
  return "funk";
}

ContextKind context_kind_from_string(std::string_view name) {
  for (auto k : {ContextKind::funk, ContextKind::hilbert, ContextKind::spherical_hilbert,
                 ContextKind::projective_desitter})
    if (to_string(k) == name) return k;
  fail(ErrorCode::validation, "unknown context kind '" + std::string(name) + "'");
}

std::string_view to_string(PairClass c) {
  switch (c) {
    case PairClass::timelike: return "timelike";
    case PairClass::null: return "null";
    case PairClass::unrelated: return "unrelated";
    case PairClass::coincident: return "coincident";
  }
  return "unrelated";
}

namespace {

void require_disjoint(const ConvexBody& past, const ConvexBody& future) {
  if (!(past.chart() == future.chart()))
    fail(ErrorCode::chart_mismatch, "past and future bodies live in different charts");
  const double gap = separation_lower_bound(past, future);
  if (!(gap >= kDisjointnessGap))
    fail(ErrorCode::validation,
         "past and future bodies are not certified disjoint (gap lower bound " +
             std::to_string(gap) + ")");
}

void require_exterior(const ConvexBody& body, const Vector& x, const char* name) {
  if (contains(body, x) != Containment::exterior)
    fail(ErrorCode::precondition, std::string(name) + " is not exterior to the body");
}

bool coincident(const Vector& p, const Vector& q) { return (p - q).norm() <= 1e-12; }

}  // namespace

TimelikeContext TimelikeContext::funk(ConvexBody body) {
  return TimelikeContext(ContextKind::funk, std::move(body), std::nullopt);
}

TimelikeContext TimelikeContext::hilbert(ConvexBody past, ConvexBody future) {
  if (past.chart().kind == ChartKind::spherical)
    return spherical_hilbert(std::move(past), std::move(future));
  require_disjoint(past, future);
  return TimelikeContext(ContextKind::hilbert, std::move(future), std::move(past));
}

TimelikeContext TimelikeContext::spherical_hilbert(ConvexBody past, ConvexBody future) {
  if (past.chart().kind != ChartKind::spherical || future.chart().kind != ChartKind::spherical)
    fail(ErrorCode::unsupported, "spherical Hilbert contexts need spherical bodies");
  require_disjoint(past, future);
  return TimelikeContext(ContextKind::spherical_hilbert, std::move(future), std::move(past));
}

TimelikeContext TimelikeContext::projective_desitter(ConvexBody past) {
  if (past.chart().kind != ChartKind::spherical)
    fail(ErrorCode::unsupported, "projective de Sitter contexts need a spherical body");
  ConvexBody future = past.antipodal();
  require_disjoint(past, future);
  return TimelikeContext(ContextKind::projective_desitter, std::move(future), std::move(past));
}

const ConvexBody& TimelikeContext::past() const {
  if (!past_) fail(ErrorCode::unsupported, "Funk contexts have no past body");
  return *past_;
}

std::optional<OrderWitness> body_order(const ConvexBody& body, const Vector& p_in,
                                       const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  require_exterior(body, p, "p");
  require_exterior(body, q, "q");
  if (coincident(p, q)) return std::nullopt;
  GeodesicRay ray;
  try {
    ray = geodesic_through(chart, p, q);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ambiguous_geodesic) return std::nullopt;
    throw;
  }
  const auto hit = ray_first_hit(body, ray);
  if (!hit || !hit->transversal) return std::nullopt;
  const double t_q = chart_distance(chart, p, q);
  if (!(t_q < hit->t - kBetweenness)) return std::nullopt;
  return OrderWitness{ray, *hit, t_q};
}

bool funk_precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q) {
  if (!ctx.is_funk()) fail(ErrorCode::unsupported, "funk_precedes needs a Funk context");
  if (ctx.chart().kind == ChartKind::spherical) return false;
  return body_order(ctx.body(), p, q).has_value();
}

bool inclusion_precedes(const TimelikeContext& ctx, const Vector& p_in, const Vector& q_in) {
  if (!ctx.is_funk()) fail(ErrorCode::unsupported, "inclusion_precedes needs a Funk context");
  const ConvexBody& body = ctx.body();
  if (!body.is_polytope())
    fail(ErrorCode::unsupported, "the inclusion test needs a finite face family");
  if (ctx.chart().kind == ChartKind::spherical) return false;
  const Vector p = validate_point(ctx.chart(), p_in);
  const Vector q = validate_point(ctx.chart(), q_in);
  require_exterior(body, p, "p");
  require_exterior(body, q, "q");
  if (coincident(p, q)) return false;
  for (const auto& face : body.faces())
    if (face.signed_value(q) > kSeparationMargin && !(face.signed_value(p) > kSeparationMargin))
      return false;
  const auto hit = ray_first_hit(body, geodesic_through(ctx.chart(), p, q));
  return hit && hit->transversal;
}

bool hilbert_precedes(const TimelikeContext& ctx, const Vector& p_in, const Vector& q_in) {
  if (ctx.is_funk()) fail(ErrorCode::unsupported, "hilbert_precedes needs a Hilbert context");
  const Chart& chart = ctx.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  for (const ConvexBody* b : {&ctx.past(), &ctx.future()}) {
    require_exterior(*b, p, "p");
    require_exterior(*b, q, "q");
  }
  const auto forward = body_order(ctx.future(), p, q);
  if (!forward) return false;
  const auto backward = body_order(ctx.past(), q, p);
  if (!backward) return false;
  // The open chord (a1, a2) must avoid both closures.
  if (const auto h = ray_first_hit(ctx.past(), forward->ray); h && h->t < forward->hit.t)
    return false;
  if (const auto h = ray_first_hit(ctx.future(), backward->ray); h && h->t < backward->hit.t)
    return false;
  if (chart.kind == ChartKind::spherical) {
    const double chord = forward->hit.t + backward->hit.t - forward->t_q;
    if (!(chord < M_PI)) return false;
  }
  return true;
}

bool precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q) {
  return ctx.is_funk() ? funk_precedes(ctx, p, q) : hilbert_precedes(ctx, p, q);
}

bool is_null_pair(const TimelikeContext& ctx, const Vector& p_in, const Vector& q_in) {
  if (ctx.kind() != ContextKind::projective_desitter) return false;
  if (!ctx.past().is_ball())
    fail(ErrorCode::unsupported, "null classification is implemented for caps only");
  const Vector p = validate_point(ctx.chart(), p_in);
  const Vector q = validate_point(ctx.chart(), q_in);
  const Vector e2 = q - q.dot(p) * p;
  const double n2 = e2.norm();
  if (coincident(p, q) || !(n2 > 1e-12)) return false;
  const Ball& cap = ctx.past().as_ball();
  const double reach = std::hypot(cap.center.dot(p), cap.center.dot(e2 / n2));
  return std::abs(reach - std::cos(cap.radius)) <= 1e-9;
}

PairClass classify_pair(const TimelikeContext& ctx, const Vector& p, const Vector& q) {
  if (coincident(validate_point(ctx.chart(), p), validate_point(ctx.chart(), q)))
    return PairClass::coincident;
  // Tangency within tolerance wins over a round-off sized transversal chord.
  if (ctx.kind() == ContextKind::projective_desitter && is_null_pair(ctx, p, q))
    return PairClass::null;
  if (precedes(ctx, p, q)) return PairClass::timelike;
  return PairClass::unrelated;
}

bool cone_without_segment(const ConvexBody& body, const Vector& p_in, const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if (coincident(p, q)) return false;
  const auto hit = ray_first_hit(body, geodesic_through(chart, p, q));
  if (!hit || !hit->transversal) return false;
  return !(chart_distance(chart, p, q) < hit->t - kBetweenness);
}

}  // namespace timelike
