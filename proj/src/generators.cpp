#include "timelike/generators.hpp"

#include <cmath>

namespace timelike {

namespace {

constexpr int kMaxTries = 2000;

Vector random_tangent(const Chart& chart, const Vector& at, Rng& rng) {
  while (true) {
    const Vector v = tangent_projection(chart, at, rng.normal_vector(chart.ambient_size()));
    const double n = tangent_norm(chart.kind, v);
    if (n > 1e-6) return v / n;
  }
}

Vector base_point(const Chart& chart) {
  return chart.kind == ChartKind::euclidean ? Vector(Vector::Zero(chart.dimension))
                                            : Vector(Vector::Unit(chart.ambient_size(), 0));
}

/// Body centered near the chart's base point.
ConvexBody body_at_base(const Chart& chart, Rng& rng, BodyShape shape) {
  const int n = chart.dimension;
  const bool ball = shape == BodyShape::ball || (shape == BodyShape::any && rng.uniform() < 0.5);
  const Vector base = base_point(chart);
  if (ball) {
    switch (chart.kind) {
      case ChartKind::euclidean:
        return ConvexBody::ball(chart, 0.2 * rng.normal_vector(n), rng.uniform(0.5, 1.5));
      case ChartKind::hyperbolic:
        return ConvexBody::ball(chart, lift_klein(0.2 * rng.uniform() * rng.unit_vector(n)),
                                rng.uniform(0.3, 1.0));
      case ChartKind::spherical:
        return ConvexBody::ball(chart, base, rng.uniform(0.2, 0.9));
    }
  }
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    const int k = n + 1 + static_cast<int>(rng.index(4));
    std::vector<Hyperplane> faces;
    for (int i = 0; i < k; ++i) {
      const Vector u = rng.unit_vector(n);
      Vector normal(chart.ambient_size());
      switch (chart.kind) {
        case ChartKind::euclidean:
          faces.emplace_back(chart, u, rng.uniform(0.5, 1.5));
          continue;
        case ChartKind::hyperbolic:
          normal << rng.uniform(0.2, 0.7), u;
          break;
        case ChartKind::spherical: {
          const double alpha = rng.uniform(0.5, 1.2);
          normal << -std::cos(alpha), std::sin(alpha) * u;
          break;
        }
      }
      faces.emplace_back(chart, normal);
    }
    try {
      std::optional<Vector> hemisphere;
      if (chart.kind == ChartKind::spherical) hemisphere = base;
      return ConvexBody::polytope(chart, faces, std::nullopt, hemisphere);
    } catch (const Error&) {
      // Not inside the hemisphere or empty; draw again.
    }
  }
  fail(ErrorCode::degenerate_configuration, "could not draw a random polytope");
}

Matrix boost(int n, double rapidity) {
  Matrix b = Matrix::Identity(n + 1, n + 1);
  b(0, 0) = b(1, 1) = std::cosh(rapidity);
  b(0, 1) = b(1, 0) = std::sinh(rapidity);
  return b;
}

/// Orthogonal map of the spatial block (hyperbolic) or of everything
/// (spherical).
Matrix random_isometry(const Chart& chart, Rng& rng) {
  const int m = chart.ambient_size();
  if (chart.kind == ChartKind::spherical) return rng.orthogonal(m);
  Matrix out = Matrix::Identity(m, m);
  out.bottomRightCorner(m - 1, m - 1) = rng.orthogonal(m - 1);
  return out;
}

}  // namespace

ConvexBody random_body(const Chart& chart, Rng& rng, BodyShape shape) {
  ConvexBody body = body_at_base(chart, rng, shape);
  if (chart.kind == ChartKind::euclidean) return body;
  return body.transformed(random_isometry(chart, rng));
}

Vector random_point_near(const ConvexBody& body, Rng& rng, double lo, double hi) {
  const Chart& chart = body.chart();
  const Vector& w = body.interior_point();
  const Vector u = random_tangent(chart, w, rng);
  if (chart.kind == ChartKind::spherical) hi = std::min(hi, M_PI - 0.2);
  const double d = rng.uniform(lo, hi);
  return chart.kind == ChartKind::euclidean ? Vector(w + d * u) : exponential_map(chart, w, u, d);
}

Vector random_exterior_point(const ConvexBody& body, Rng& rng, double lo, double hi) {
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    const Vector p = random_point_near(body, rng, lo, hi + attempt * 0.01);
    if (contains(body, p) == Containment::exterior) return p;
  }
  fail(ErrorCode::degenerate_configuration, "could not draw an exterior point");
}

Vector random_interior_point(const ConvexBody& body, Rng& rng) {
  double reach = body.is_ball() ? 0.8 * body.as_ball().radius : 0.5;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    const Vector p = random_point_near(body, rng, 0.0, reach);
    if (contains(body, p) == Containment::interior) return p;
    reach *= 0.9;
  }
  return body.interior_point();
}

std::optional<Vector> random_successor(const ConvexBody& body, const Vector& p, Rng& rng,
                                       double lo, double hi) {
  const Chart& chart = body.chart();
  const Vector target = random_interior_point(body, rng);
  const GeodesicRay ray = chart.kind == ChartKind::euclidean
                              ? GeodesicRay(chart, p, target - p)
                              : geodesic_through(chart, p, target);
  const auto hit = ray_first_hit(body, ray);
  if (!hit || !hit->transversal) return std::nullopt;
  const Vector q = ray.at(rng.uniform(lo, hi) * hit->t);
  if (!body_order(body, p, q)) return std::nullopt;
  return q;
}

OrderedPair random_funk_pair(const ConvexBody& body, Rng& rng) {
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    const Vector p = random_exterior_point(body, rng);
    if (auto q = random_successor(body, p, rng)) return {p, *q};
  }
  fail(ErrorCode::degenerate_configuration, "could not draw an ordered pair");
}

OrderedChain random_funk_chain(const ConvexBody& body, Rng& rng, bool collinear) {
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    const OrderedPair pq = random_funk_pair(body, rng);
    std::optional<Vector> r;
    if (collinear) {
      const auto w = body_order(body, pq.p, pq.q);
      r = w->ray.at(w->t_q + rng.uniform(0.05, 0.95) * (w->hit.t - w->t_q));
      if (!body_order(body, pq.q, *r)) r.reset();
    } else {
      r = random_successor(body, pq.q, rng);
    }
    if (r && body_order(body, pq.p, *r)) return {pq.p, pq.q, *r};
  }
  fail(ErrorCode::degenerate_configuration, "could not draw an ordered chain");
}

TimelikeContext random_hilbert_context(const Chart& chart, Rng& rng, BodyShape shape) {
  const int n = chart.dimension;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    try {
      switch (chart.kind) {
        case ChartKind::euclidean: {
          const Vector e = rng.unit_vector(n);
          if (shape == BodyShape::any && rng.uniform() < 0.2) {
            // A pair of parallel walls.
            return TimelikeContext::hilbert(ConvexBody::half_space(e, -rng.uniform(0.5, 2.0)),
                                            ConvexBody::half_space(-e, -rng.uniform(0.5, 2.0)));
          }
          const ConvexBody k1 = body_at_base(chart, rng, shape).translated(-rng.uniform(2.5, 4) * e);
          const ConvexBody k2 = body_at_base(chart, rng, shape).translated(rng.uniform(2.5, 4) * e);
          return TimelikeContext::hilbert(k1, k2);
        }
        case ChartKind::hyperbolic: {
          const Matrix iso = random_isometry(chart, rng);
          const ConvexBody k1 = body_at_base(chart, rng, shape).transformed(iso * boost(n, -2.0));
          const ConvexBody k2 = body_at_base(chart, rng, shape).transformed(iso * boost(n, 2.0));
          return TimelikeContext::hilbert(k1, k2);
        }
        case ChartKind::spherical: {
          const Matrix iso = random_isometry(chart, rng);
          Matrix flip = Matrix::Identity(n + 1, n + 1);
          const double a = M_PI - rng.uniform(0.0, 0.4);
          flip(0, 0) = flip(1, 1) = std::cos(a);
          flip(1, 0) = std::sin(a);
          flip(0, 1) = -std::sin(a);
          const ConvexBody k1 = body_at_base(chart, rng, shape).transformed(iso * flip);
          const ConvexBody k2 = body_at_base(chart, rng, shape).transformed(iso);
          return TimelikeContext::spherical_hilbert(k1, k2);
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::validation) throw;
    }
  }
  fail(ErrorCode::degenerate_configuration, "could not draw a Hilbert context");
}

std::optional<OrderedPair> random_hilbert_pair(const TimelikeContext& ctx, Rng& rng) {
  const Chart& chart = ctx.chart();
  for (int attempt = 0; attempt < 400; ++attempt) {
    const Vector y1 = random_interior_point(ctx.past(), rng);
    const Vector y2 = random_interior_point(ctx.future(), rng);
    if ((y1 - y2).norm() < 1e-6) continue;
    const GeodesicRay line = chart.kind == ChartKind::euclidean
                                 ? GeodesicRay(chart, y1, y2 - y1)
                                 : geodesic_through(chart, y1, y2);
    const double length = chart_distance(chart, y1, y2);
    const Vector p = line.at(rng.uniform(0.05, 0.95) * length);
    if (contains(ctx.past(), p) != Containment::exterior ||
        contains(ctx.future(), p) != Containment::exterior)
      continue;
    const auto q = random_successor(ctx.future(), p, rng);
    if (!q || contains(ctx.past(), *q) != Containment::exterior) continue;
    if (hilbert_precedes(ctx, p, *q)) return OrderedPair{p, *q};
  }
  return std::nullopt;
}

std::optional<OrderedChain> random_hilbert_chain(const TimelikeContext& ctx, Rng& rng,
                                                 bool collinear) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) continue;
    std::optional<Vector> r;
    if (collinear) {
      const auto w = body_order(ctx.future(), pq->p, pq->q);
      r = w->ray.at(w->t_q + rng.uniform(0.05, 0.95) * (w->hit.t - w->t_q));
    } else {
      r = random_successor(ctx.future(), pq->q, rng);
    }
    if (!r || contains(ctx.past(), *r) != Containment::exterior) continue;
    if (hilbert_precedes(ctx, pq->q, *r) && hilbert_precedes(ctx, pq->p, *r))
      return OrderedChain{pq->p, pq->q, *r};
  }
  return std::nullopt;
}

DesitterPair random_desitter_pair(Rng& rng, int n, bool transport) {
  while (true) {
    double t1 = rng.uniform(-2.5, 2.5), t2 = rng.uniform(-2.5, 2.5);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 1e-3) continue;
    Vector p = desitter_point(t1, n), q = desitter_point(t2, n);
    if (transport && n == 2) {
      const Matrix l = lorentz_transform(2, rng.uniform(0, 2 * M_PI), rng.uniform(-1.5, 1.5));
      p = l * p;
      q = l * q;
    }
    if (std::abs(p(0)) < 1e-6 || std::abs(q(0)) < 1e-6) continue;
    return {p, q};
  }
}

}  // namespace timelike
