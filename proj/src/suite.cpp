#include "timelike/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>

#include "json.hpp"
#include "timelike/curve.hpp"
#include "timelike/desitter.hpp"
#include "timelike/funk.hpp"
#include "timelike/generators.hpp"
#include "timelike/hilbert.hpp"

namespace timelike {

namespace {

std::uint64_t property_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  std::uint64_t z = seed ^ h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Running maximum of a violation measure.
class Tally {
 public:
  Tally(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

  void add(double violation) {
    ++cases_;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, violation);
  }
  void error() { ++errors_; }
  void skip() { ++skipped_; }
  long cases() const { return cases_; }

  PropertyResult result(std::string note = {}, long min_cases = 1) const {
    PropertyResult r;
    r.name = name_;
    r.cases = cases_;
    r.max_violation = worst_;
    r.tolerance = tolerance_;
    r.passed = errors_ == 0 && cases_ >= min_cases && worst_ <= tolerance_;
    if (errors_ > 0) note += (note.empty() ? "" : "; ") + std::to_string(errors_) + " cases raised errors";
    if (cases_ < min_cases)
      note += (note.empty() ? "" : "; ") + std::string("too few cases (need ") +
              std::to_string(min_cases) + ")";
    if (skipped_ > 0)
      note += (note.empty() ? "" : "; ") + std::to_string(skipped_) + " draws skipped";
    r.note = note;
    return r;
  }

 private:
  std::string name_;
  double tolerance_;
  long cases_ = 0, errors_ = 0, skipped_ = 0;
  double worst_ = 0.0;
};

std::string named(std::string_view prefix, std::string_view name) {
  return std::string(prefix) + "." + std::string(name);
}

Chart chart_for(ChartMix mix, int i) {
  const int n = 2 + i % 2;
  switch (mix) {
    case ChartMix::euclidean: return Chart::euclidean(n);
    case ChartMix::hyperbolic: return Chart::hyperbolic(n);
    case ChartMix::spherical: return Chart::spherical(n);
    case ChartMix::mixed: break;
  }
  return (i / 2) % 2 ? Chart::hyperbolic(n) : Chart::euclidean(n);
}

Vector chord_velocity(const Chart& chart, const Vector& p, const Vector& q) {
  return chart.kind == ChartKind::euclidean ? Vector(q - p)
                                            : geodesic_through(chart, p, q).tangent();
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Runs `body` for each case, counting library errors as failures.
void each(Tally& t, int cases, const std::function<void(int)>& body) {
  for (int i = 0; i < cases; ++i) {
    try {
      body(i);
    } catch (const Error&) {
      t.error();
    }
  }
}

/// Bounded random polytope in R^2 or R^3: jittered normals of a rotated
/// regular simplex, plus a few random faces.
ConvexBody random_polygon(const Chart& chart, Rng& rng) {
  const int n = chart.dimension;
  Matrix simplex(n, n + 1);
  if (n == 2) {
    for (int i = 0; i < 3; ++i) simplex.col(i) << std::cos(2 * M_PI * i / 3), std::sin(2 * M_PI * i / 3);
  } else {
    simplex << 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
    simplex /= std::sqrt(3.0);
  }
  const Matrix rot = rng.orthogonal(n);
  std::vector<Hyperplane> faces;
  for (int i = 0; i <= n; ++i)
    faces.emplace_back(chart, (rot * simplex.col(i) + 0.2 * rng.unit_vector(n)).normalized(),
                       rng.uniform(0.5, 1.5));
  const int extra = static_cast<int>(rng.index(5));
  for (int i = 0; i < extra; ++i)
    faces.emplace_back(chart, rng.unit_vector(n), rng.uniform(0.5, 1.5));
  return ConvexBody::polytope(chart, faces);
}

/// Exterior p and a point q on a ray from p through the body, possibly
/// beyond the first hit, with occasional sideways scatter.
std::pair<Vector, Vector> random_order_pair(const ConvexBody& body, Rng& rng) {
  const int n = body.chart().dimension;
  while (true) {
    const Vector p = body.interior_point() + rng.uniform(2.0, 5.0) * rng.unit_vector(n);
    if (contains(body, p) != Containment::exterior) continue;
    const Vector target = body.interior_point() + 0.5 * rng.normal_vector(n);
    Vector q = p + rng.uniform(0.05, 1.6) * (target - p);
    if (rng.uniform() < 0.3) q += 0.5 * rng.normal_vector(n);
    if (contains(body, q) != Containment::exterior) continue;
    return {p, q};
  }
}

bool exterior_to(const TimelikeContext& ctx, const Vector& x) {
  return contains(ctx.past(), x) == Containment::exterior &&
         contains(ctx.future(), x) == Containment::exterior;
}

}  // namespace

namespace properties {

Results funk_dual_forms(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix) {
  const std::string name = named(prefix, "dual_forms");
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  each(t, cases, [&](int i) {
    const ConvexBody body = random_body(chart_for(mix, i), rng);
    const OrderedPair pq = random_funk_pair(body, rng);
    t.add(relative(funk_distance(body, pq.p, pq.q).distance,
                   funk_distance_variational(body, pq.p, pq.q).distance));
  });
  return {t.result("relative |hit - variational| over polytopes and balls")};
}

Results funk_functional_forms(std::uint64_t seed, int cases, ChartMix mix,
                              std::string_view prefix) {
  const std::string name = named(prefix, "functional_forms");
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  each(t, cases, [&](int i) {
    const Chart chart = chart_for(mix, i);
    const ConvexBody body = random_body(chart, rng, BodyShape::polytope);
    const OrderedPair pq = random_funk_pair(body, rng);
    Vector v = chord_velocity(chart, pq.p, pq.q);
    v *= rng.uniform(0.1, 10.0) / tangent_norm(chart.kind, v);
    t.add(relative(funk_functional(body, pq.p, v).value,
                   funk_functional_variational(body, pq.p, v).value));
  });
  return {t.result("relative |hit form - hyperplane infimum| of the functional on polytopes")};
}

Results funk_time_inequality(std::uint64_t seed, int cases, ChartMix mix,
                             std::string_view prefix) {
  const std::string gname = named(prefix, "time_inequality");
  const std::string cname = named(prefix, "collinear_equality");
  Rng rng(property_seed(seed, gname));
  Tally g(gname, 1e-9), c(cname, 1e-9);
  const auto run = [&](Tally& t, bool collinear) {
    each(t, cases, [&](int i) {
      const ConvexBody body = random_body(chart_for(mix, i), rng);
      const OrderedChain ch = random_funk_chain(body, rng, collinear);
      const double pq = funk_distance(body, ch.p, ch.q).distance;
      const double qr = funk_distance(body, ch.q, ch.r).distance;
      const double pr = funk_distance(body, ch.p, ch.r).distance;
      t.add(collinear ? std::abs(pq + qr - pr) : std::max(0.0, pq + qr - pr));
    });
  };
  run(g, false);
  run(c, true);
  return {g.result("excess of F(p,q)+F(q,r) over F(p,r)"),
          c.result("|F(p,q)+F(q,r)-F(p,r)| along one ray")};
}

Results funk_order(std::uint64_t seed, int cases) {
  const std::string ename = "funk.order_equivalence", tname = "funk.transitivity";
  Rng rng(property_seed(seed, ename));
  Tally e(ename, 0.0), tr(tname, 0.0);
  long ordered = 0;
  each(e, cases, [&](int i) {
    const ConvexBody body = random_polygon(Chart::euclidean(2 + i % 2), rng);
    const auto ctx = TimelikeContext::funk(body);
    const auto [p, q] = random_order_pair(body, rng);
    const bool a = funk_precedes(ctx, p, q);
    e.add(a != inclusion_precedes(ctx, p, q) ? 1.0 : 0.0);
    if (!a) return;
    ++ordered;
    const auto r = random_successor(body, q, rng);
    if (!r) {
      tr.skip();
      return;
    }
    tr.add(funk_precedes(ctx, q, *r) && !funk_precedes(ctx, p, *r) ? 1.0 : 0.0);
  });
  return {e.result("disagreements of ray order and P(p) containing P(q); " +
                   std::to_string(ordered) + " ordered pairs"),
          tr.result("p<q, q<r but not p<r")};
}

Results funk_chord_quadrature(std::uint64_t seed, int cases, ChartMix mix,
                              std::string_view prefix) {
  const std::string name = named(prefix, "chord_quadrature");
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-6);
  each(t, cases, [&](int i) {
    const Chart chart = chart_for(mix, i);
    const auto ctx = TimelikeContext::funk(random_body(chart, rng));
    const OrderedPair pq = random_funk_pair(ctx.body(), rng);
    const double len = curve_length(ctx, TimelikeCurve::segment(chart, pq.p, pq.q));
    t.add(std::abs(len - funk_distance(ctx, pq.p, pq.q).distance));
  });
  return {t.result("|integral of the functional along the chord - F|")};
}

Results funk_maximality(std::uint64_t seed, int pairs, int perturbations) {
  const std::string name = "funk.maximality";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-6);
  long accepted = 0;
  each(t, pairs, [&](int i) {
    const Chart chart = chart_for(ChartMix::mixed, 2 * (i % 2));
    const auto ctx = TimelikeContext::funk(random_body(chart, rng));
    const OrderedPair pq = random_funk_pair(ctx.body(), rng);
    const MaximalityReport rep =
        maximality_check(ctx, pq.p, pq.q, perturbations, 0.05, rng.bits());
    accepted += rep.accepted;
    t.add(std::max(0.0, rep.max_excess));
  });
  return {t.result(std::to_string(accepted) + " timelike perturbations; excess over the chord")};
}

Results funk_future_spheres(std::uint64_t seed, int cases) {
  const std::string name = "funk.future_spheres";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  each(t, cases, [&](int i) {
    const ConvexBody body = random_body(Chart::euclidean(2 + i % 2), rng);
    const auto ctx = TimelikeContext::funk(body);
    const Vector p = random_exterior_point(body, rng);
    for (double r : {0.1, std::log(2.0), 3.0})
      for (const SpherePoint& s : future_sphere_sample(ctx, p, r, 8)) t.add(s.residual);
  });
  return {t.result("|F(p, dilated point) - r| for r in {0.1, log 2, 3}")};
}

Results funk_monotonicity(std::uint64_t seed, int cases) {
  const std::string name = "funk.monotonicity";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-12);
  each(t, cases, [&](int i) {
    const Chart chart = chart_for(ChartMix::mixed, i);
    const ConvexBody inner = random_body(chart, rng, BodyShape::ball);
    const Ball& b = inner.as_ball();
    const ConvexBody outer = ConvexBody::ball(chart, b.center, b.radius * rng.uniform(1.1, 2.0));
    const Vector p = random_exterior_point(outer, rng, outer.as_ball().radius + 0.3,
                                           outer.as_ball().radius + 2.5);
    const auto q = random_successor(inner, p, rng, 0.05, 0.5);
    if (!q || contains(outer, *q) != Containment::exterior || !body_order(outer, p, *q)) {
      t.skip();
      return;
    }
    const MonotonicityReport rep = funk_monotonicity_check(inner, outer, p, *q);
    t.add(std::max(0.0, rep.inner - rep.outer));
  });
  return {t.result("excess of F(inner) over F(outer) for nested balls")};
}

Results funk_concavity(std::uint64_t seed, int segments) {
  const std::string name = "funk.concavity";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-8);
  for (int i = 0; t.cases() < segments && i < 20 * segments; ++i) {
    try {
      const ConvexBody body = random_body(Chart::euclidean(2 + i % 2), rng);
      const OrderedPair px = random_funk_pair(body, rng);
      const double scale = 0.2 * funk_distance(body, px.p, px.q).distance;
      const Vector a = px.p + scale * rng.normal_vector(px.p.size());
      const Vector b = px.p + scale * rng.normal_vector(px.p.size());
      const int steps = 40;
      std::vector<double> values;
      for (int k = 0; k <= steps; ++k) {
        const Vector s = a + (b - a) * (double(k) / steps);
        if (contains(body, s) != Containment::exterior || !body_order(body, s, px.q)) break;
        values.push_back(funk_distance(body, s, px.q).distance);
      }
      if (static_cast<int>(values.size()) != steps + 1) continue;
      double worst = 0.0;
      for (int k = 1; k < steps; ++k)
        worst = std::max(worst, values[k - 1] - 2 * values[k] + values[k + 1]);
      t.add(worst);
    } catch (const Error&) {
      t.error();
    }
  }
  return {t.result("positive second differences of F(s(t), x) along segments", segments)};
}

Results funk_broken_segment(std::uint64_t seed, int cases) {
  const std::string name = "funk.broken_segment";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  const Chart e = Chart::euclidean(2);
  std::vector<Hyperplane> faces;
  for (int i = 0; i < 2; ++i) {
    faces.emplace_back(e, Vector::Unit(2, i), 1.0);
    faces.emplace_back(e, -Vector::Unit(2, i), 1.0);
  }
  const auto square = TimelikeContext::funk(ConvexBody::polytope(e, faces));
  each(t, cases, [&](int) {
    // Face {x1 = -1}; distances to it strictly decrease along p, q, r.
    double d[3] = {rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3)};
    std::sort(d, d + 3, std::greater<>());
    const auto at = [&](double dist) {
      Vector x(2);
      x << -1 - dist, rng.uniform(-0.1, 0.1);
      return x;
    };
    const Vector p = at(d[0]), q = at(d[1]), r = at(d[2]);
    if (d[0] - d[1] < 1e-3 || d[1] - d[2] < 1e-3 || !funk_precedes(square, p, q) ||
        !funk_precedes(square, q, r) || !funk_precedes(square, p, r)) {
      t.skip();
      return;
    }
    const double sum = funk_distance(square, p, q).distance + funk_distance(square, q, r).distance;
    t.add(std::abs(funk_distance(square, p, r).distance - sum));
  });
  return {t.result("|F(p,r) - F(p,q) - F(q,r)| for points approaching one face")};
}

Results funk_diagnostics(std::uint64_t seed, int cases) {
  const std::string pname = "funk.diagnostic.p_family", aname = "funk.diagnostic.all_supports",
                    cname = "funk.diagnostic.cone_beyond_hit";
  Rng rng(property_seed(seed, pname));
  const double inf = std::numeric_limits<double>::infinity();
  Tally pt(pname, inf), at(aname, inf), ct(cname, inf);
  long below = 0, cone_only = 0;
  each(pt, cases, [&](int i) {
    const ConvexBody body = random_body(Chart::euclidean(2 + i % 2), rng, BodyShape::polytope);
    const OrderedPair pq = random_funk_pair(body, rng);
    const double f = funk_distance(body, pq.p, pq.q).distance;
    pt.add(std::abs(funk_variational_over_p(body, pq.p, pq.q) - f));
    const double all = ratio_infimum_all_supports(body, pq.p, pq.q);
    at.add(std::max(0.0, f - all));
    below += all < f - 1e-9;
    // A point past the hit along the same ray stays in the literal cone.
    const auto w = body_order(body, pq.p, pq.q);
    const Vector beyond = w->ray.at(w->hit.t + rng.uniform(0.5, 3.0));
    if (contains(body, beyond) != Containment::exterior) return;
    const bool c = cone_without_segment(body, pq.p, beyond);
    ct.add(c ? 1.0 : 0.0);
    cone_only += c;
  });
  auto results = Results{pt.result("|infimum over P(p) - F|; P(q) is the defining family"),
                         at.result(std::to_string(below) +
                                   " pairs where all supports undercut F"),
                         ct.result(std::to_string(cone_only) +
                                   " points beyond the hit still inside the cone")};
  for (auto& r : results) {
    r.diagnostic = true;
    r.passed = true;
  }
  return results;
}

Results hyperbolic_wall_example() {
  const Chart h = Chart::hyperbolic(2);
  Vector normal(3);
  normal << 0, 1, 0;
  const ConvexBody wall = ConvexBody::polytope(h, {Hyperplane(h, normal)});
  const auto point = [](double t) {
    Vector x = Vector::Zero(3);
    x(0) = std::cosh(t);
    x(1) = std::sinh(t);
    return x;
  };
  Tally t("hyperbolic.wall_example", 1e-12);
  each(t, 1, [&](int) {
    t.add(std::abs(funk_distance(wall, point(2.0), point(1.0)).distance -
                   std::log(std::sinh(2.0) / std::sinh(1.0))));
  });
  return {t.result("F toward {x1 < 0} from arc lengths 2 and 1 against log(sinh 2 / sinh 1)")};
}

Results hilbert_cross_ratio(std::uint64_t seed, int cases, ChartMix mix, std::string_view prefix) {
  const std::string name = named(prefix, "sum_vs_cross_ratio");
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  each(t, cases, [&](int i) {
    const Chart chart = mix == ChartMix::mixed ? (i % 3 == 0   ? Chart::euclidean(2 + i % 2)
                                                  : i % 3 == 1 ? Chart::hyperbolic(2 + i % 2)
                                                               : Chart::spherical(2 + i % 2))
                                               : chart_for(mix, i);
    const auto ctx = random_hilbert_context(chart, rng);
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) {
      t.skip();
      return;
    }
    t.add(relative(hilbert_distance(ctx, pq->p, pq->q).distance,
                   hilbert_distance_cross_ratio(ctx, pq->p, pq->q).distance));
  });
  return {t.result("relative |F2(p,q)+F1(q,p) - log cross ratio|")};
}

Results hilbert_time_inequality(std::uint64_t seed, int cases, ChartMix mix,
                                std::string_view prefix) {
  const std::string gname = named(prefix, "time_inequality");
  const std::string cname = named(prefix, "collinear_equality");
  Rng rng(property_seed(seed, gname));
  Tally g(gname, 1e-9), c(cname, 1e-9);
  const auto run = [&](Tally& t, bool collinear) {
    each(t, cases, [&](int i) {
      const auto ctx = random_hilbert_context(chart_for(mix, i), rng);
      const auto ch = random_hilbert_chain(ctx, rng, collinear);
      if (!ch) {
        t.skip();
        return;
      }
      const double pq = hilbert_distance(ctx, ch->p, ch->q).distance;
      const double qr = hilbert_distance(ctx, ch->q, ch->r).distance;
      const double pr = hilbert_distance(ctx, ch->p, ch->r).distance;
      t.add(collinear ? std::abs(pq + qr - pr) : std::max(0.0, pq + qr - pr));
    });
  };
  run(g, false);
  run(c, true);
  const long need = cases * 9 / 10;
  return {g.result("excess of H(p,q)+H(q,r) over H(p,r)", need),
          c.result("|H(p,q)+H(q,r)-H(p,r)| along one chord", need)};
}

Results hilbert_strip(std::uint64_t seed, int cases) {
  const std::string name = "hilbert.strip_closed_form";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  Vector right(2), left(2);
  right << 1, 0;
  left << -1, 0;
  const auto strip = TimelikeContext::hilbert(ConvexBody::half_space(right, -1.0),
                                              ConvexBody::half_space(left, -1.0));
  const auto pt = [](double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
  };
  each(t, 1, [&](int) {
    t.add(std::abs(hilbert_distance(strip, pt(0, 0), pt(0.5, 0)).distance - std::log(3.0)));
  });
  each(t, cases, [&](int) {
    double a = rng.uniform(-0.99, 0.99), b = rng.uniform(-0.99, 0.99);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) {
      t.skip();
      return;
    }
    const double h = hilbert_distance(strip, pt(a, rng.uniform(-10, 10)),
                                      pt(b, rng.uniform(-10, 10))).distance;
    t.add(std::abs(h - strip_closed_form(a, b)));
  });
  return {t.result("strip (-1,1): (0,0.5) against log 3, then random pairs against the interval form")};
}

Results hilbert_funk_limit() {
  Vector left(2), p(2), q(2);
  left << -1, 0;
  p << 0, 0;
  q << 0.5, 0;
  const ConvexBody future = ConvexBody::half_space(left, -1.0);
  Results out;
  for (auto [a, tol, label] : {std::tuple{1e3, 1e-3, "hilbert.funk_limit_1e3"},
                               std::tuple{1e6, 1e-6, "hilbert.funk_limit_1e6"}}) {
    Tally t(label, tol);
    each(t, 1, [&](int) { t.add(funk_limit_check(future, a, p, q).gap); });
    out.push_back(t.result("|H_a - F| with past wall {x1 < -a}"));
  }
  return out;
}

Results hilbert_chord_quadrature(std::uint64_t seed, int cases, ChartMix mix,
                                 std::string_view prefix) {
  const std::string name = named(prefix, "chord_quadrature");
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-6);
  each(t, cases, [&](int i) {
    const Chart chart = chart_for(mix, i);
    const auto ctx = random_hilbert_context(chart, rng, chart.kind == ChartKind::spherical
                                                            ? BodyShape::ball
                                                            : BodyShape::any);
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) {
      t.skip();
      return;
    }
    const double len = curve_length(ctx, TimelikeCurve::segment(chart, pq->p, pq->q));
    t.add(std::abs(len - hilbert_distance(ctx, pq->p, pq->q).distance));
  });
  return {t.result("|integral of P2(x,v)+P1(x,-v) along the chord - H|")};
}

Results hilbert_maximality(std::uint64_t seed, int pairs, int perturbations) {
  const std::string name = "hilbert.maximality";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-6);
  long accepted = 0;
  each(t, pairs, [&](int i) {
    const auto ctx = random_hilbert_context(chart_for(ChartMix::mixed, 2 * (i % 2)), rng);
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) {
      t.skip();
      return;
    }
    const MaximalityReport rep = maximality_check(ctx, pq->p, pq->q, perturbations, 0.05, rng.bits());
    accepted += rep.accepted;
    t.add(std::max(0.0, rep.max_excess));
  });
  return {t.result(std::to_string(accepted) + " timelike perturbations; excess over the chord")};
}

Results spherical_rotation(std::uint64_t seed, int cases) {
  const std::string name = "spherical.rotation_invariance";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  each(t, cases, [&](int i) {
    const Chart chart = Chart::spherical(2 + i % 2);
    const auto ctx = random_hilbert_context(chart, rng);
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) {
      t.skip();
      return;
    }
    const Matrix rot = rng.orthogonal(chart.ambient_size());
    const auto moved = TimelikeContext::spherical_hilbert(ctx.past().transformed(rot),
                                                          ctx.future().transformed(rot));
    t.add(std::abs(spherical_hilbert_distance(ctx, pq->p, pq->q).distance -
                   spherical_hilbert_distance(moved, rot * pq->p, rot * pq->q).distance));
  });
  return {t.result("|H - H after a random orthogonal map|")};
}

Results spherical_tangent_chords(std::uint64_t seed, int cases) {
  const std::string name = "spherical.tangent_chords";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  const auto ctx = desitter_context(2);
  each(t, cases, [&](int) {
    const Vector p = rng.unit_vector(3);
    if (!exterior_to(ctx, p)) {
      t.skip();
      return;
    }
    for (const NullDirection& d : null_directions(ctx, p)) {
      const double s = rng.uniform(0.1, 1.0);
      const Vector q = std::cos(s) * p + std::sin(s) * d.direction;
      if (!exterior_to(ctx, q)) continue;
      t.add(std::abs(null_chord_value(ctx, p, q).distance));
    }
  });
  return {t.result("|log cross ratio| on chords tangent to antipodal pi/4 caps")};
}

Results spherical_gnomonic(std::uint64_t seed, int cases) {
  const std::string name = "spherical.gnomonic_cross_ratio";
  Rng rng(property_seed(seed, name));
  Tally t(name, 1e-9);
  const Chart s2 = Chart::spherical(2);
  each(t, cases, [&](int) {
    const auto ctx = random_hilbert_context(s2, rng);
    const auto pq = random_hilbert_pair(ctx, rng);
    if (!pq) {
      t.skip();
      return;
    }
    const auto h = spherical_hilbert_distance(ctx, pq->p, pq->q);
    const Vector mid = (h.p + h.q).normalized();
    Matrix frame(3, 3);
    frame << mid, tangent_basis(s2, mid);
    for (const Vector* x : {&h.a1, &h.p, &h.q, &h.a2})
      if (x->dot(mid) <= 1e-3) {
        t.skip();
        return;
      }
    const auto proj = [&](const Vector& x) { return gnomonic_project(frame.transpose() * x); };
    const double planar = affine_cross_ratio(proj(h.a1), proj(h.p), proj(h.q), proj(h.a2));
    const double sine = spherical_cross_ratio(h.a1, h.p, h.q, h.a2);
    t.add(relative(planar, sine));
  });
  return {t.result("relative gap between the sine cross ratio and the projected planar one")};
}

Results desitter_isometry(std::uint64_t seed, int cases) {
  const std::string name = "desitter.isometry", cname = "desitter.cross_ratio";
  Rng rng(property_seed(seed, name));
  std::vector<DesitterPair> pairs;
  for (int i = 0; i < cases; ++i) pairs.push_back(random_desitter_pair(rng, 1 + i % 2, i % 2 == 1));
  Tally t(name, 1e-9), c(cname, 1e-9);
  std::string note;
  try {
    const DesitterReport rep = desitter_isometry_check(pairs);
    t.add(rep.max_relative_deviation);
    c.add(rep.max_cross_ratio_deviation);
    note = rep.note;
  } catch (const Error&) {
    t.error();
  }
  PropertyResult r = t.result(note), rc = c.result("sine cross ratio vs planar cross ratio");
  r.cases = rc.cases = static_cast<long>(pairs.size());
  return {r, rc};
}

Results desitter_null_classification(std::uint64_t seed, int cases) {
  const std::string name = "desitter.null_classification";
  Rng rng(property_seed(seed, name));
  Tally t(name, 0.0);
  const auto ctx = desitter_context(2);
  each(t, cases, [&](int) {
    const Vector p = rng.unit_vector(3);
    if (!exterior_to(ctx, p)) {
      t.skip();
      return;
    }
    for (const NullDirection& d : null_directions(ctx, p)) {
      const double s = rng.uniform(0.1, 1.0);
      const Vector q = std::cos(s) * p + std::sin(s) * d.direction;
      if (!exterior_to(ctx, q)) continue;
      t.add(classify_pair(ctx, p, q) == PairClass::null ? 0.0 : 1.0);
    }
  });
  return {t.result("tangent chords not classified as null")};
}

}  // namespace properties

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"funk",       "hilbert",  "spherical",
                                                 "hyperbolic", "desitter", "all"};
  return names;
}

namespace {

using namespace properties;

void append(Results& out, Results more) {
  for (auto& r : more) out.push_back(std::move(r));
}

Results funk_suite(std::uint64_t s, int n) {
  Results r;
  const int few = std::max(1, n / 20);
  append(r, funk_dual_forms(s, n, ChartMix::mixed, "funk"));
  append(r, funk_functional_forms(s, n, ChartMix::mixed, "funk"));
  append(r, funk_time_inequality(s, n, ChartMix::mixed, "funk"));
  append(r, funk_order(s, n));
  append(r, funk_chord_quadrature(s, few, ChartMix::mixed, "funk"));
  append(r, funk_maximality(s, std::max(2, n / 250), 200));
  append(r, funk_future_spheres(s, std::max(1, n / 10)));
  append(r, funk_monotonicity(s, std::max(1, n / 4)));
  append(r, funk_concavity(s, std::max(10, n / 10)));
  append(r, funk_broken_segment(s, n));
  append(r, funk_diagnostics(s, std::max(1, n / 10)));
  return r;
}

Results hilbert_suite(std::uint64_t s, int n) {
  Results r;
  append(r, hilbert_cross_ratio(s, n, ChartMix::mixed, "hilbert"));
  append(r, hilbert_time_inequality(s, n, ChartMix::mixed, "hilbert"));
  append(r, hilbert_strip(s, n));
  append(r, hilbert_funk_limit());
  append(r, hilbert_chord_quadrature(s, std::max(1, n / 20), ChartMix::mixed, "hilbert"));
  append(r, hilbert_maximality(s, std::max(2, n / 250), 200));
  return r;
}

Results spherical_suite(std::uint64_t s, int n) {
  Results r;
  append(r, spherical_rotation(s, n / 2 + 1));
  append(r, spherical_tangent_chords(s, n));
  append(r, spherical_gnomonic(s, n / 2 + 1));
  append(r, hilbert_cross_ratio(s, n / 2 + 1, ChartMix::spherical, "spherical"));
  append(r, hilbert_time_inequality(s, n / 2 + 1, ChartMix::spherical, "spherical"));
  append(r, hilbert_chord_quadrature(s, std::max(1, n / 50), ChartMix::spherical, "spherical"));
  return r;
}

Results hyperbolic_suite(std::uint64_t s, int n) {
  Results r;
  append(r, hyperbolic_wall_example());
  append(r, funk_dual_forms(s, n, ChartMix::hyperbolic, "hyperbolic"));
  append(r, funk_functional_forms(s, n / 2 + 1, ChartMix::hyperbolic, "hyperbolic"));
  append(r, funk_time_inequality(s, n / 2 + 1, ChartMix::hyperbolic, "hyperbolic"));
  append(r, hilbert_cross_ratio(s, n / 2 + 1, ChartMix::hyperbolic, "hyperbolic"));
  return r;
}

Results desitter_suite(std::uint64_t s, int n) {
  Results r;
  append(r, desitter_isometry(s, n));
  append(r, desitter_null_classification(s, n / 2 + 1));
  return r;
}

}  // namespace

SuiteReport run_suite(std::string_view suite, std::uint64_t seed, int cases) {
  if (cases < 1) fail(ErrorCode::validation, "--cases must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = seed;
  report.cases = cases;
  const bool all = suite == "all";
  if (all || suite == "funk") append(report.properties, funk_suite(seed, cases));
  if (all || suite == "hilbert") append(report.properties, hilbert_suite(seed, cases));
  if (all || suite == "spherical") append(report.properties, spherical_suite(seed, cases));
  if (all || suite == "hyperbolic") append(report.properties, hyperbolic_suite(seed, cases));
  if (all || suite == "desitter") append(report.properties, desitter_suite(seed, cases));
  if (report.properties.empty())
    fail(ErrorCode::validation, "unknown suite '" + std::string(suite) +
                                    "' (funk, hilbert, spherical, hyperbolic, desitter, all)");
  report.passed = std::all_of(report.properties.begin(), report.properties.end(),
                              [](const PropertyResult& r) { return r.passed; });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const SuiteReport& report, std::string_view format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["suite"] = report.suite;
    doc["seed"] = report.seed;
    doc["cases"] = report.cases;
    doc["passed"] = report.passed;
    nlohmann::ordered_json props = nlohmann::ordered_json::array();
    for (const PropertyResult& r : report.properties) {
      nlohmann::ordered_json p;
      p["name"] = r.name;
      p["cases"] = r.cases;
      p["max_violation"] = r.max_violation;
      p["tolerance"] = std::isinf(r.tolerance) ? nlohmann::ordered_json(nullptr)
                                               : nlohmann::ordered_json(r.tolerance);
      p["passed"] = r.passed;
      p["diagnostic"] = r.diagnostic;
      p["note"] = r.note;
      props.push_back(std::move(p));
    }
    doc["properties"] = std::move(props);
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (format == "csv") {
    out = "property,cases,max_violation,tolerance,status,note\n";
    for (const PropertyResult& r : report.properties) {
      std::string note = r.note;
      std::replace(note.begin(), note.end(), '"', '\'');
      out += r.name + "," + std::to_string(r.cases) + "," + fmt(r.max_violation) + "," +
             fmt(r.tolerance) + "," + (r.diagnostic ? "INFO" : r.passed ? "PASS" : "FAIL") +
             ",\"" + note + "\"\n";
    }
    return out;
  }
  if (format != "text") fail(ErrorCode::validation, "unknown format '" + std::string(format) + "'");
  char line[512];
  std::snprintf(line, sizeof line, "suite %s  seed %llu  cases %d\n", report.suite.c_str(),
                static_cast<unsigned long long>(report.seed), report.cases);
  out += line;
  std::snprintf(line, sizeof line, "%-38s %8s %20s %10s  %s\n", "property", "cases",
                "max_violation", "tolerance", "status");
  out += line;
  int passed = 0, counted = 0;
  for (const PropertyResult& r : report.properties) {
    std::snprintf(line, sizeof line, "%-38s %8ld %20s %10s  %s\n", r.name.c_str(), r.cases,
                  fmt(r.max_violation).c_str(), fmt(r.tolerance).c_str(),
                  r.diagnostic ? "INFO" : r.passed ? "PASS" : "FAIL");
    out += line;
    if (!r.note.empty()) out += "    " + r.note + "\n";
    if (!r.diagnostic) {
      ++counted;
      passed += r.passed;
    }
  }
  std::snprintf(line, sizeof line, "result %s (%d/%d properties passed)\n",
                report.passed ? "PASS" : "FAIL", passed, counted);
  out += line;
  return out;
}

}  // namespace timelike
