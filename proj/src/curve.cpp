#include "timelike/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "timelike/hilbert.hpp"
#include "timelike/random.hpp"

namespace timelike {

CurveSample TimelikeCurve::operator()(double t) const {
  try {
    return evaluator_(t);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::curve_evaluation, e.what());
  }
}

TimelikeCurve TimelikeCurve::segment(const Chart& chart, const Vector& p_in, const Vector& q_in) {
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if ((p - q).norm() <= 1e-12)
    return TimelikeCurve([p](double) { return CurveSample{p, Vector::Zero(p.size())}; });
  const GeodesicRay ray = geodesic_through(chart, p, q);
  const double length = chart_distance(chart, p, q);
  return TimelikeCurve([ray, length](double t) {
    return CurveSample{ray.at(t * length), length * ray.velocity(t * length)};
  });
}

TimelikeCurve TimelikeCurve::polyline(std::vector<Vector> vertices) {
  if (vertices.size() < 2) fail(ErrorCode::validation, "a polyline needs at least two vertices");
  const int pieces = static_cast<int>(vertices.size()) - 1;
  return TimelikeCurve([v = std::move(vertices), pieces](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * pieces;
    const int i = std::min(static_cast<int>(std::floor(s)), pieces - 1);
    const double u = s - i;
    const Vector step = v[static_cast<std::size_t>(i) + 1] - v[static_cast<std::size_t>(i)];
    return CurveSample{v[static_cast<std::size_t>(i)] + u * step, pieces * step};
  });
}

TimelikeCurve TimelikeCurve::hermite(std::vector<Vector> points, std::vector<Vector> tangents) {
  if (points.size() < 2 || points.size() != tangents.size())
    fail(ErrorCode::validation, "hermite curves need matching points and tangents (>= 2)");
  const int pieces = static_cast<int>(points.size()) - 1;
  return TimelikeCurve([p = std::move(points), m = std::move(tangents), pieces](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * pieces;
    const auto i = static_cast<std::size_t>(std::min(static_cast<int>(std::floor(s)), pieces - 1));
    const double u = s - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    const Vector point = (2 * u3 - 3 * u2 + 1) * p[i] + (u3 - 2 * u2 + u) * m[i] +
                         (-2 * u3 + 3 * u2) * p[i + 1] + (u3 - u2) * m[i + 1];
    const Vector velocity = (6 * u2 - 6 * u) * p[i] + (3 * u2 - 4 * u + 1) * m[i] +
                            (-6 * u2 + 6 * u) * p[i + 1] + (3 * u2 - 2 * u) * m[i + 1];
    return CurveSample{point, pieces * velocity};
  });
}

TimelikeCurve TimelikeCurve::on_chart(const Chart& chart, const TimelikeCurve& ambient) {
  if (chart.kind == ChartKind::euclidean) return ambient;
  return TimelikeCurve(
      [chart, ambient](double t) {
        const CurveSample g = ambient(t);
        if (chart.kind == ChartKind::spherical) {
          const double r = g.point.norm();
          if (!(r > 1e-12)) fail(ErrorCode::curve_evaluation, "curve passes through the origin");
          const Vector x = g.point / r;
          return CurveSample{x, (g.tangent - x.dot(g.tangent) * x) / r};
        }
        const double q = -minkowski_dot(g.point, g.point);
        if (!(q > 0) || !(g.point(0) > 0))
          fail(ErrorCode::curve_evaluation, "curve leaves the future timelike cone");
        const double r = std::sqrt(q);
        const Vector x = g.point / r;
        return CurveSample{x, (g.tangent + minkowski_dot(x, g.tangent) * x) / r};
      },
      ambient.samples());
}

TimelikeCurve TimelikeCurve::bump(const Chart& chart, const Vector& p, const Vector& q,
                                  std::vector<double> amplitudes, std::vector<Vector> directions) {
  if (amplitudes.size() != directions.size())
    fail(ErrorCode::validation, "one direction per bump amplitude");
  const TimelikeCurve chord = segment(chart, p, q);
  const TimelikeCurve ambient([chord, a = std::move(amplitudes), d = std::move(directions)](double t) {
    CurveSample s = chord(t);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double w = static_cast<double>(k + 1) * M_PI;
      s.point += a[k] * std::sin(w * t) * d[k];
      s.tangent += a[k] * w * std::cos(w * t) * d[k];
    }
    return s;
  });
  return on_chart(chart, ambient);
}

TimelikeCurve TimelikeCurve::restricted(double a, double b) const {
  const TimelikeCurve self = *this;
  return TimelikeCurve(
      [self, a, b](double s) {
        CurveSample c = self(a + (b - a) * s);
        c.tangent *= (b - a);
        return c;
      },
      samples_);
}

TimelikeCurve TimelikeCurve::reparametrized(
    std::function<std::pair<double, double>(double)> phi) const {
  const TimelikeCurve self = *this;
  return TimelikeCurve(
      [self, phi = std::move(phi)](double s) {
        const auto [t, dt] = phi(s);
        CurveSample c = self(t);
        c.tangent *= dt;
        return c;
      },
      samples_);
}

// ---------------------------------------------------------------------------

double context_functional(const TimelikeContext& ctx, const Vector& x, const Vector& v) {
  if (v.norm() == 0.0) return 0.0;
  return ctx.is_funk() ? funk_functional(ctx, x, v).value : hilbert_functional(ctx, x, v).value;
}

namespace {

bool admissible(const TimelikeContext& ctx, const CurveSample& s) {
  if (!is_valid_point(ctx.chart(), s.point)) return false;
  if (contains(ctx.future(), s.point) != Containment::exterior) return false;
  if (!ctx.is_funk() && contains(ctx.past(), s.point) != Containment::exterior) return false;
  if (s.tangent.norm() == 0.0) return true;
  try {
    return context_functional(ctx, s.point, s.tangent) > 0.0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_timelike_direction || e.code() == ErrorCode::precondition ||
        e.code() == ErrorCode::coordinate_domain)
      return false;
    throw;
  }
}

struct Simpson {
  const std::function<double(double)>& f;

  double refine(double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }
};

}  // namespace

TimelikeCheck is_timelike(const TimelikeContext& ctx, const TimelikeCurve& curve) {
  const int n = std::max(1, curve.samples());
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (!admissible(ctx, curve(t))) return {false, t};
  }
  return {true, std::nullopt};
}

double curve_length(const TimelikeContext& ctx, const TimelikeCurve& curve, double tol) {
  const TimelikeCheck check = is_timelike(ctx, curve);
  if (!check.timelike)
    fail(ErrorCode::precondition,
         "curve is not timelike at t = " + std::to_string(*check.first_violation));
  const std::function<double(double)> f = [&](double t) {
    const CurveSample s = curve(t);
    return context_functional(ctx, s.point, s.tangent);
  };
  const Simpson simpson{f};
  constexpr int panels = 16;
  double total = 0.0;
  double fa = f(0.0);
  for (int i = 0; i < panels; ++i) {
    const double a = static_cast<double>(i) / panels, b = static_cast<double>(i + 1) / panels;
    const double m = 0.5 * (a + b);
    const double fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson.refine(a, b, fa, fm, fb, whole, tol / panels, 40);
    fa = fb;
  }
  return total;
}

double context_distance(const TimelikeContext& ctx, const Vector& p, const Vector& q) {
  return ctx.is_funk() ? funk_distance(ctx, p, q).distance : hilbert_distance(ctx, p, q).distance;
}

MaximalityReport maximality_check(const TimelikeContext& ctx, const Vector& p, const Vector& q,
                                  int m, double epsilon, std::uint64_t seed) {
  if (!precedes(ctx, p, q)) fail(ErrorCode::not_in_future, "the pair is not ordered");
  if (m < 0 || !(epsilon >= 0)) fail(ErrorCode::domain, "bad perturbation family parameters");
  const Chart& chart = ctx.chart();
  MaximalityReport rep;
  rep.chord = context_distance(ctx, p, q);
  rep.chord_length = curve_length(ctx, TimelikeCurve::segment(chart, p, q));
  rep.max_length = -std::numeric_limits<double>::infinity();
  rep.max_excess = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  bool ok = true;
  const int max_attempts = 50 * std::max(m, 1);
  for (int attempt = 0; rep.accepted < m && attempt < max_attempts; ++attempt) {
    const int modes = 1 + static_cast<int>(rng.index(3));
    std::vector<double> amps;
    std::vector<Vector> dirs;
    for (int k = 0; k < modes; ++k) {
      amps.push_back(epsilon * rng.uniform(-1.0, 1.0) / (k + 1));
      dirs.push_back(rng.unit_vector(chart.ambient_size()));
    }
    std::optional<TimelikeCurve> curve;
    for (int halving = 0; halving < 30; ++halving) {
      TimelikeCurve c = TimelikeCurve::bump(chart, p, q, amps, dirs);
      c = c.with_samples(512);
      if (is_timelike(ctx, c).timelike) {
        curve = std::move(c);
        break;
      }
      ++rep.rejected;
      for (double& a : amps) a *= 0.5;
    }
    if (!curve) continue;
    const double length = curve_length(ctx, *curve);
    ++rep.accepted;
    rep.max_length = std::max(rep.max_length, length);
    rep.max_excess = std::max(rep.max_excess, length - rep.chord);
    ok = ok && length <= rep.chord + 1e-6;
  }
  rep.passed = ok && rep.accepted == m;
  return rep;
}

}  // namespace timelike
