#include "timelike/render.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "timelike/curve.hpp"
#include "timelike/desitter.hpp"
#include "timelike/funk.hpp"
#include "timelike/scene.hpp"

namespace timelike {

namespace {

/// Coordinates of tangent vectors at `at` in the chart-orthonormal basis.
struct TangentFrame {
  Chart chart;
  Matrix basis;

  TangentFrame(const Chart& c, const Vector& at) : chart(c), basis(tangent_basis(c, at)) {}

  Vector coords(const Vector& v) const {
    Vector out(basis.cols());
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      out(j) = chart_dot(chart.kind, Vector(basis.col(j)), v);
    return out;
  }
  Vector vector(const Vector& c) const { return basis * c; }
};

Vector toward(const Chart& chart, const Vector& from, const Vector& to) {
  if (chart.kind == ChartKind::euclidean) return (to - from).normalized();
  return geodesic_through(chart, from, to).tangent();
}

bool transversal_hit(const ConvexBody& body, const GeodesicRay& ray, double* t = nullptr) {
  const auto hit = ray_first_hit(body, ray);
  if (!hit || !hit->transversal) return false;
  if (t) *t = hit->t;
  return true;
}

}  // namespace

std::vector<ConeRay> cone_boundary(const ConvexBody& body, const Vector& apex_in, int count) {
  const Chart& chart = body.chart();
  const Vector apex = validate_point(chart, apex_in);
  if (contains(body, apex) != Containment::exterior)
    fail(ErrorCode::precondition, "cone apex is not exterior to the body");
  if (count < 1) fail(ErrorCode::domain, "count must be positive");
  const TangentFrame frame(chart, apex);
  const Vector axis = frame.coords(toward(chart, apex, body.interior_point())).normalized();
  const int n = chart.dimension;

  std::vector<Vector> perps;
  if (n == 1) {
    perps = {};
  } else if (n == 2) {
    Vector ccw(2);
    ccw << -axis(1), axis(0);
    perps = {ccw, -ccw};
  } else {
    for (const Vector& d : spread_directions(n, count)) {
      const Vector u = d - d.dot(axis) * axis;
      if (u.norm() > 1e-6) perps.push_back(u.normalized());
    }
  }

  std::vector<ConeRay> out;
  for (const Vector& u : perps) {
    const auto dir = [&](double phi) {
      return frame.vector(std::cos(phi) * axis + std::sin(phi) * u);
    };
    double lo = 0.0, hi = M_PI;
    for (int it = 0; it < 64; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (transversal_hit(body, GeodesicRay(chart, apex, dir(mid))))
        lo = mid;
      else
        hi = mid;
    }
    ConeRay ray;
    ray.angle = lo;
    ray.direction = dir(lo);
    const GeodesicRay g(chart, apex, ray.direction);
    double t = 0.0;
    if (transversal_hit(body, g, &t) && t < 1e6) ray.contact = g.at(t);
    out.push_back(std::move(ray));
  }
  return out;
}

bool is_future_direction(const TimelikeContext& ctx, const Vector& p, const Vector& direction) {
  try {
    const Chart& chart = ctx.chart();
    double t2 = 0.0, t1 = 0.0;
    if (!transversal_hit(ctx.future(), GeodesicRay(chart, p, direction), &t2)) return false;
    if (ctx.is_funk()) return true;
    if (!transversal_hit(ctx.past(), GeodesicRay(chart, p, -direction), &t1)) return false;
    return chart.kind != ChartKind::spherical || t1 + t2 < M_PI;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Vector> planar_directions(const Chart& chart, const Vector& p, int count) {
  if (chart.dimension != 2) fail(ErrorCode::unsupported, "planar directions need dimension 2");
  const TangentFrame frame(chart, p);
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    const double a = 2 * M_PI * k / count;
    Vector c(2);
    c << std::cos(a), std::sin(a);
    out.push_back(frame.vector(c));
  }
  return out;
}

std::vector<std::optional<LevelPoint>> future_sphere_curve(const TimelikeContext& ctx,
                                                           const Vector& p_in, double r,
                                                           int count) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::domain, "radius must be positive");
  if (count < 1) fail(ErrorCode::domain, "count must be positive");
  const Chart& chart = ctx.chart();
  const Vector p = validate_point(chart, p_in);
  std::vector<Vector> dirs;
  if (chart.dimension == 2) {
    dirs = planar_directions(chart, p, count);
  } else {
    const TangentFrame frame(chart, p);
    for (const Vector& d : spread_directions(chart.dimension, count)) dirs.push_back(frame.vector(d));
  }
  const bool dilation = ctx.is_funk() && chart.kind == ChartKind::euclidean;
  std::vector<std::optional<LevelPoint>> out;
  for (const Vector& d : dirs) {
    if (!is_future_direction(ctx, p, d)) {
      out.emplace_back();
      continue;
    }
    LevelPoint lp;
    lp.direction = d;
    if (dilation) {
      const SpherePoint s = future_sphere_point(ctx, p, r, d);
      lp.point = s.point;
      lp.residual = s.residual;
    } else {
      const GeodesicRay ray(chart, p, d);
      double hi = 0.0;
      transversal_hit(ctx.future(), ray, &hi);
      double lo = 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (context_distance(ctx, p, ray.at(mid)) < r)
          lo = mid;
        else
          hi = mid;
      }
      lp.point = ray.at(0.5 * (lo + hi));
      lp.residual = std::abs(context_distance(ctx, p, lp.point) - r);
    }
    out.emplace_back(std::move(lp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

using Point2 = Eigen::Vector2d;
using Polygon = std::vector<Point2>;

struct HalfPlane {
  Point2 a;
  double b;  // a.y <= b
};

std::string num(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Polygon clip(const Polygon& poly, const HalfPlane& h) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& s = poly[i];
    const Point2& e = poly[(i + 1) % m];
    const double vs = h.a.dot(s) - h.b, ve = h.a.dot(e) - h.b;
    if (vs <= 0) out.push_back(s);
    if ((vs < 0 && ve > 0) || (vs > 0 && ve < 0)) out.push_back(s + (e - s) * (vs / (vs - ve)));
  }
  return out;
}

class Canvas {
 public:
  explicit Canvas(const Chart& chart) : chart_(chart) {}

  /// Planar image of a chart point, if it has one.
  std::optional<Point2> map(const Vector& x) const {
    switch (chart_.kind) {
      case ChartKind::euclidean: return Point2(x(0), x(1));
      case ChartKind::hyperbolic: {
        const Vector y = to_klein(x);
        return Point2(y(0), y(1));
      }
      case ChartKind::spherical:
        if (std::abs(x(0)) < 1e-6) return std::nullopt;
        return Point2(x(1) / x(0), x(2) / x(0));
    }
    return std::nullopt;
  }

  void include(const Point2& p) {
    if (!p.allFinite()) return;
    lo_ = lo_ ? Point2(lo_->cwiseMin(p)) : p;
    hi_ = hi_ ? Point2(hi_->cwiseMax(p)) : p;
  }

  void fix_view() {
    if (chart_.kind == ChartKind::hyperbolic) {
      lo_ = Point2(-1.05, -1.05);
      hi_ = Point2(1.05, 1.05);
    } else if (!lo_) {
      lo_ = Point2(-3, -3);
      hi_ = Point2(3, 3);
    } else {
      Point2 mid = 0.5 * (*lo_ + *hi_);
      double half = 0.5 * std::max((*hi_ - *lo_).maxCoeff(), 1.0) * 1.15;
      half = std::min(half, 50.0);
      mid = mid.cwiseMax(Point2(-50, -50)).cwiseMin(Point2(50, 50));
      lo_ = mid - Point2(half, half);
      hi_ = mid + Point2(half, half);
    }
    scale_ = 560.0 / (hi_->x() - lo_->x());
  }

  Polygon frame() const {
    if (chart_.kind == ChartKind::hyperbolic) {
      Polygon disk;
      for (int k = 0; k < 256; ++k)
        disk.emplace_back(std::cos(2 * M_PI * k / 256), std::sin(2 * M_PI * k / 256));
      return disk;
    }
    return {*lo_, Point2(hi_->x(), lo_->y()), *hi_, Point2(lo_->x(), hi_->y())};
  }

  double span() const { return hi_->x() - lo_->x(); }
  double scale() const { return scale_; }
  const Point2& lo() const { return *lo_; }

 private:
  Chart chart_;
  std::optional<Point2> lo_, hi_;
  double scale_ = 1.0;
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string points_attr(const Polygon& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += num(pts[i].x()) + "," + num(pts[i].y());
  }
  return s;
}

/// Linear constraints of a polytope in the planar image.
std::vector<HalfPlane> planar_faces(const ConvexBody& body) {
  const Chart& chart = body.chart();
  const double side = chart.kind == ChartKind::spherical && body.interior_point()(0) < 0 ? -1.0 : 1.0;
  std::vector<HalfPlane> out;
  for (const Hyperplane& f : body.faces()) {
    const Vector& u = f.normal();
    switch (chart.kind) {
      case ChartKind::euclidean: out.push_back({Point2(u(0), u(1)), f.offset()}); break;
      case ChartKind::hyperbolic: out.push_back({Point2(u(1), u(2)), u(0)}); break;
      case ChartKind::spherical: out.push_back({side * Point2(u(1), u(2)), -side * u(0)}); break;
    }
  }
  return out;
}

/// Sampled boundary of a ball; a missing image breaks the outline.
std::vector<Polygon> ball_outline(const Canvas& canvas, const ConvexBody& body) {
  const Chart& chart = body.chart();
  const Ball& b = body.as_ball();
  const TangentFrame frame(chart, b.center);
  std::vector<Polygon> pieces(1);
  for (int k = 0; k <= 256; ++k) {
    Vector c(2);
    c << std::cos(2 * M_PI * k / 256), std::sin(2 * M_PI * k / 256);
    const auto y = canvas.map(exponential_map(chart, b.center, frame.vector(c), b.radius));
    if (y) {
      pieces.back().push_back(*y);
    } else if (!pieces.back().empty()) {
      pieces.emplace_back();
    }
  }
  if (pieces.back().empty()) pieces.pop_back();
  return pieces;
}

/// Far point along a geodesic from p for rays that never reach a contact.
std::optional<Point2> far_point(const Canvas& canvas, const Chart& chart, const GeodesicRay& ray) {
  switch (chart.kind) {
    case ChartKind::euclidean: return canvas.map(ray.at(4.0 * canvas.span()));
    case ChartKind::hyperbolic: return canvas.map(ray.at(15.0));
    case ChartKind::spherical: {
      const double sign = ray.base()(0) < 0 ? -1.0 : 1.0;
      std::optional<Point2> last;
      for (int k = 1; k < 314; ++k) {
        const Vector x = ray.at(0.01 * k);
        if (sign * x(0) < 1e-3) break;
        last = canvas.map(x);
      }
      return last;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string render_svg(const Scene& scene, const RenderOptions& options) {
  const Chart& chart = scene.chart();
  if (chart.dimension != 2)
    fail(ErrorCode::unsupported, "rendering needs a 2-dimensional scene");
  const TimelikeContext& ctx = scene.context();
  Canvas canvas(chart);

  std::optional<Vector> apex;
  if (options.apex) apex = chart_point(chart, *options.apex);

  // Overlay geometry first, so the view covers it.
  struct Ray2 {
    Point2 from, to;
    bool past = false;
  };
  struct PendingRay {
    GeodesicRay ray;
    std::optional<Point2> contact;
    bool past = false;
  };
  std::vector<PendingRay> pending;
  std::vector<Ray2> cone_rays, null_rays;
  std::vector<std::pair<double, std::vector<Polygon>>> spheres;
  std::optional<Point2> apex_image;
  if (apex) {
    apex_image = canvas.map(*apex);
    if (!apex_image) fail(ErrorCode::projection_domain, "apex has no planar image");
    canvas.include(*apex_image);
    if (options.cones) {
      std::vector<std::pair<const ConvexBody*, bool>> targets = {{&ctx.future(), false}};
      if (!ctx.is_funk() && ctx.kind() != ContextKind::projective_desitter)
        targets.push_back({&ctx.past(), true});
      for (auto [body, past] : targets)
        for (const ConeRay& r : cone_boundary(*body, *apex)) {
          PendingRay pr{GeodesicRay(chart, *apex, r.direction), std::nullopt, past};
          if (r.contact) pr.contact = canvas.map(*r.contact);
          if (pr.contact) canvas.include(*pr.contact);
          pending.push_back(std::move(pr));
        }
    }
  for (double r : options.radii) {
      std::vector<Polygon> lines(1);
      const auto curve = future_sphere_curve(ctx, *apex, r, options.samples);
      for (const auto& lp : curve) {
        const auto y = lp ? canvas.map(lp->point) : std::nullopt;
        if (y) {
          canvas.include(*y);
          lines.back().push_back(*y);
        } else if (!lines.back().empty()) {
          lines.emplace_back();
        }
      }
      // Join the wrap-around piece.
      if (lines.size() > 1 && curve.front() && curve.back() && !lines.back().empty()) {
        Polygon& tail = lines.back();
        tail.insert(tail.end(), lines.front().begin(), lines.front().end());
        lines.front() = std::move(tail);
        lines.pop_back();
      }
      if (lines.back().empty()) lines.pop_back();
      spheres.emplace_back(r, std::move(lines));
    }
  }
  for (const PointSpec& p : scene.point_specs())
    if (const auto y = canvas.map(chart_point(chart, p.coords))) canvas.include(*y);
  for (const ConvexBody& body : scene.bodies()) {
    if (body.is_ball()) {
      for (const Polygon& piece : ball_outline(canvas, body))
        for (const Point2& y : piece) canvas.include(y);
    } else if (const auto w = canvas.map(body.interior_point())) {
      canvas.include(*w);
    }
  }
  canvas.fix_view();

  for (const PendingRay& pr : pending) {
    const auto to = pr.contact ? pr.contact : far_point(canvas, chart, pr.ray);
    if (to) cone_rays.push_back({*apex_image, *to, pr.past});
  }
  if (apex && options.null_directions) {
    if (ctx.kind() != ContextKind::projective_desitter)
      fail(ErrorCode::unsupported, "null directions exist for projective de Sitter contexts");
    for (const NullDirection& d : null_directions(ctx, *apex)) {
      const auto e = canvas.map(GeodesicRay(chart, *apex, d.direction).at(0.6));
      if (e) null_rays.push_back({*apex_image, *e, false});
    }
  }

  const double s = canvas.scale();
  const Point2 lo = canvas.lo();
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out += "<g transform=\"matrix(" + num(s) + ",0,0," + num(-s) + "," + num(20 - lo.x() * s) + "," +
         num(580 + lo.y() * s) + ")\" stroke-linejoin=\"round\">\n";
  const std::string stroke = " vector-effect=\"non-scaling-stroke\"";
  const Polygon frame = canvas.frame();
  if (chart.kind == ChartKind::hyperbolic)
    out += "<polygon class=\"horizon\" points=\"" + points_attr(frame) +
           "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"" + stroke + "/>\n";

  const auto role = [&](const std::string& id) {
    const ContextSpec& c = scene.context_spec();
    if (id == c.future) return std::string("future");
    if (id == c.past) return std::string("past");
    return std::string("other");
  };
  const auto color = [](const std::string& r) {
    return r == "future" ? std::string("#c0392b") : r == "past" ? std::string("#2c6fbb")
                                                                : std::string("#7f7f7f");
  };
  for (std::size_t i = 0; i < scene.bodies().size(); ++i) {
    const ConvexBody& body = scene.bodies()[i];
    const std::string& id = scene.body_specs()[i].id;
    const std::string r = role(id);
    const std::string style = "fill=\"" + color(r) + "\" fill-opacity=\"0.15\" stroke=\"" + color(r) +
                              "\" stroke-width=\"1.5\"" + stroke;
    out += "<g class=\"body " + r + "\" id=\"body-" + escape(id) + "\">\n";
    if (body.is_polytope()) {
      Polygon poly = frame;
      for (const HalfPlane& h : planar_faces(body)) poly = clip(poly, h);
      if (poly.size() >= 3) out += "<polygon points=\"" + points_attr(poly) + "\" " + style + "/>\n";
    } else if (chart.kind == ChartKind::euclidean) {
      const Ball& b = body.as_ball();
      out += "<circle cx=\"" + num(b.center(0)) + "\" cy=\"" + num(b.center(1)) + "\" r=\"" +
             num(b.radius) + "\" " + style + "/>\n";
    } else {
      for (const Polygon& piece : ball_outline(canvas, body))
        out += "<polyline points=\"" + points_attr(piece) + "\" " + style + "/>\n";
    }
    out += "</g>\n";
  }
  if (ctx.kind() == ContextKind::projective_desitter)
    out += "<!-- the future body is the antipode of the past body and shares its image -->\n";

  for (const Ray2& r : cone_rays) {
    out += "<line class=\"cone\" x1=\"" + num(r.from.x()) + "\" y1=\"" + num(r.from.y()) +
           "\" x2=\"" + num(r.to.x()) + "\" y2=\"" + num(r.to.y()) + "\" stroke=\"#333333\"" +
           " stroke-width=\"1\"" + (r.past ? " stroke-dasharray=\"4 3\"" : "") + stroke + "/>\n";
  }
  for (const Ray2& r : null_rays)
    out += "<line class=\"null\" x1=\"" + num(r.from.x()) + "\" y1=\"" + num(r.from.y()) +
           "\" x2=\"" + num(r.to.x()) + "\" y2=\"" + num(r.to.y()) +
           "\" stroke=\"#8e44ad\" stroke-width=\"1.5\"" + stroke + "/>\n";
  for (const auto& [r, lines] : spheres) {
    out += "<g class=\"future-sphere\" data-radius=\"" + num(r) + "\">\n";
    for (const Polygon& line : lines)
      out += "<polyline points=\"" + points_attr(line) +
             "\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"1.5\"" + stroke + "/>\n";
    out += "</g>\n";
  }
  const double dot = 3.0 / s;
  if (apex_image) {
    const Point2* a = &*apex_image;
    out += "<circle class=\"apex\" cx=\"" + num(a->x()) + "\" cy=\"" + num(a->y()) + "\" r=\"" +
           num(dot) + "\" fill=\"black\"/>\n";
  }
  if (options.points) {
    for (const PointSpec& p : scene.point_specs()) {
      const auto y = canvas.map(chart_point(chart, p.coords));
      if (!y) continue;
      out += "<circle class=\"point\" cx=\"" + num(y->x()) + "\" cy=\"" + num(y->y()) + "\" r=\"" +
             num(dot) + "\" fill=\"black\"/>\n";
      out += "<text transform=\"matrix(" + num(1 / s) + ",0,0," + num(-1 / s) + "," +
             num(y->x() + dot) + "," + num(y->y() + dot) + ")\" font-size=\"12\">" + p.id +
             "</text>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace timelike
