#include "timelike/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyhedral.hpp"

namespace timelike {

std::string_view to_string(Containment c) {
  switch (c) {
    case Containment::interior: return "interior";
    case Containment::boundary: return "boundary";
    case Containment::exterior: return "exterior";
  }
  return "exterior";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Hyperplane> deduplicate(std::vector<Hyperplane> faces) {
  std::vector<Hyperplane> out;
  for (auto& f : faces) {
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const Hyperplane& g) { return g.approx_equal(f); });
    if (!dup) out.push_back(std::move(f));
  }
  return out;
}

double max_face_value(const std::vector<Hyperplane>& faces, const Vector& x) {
  double m = -kInf;
  for (const auto& f : faces) m = std::max(m, f.signed_value(x));
  return m;
}

/// Faces as rows of a linear system in a flat chart: euclidean coordinates,
/// Klein coordinates for the hyperboloid, or gnomonic coordinates y around a
/// hemisphere center h (x proportional to h + B y).
struct LinearChart {
  Matrix A;
  Vector b;
  Matrix basis;  // spherical only
};

LinearChart linearize_faces(const Chart& chart, const std::vector<Hyperplane>& faces,
                            const Vector& h) {
  const auto m = static_cast<Eigen::Index>(faces.size());
  const int n = chart.dimension;
  LinearChart out{Matrix(m, n), Vector(m), Matrix()};
  if (chart.kind == ChartKind::spherical) out.basis = detail::complement_basis(h);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector& u = faces[static_cast<std::size_t>(i)].normal();
    switch (chart.kind) {
      case ChartKind::euclidean:
        out.A.row(i) = u.transpose();
        out.b(i) = faces[static_cast<std::size_t>(i)].offset();
        break;
      case ChartKind::hyperbolic:
        // <w, (1, y)>_M = -w0 + w_s . y <= 0
        out.A.row(i) = u.tail(n).transpose();
        out.b(i) = u(0);
        break;
      case ChartKind::spherical:
        out.A.row(i) = (out.basis.transpose() * u).transpose();
        out.b(i) = -u.dot(h);
        break;
    }
  }
  return out;
}

Vector from_linear(const Chart& chart, const LinearChart& lc, const Vector& h, const Vector& y) {
  switch (chart.kind) {
    case ChartKind::hyperbolic: return lift_klein(y);
    case ChartKind::spherical: return (h + lc.basis * y).normalized();
    default: return y;
  }
}

Vector hemisphere_for(const Chart& chart, const std::vector<Hyperplane>& faces,
                      const std::optional<Vector>& given) {
  const int m = chart.ambient_size();
  Matrix U(m, static_cast<Eigen::Index>(faces.size()));
  for (std::size_t i = 0; i < faces.size(); ++i)
    U.col(static_cast<Eigen::Index>(i)) = faces[i].normal();
  Vector h;
  if (given) {
    if (given->size() != m || !(given->norm() > 0))
      fail(ErrorCode::validation, "hemisphere witness has the wrong size");
    h = given->normalized();
  } else {
    Eigen::FullPivLU<Matrix> lu(U);
    if (lu.rank() < m)
      fail(ErrorCode::validation,
           "spherical polytope normals must span the ambient space (body not in an open "
           "hemisphere); pass an explicit hemisphere witness");
    h = -U.rowwise().sum().normalized();
  }
  // The closed cone {<u_i, x> <= 0} meets {<h, x> <= 0} only at the origin.
  Matrix A(static_cast<Eigen::Index>(faces.size()) + 1 + 2 * m, m);
  Vector b = Vector::Zero(A.rows());
  A.topRows(static_cast<Eigen::Index>(faces.size())) = U.transpose();
  A.row(static_cast<Eigen::Index>(faces.size())) = h.transpose();
  for (int j = 0; j < m; ++j) {
    A.row(static_cast<Eigen::Index>(faces.size()) + 1 + 2 * j) = Vector::Unit(m, j).transpose();
    A.row(static_cast<Eigen::Index>(faces.size()) + 2 + 2 * j) = -Vector::Unit(m, j).transpose();
    b(static_cast<Eigen::Index>(faces.size()) + 1 + 2 * j) = 1.0;
    b(static_cast<Eigen::Index>(faces.size()) + 2 + 2 * j) = 1.0;
  }
  // A nonzero vertex of the boxed cone means the cone is not just the origin.
  for (const Vector& v : detail::polyhedron_vertices(A, b))
    if (v.cwiseAbs().maxCoeff() > 1e-9)
      fail(ErrorCode::validation, "spherical body is not contained in an open hemisphere");
  return h;
}

Vector polytope_interior(const Chart& chart, const std::vector<Hyperplane>& faces,
                         const Vector& h) {
  const LinearChart lc = linearize_faces(chart, faces, h);
  // Unbounded bodies push the Chebyshev center to the box corner, so grow the
  // box from the scale of the offsets and keep the first usable witness.
  std::optional<detail::ChebyshevBall> ball;
  if (chart.kind == ChartKind::hyperbolic) {
    ball = detail::chebyshev_center(lc.A, lc.b, 0.99 / std::sqrt(chart.dimension));
  } else {
    const double scale = 4.0 * (1.0 + lc.b.cwiseAbs().maxCoeff());
    for (double box = scale; box <= 1e6 * scale; box *= 10.0) {
      ball = detail::chebyshev_center(lc.A, lc.b, box);
      if (ball && ball->radius > 1e-9) break;
    }
  }
  if (!ball || !(ball->radius > 1e-9))
    fail(ErrorCode::validation, "polytope has empty interior (no strict interior witness found)");
  return from_linear(chart, lc, h, ball->center);
}

}  // namespace

// ---------------------------------------------------------------------------

ConvexBody ConvexBody::polytope(const Chart& chart, std::vector<Hyperplane> faces,
                                std::optional<Vector> interior, std::optional<Vector> hemisphere) {
  if (faces.empty()) fail(ErrorCode::validation, "polytope needs at least one face");
  for (const auto& f : faces)
    if (!(f.chart() == chart)) fail(ErrorCode::chart_mismatch, "face from another chart");
  faces = deduplicate(std::move(faces));
  std::optional<Vector> h;
  if (chart.kind == ChartKind::spherical) h = hemisphere_for(chart, faces, hemisphere);
  Vector witness;
  if (interior) {
    witness = validate_point(chart, *interior);
  } else {
    witness = polytope_interior(chart, faces, h ? *h : Vector());
  }
  if (!(max_face_value(faces, witness) < -kBoundaryBand))
    fail(ErrorCode::validation, "interior witness is not strictly inside the polytope");
  return ConvexBody(chart, HPolytope{std::move(faces)}, witness, h);
}

ConvexBody ConvexBody::ball(const Chart& chart, const Vector& center, double radius) {
  const Vector c = validate_point(chart, center);
  if (!(radius > 0) || !std::isfinite(radius))
    fail(ErrorCode::validation, "ball radius must be positive");
  if (chart.kind == ChartKind::spherical && !(radius < M_PI / 2))
    fail(ErrorCode::validation, "spherical cap radius must be below pi/2");
  std::optional<Vector> h;
  if (chart.kind == ChartKind::spherical) h = c;
  return ConvexBody(chart, Ball{c, radius}, c, h);
}

ConvexBody ConvexBody::half_space(const Vector& normal, double offset) {
  const Chart chart = Chart::euclidean(static_cast<int>(normal.size()));
  const Hyperplane face(chart, normal, offset);
  // Step one unit inside along the normal from the foot of the origin.
  const Vector witness = face.normal() * (face.offset() - 1.0);
  return polytope(chart, {face}, witness);
}

const HPolytope& ConvexBody::as_polytope() const {
  if (!is_polytope()) fail(ErrorCode::unsupported, "body is not an h-polytope");
  return std::get<HPolytope>(shape_);
}

const Ball& ConvexBody::as_ball() const {
  if (!is_ball()) fail(ErrorCode::unsupported, "body is not a ball");
  return std::get<Ball>(shape_);
}

double ConvexBody::signed_measure(const Vector& x) const {
  if (is_polytope()) return max_face_value(as_polytope().faces, x);
  const Ball& b = as_ball();
  return chart_distance(chart_, x, b.center) - b.radius;
}

Hyperplane ConvexBody::tangent_plane(const Vector& boundary_point) const {
  const Ball& b = as_ball();
  switch (chart_.kind) {
    case ChartKind::euclidean: {
      const Vector n = (boundary_point - b.center).normalized();
      return Hyperplane(chart_, n, n.dot(boundary_point));
    }
    case ChartKind::spherical:
      // Tangent at the point, pointing away from the center.
      return Hyperplane(chart_, -(b.center - b.center.dot(boundary_point) * boundary_point));
    case ChartKind::hyperbolic:
      return Hyperplane(chart_,
                        -(b.center + minkowski_dot(b.center, boundary_point) * boundary_point));
  }
  fail(ErrorCode::unsupported, "tangent plane");
}

ConvexBody ConvexBody::antipodal() const {
  if (chart_.kind != ChartKind::spherical)
    fail(ErrorCode::unsupported, "antipodal image needs a spherical body");
  return transformed(-Matrix::Identity(chart_.ambient_size(), chart_.ambient_size()));
}

ConvexBody ConvexBody::transformed(const Matrix& L) const {
  std::optional<Vector> h;
  if (hemisphere_) h = L * *hemisphere_;
  const Vector witness = L * interior_;
  if (is_ball()) {
    ConvexBody out = ball(chart_, L * as_ball().center, as_ball().radius);
    return out;
  }
  std::vector<Hyperplane> faces;
  for (const auto& f : as_polytope().faces) faces.emplace_back(chart_, L * f.normal(), f.offset());
  return polytope(chart_, std::move(faces), validate_point(chart_, witness), h);
}

ConvexBody ConvexBody::translated(const Vector& shift) const {
  if (chart_.kind != ChartKind::euclidean)
    fail(ErrorCode::unsupported, "translation needs a euclidean body");
  if (is_ball()) return ball(chart_, as_ball().center + shift, as_ball().radius);
  std::vector<Hyperplane> faces;
  for (const auto& f : as_polytope().faces)
    faces.emplace_back(chart_, f.normal(), f.offset() + f.normal().dot(shift));
  return polytope(chart_, std::move(faces), Vector(interior_ + shift));
}

std::optional<Vector> ConvexBody::boundary_point_from_interior(const Vector& direction) const {
  const GeodesicRay ray(chart_, interior_, direction);
  if (is_ball()) {
    const Ball& b = as_ball();
    // Witness is the center, so the exit is at the radius.
    return ray.at(b.radius);
  }
  double exit = chart_.ray_cutoff();
  for (const auto& f : as_polytope().faces)
    if (auto t = ray.crossing(f)) exit = std::min(exit, *t);
  if (!std::isfinite(exit) || exit >= chart_.ray_cutoff()) return std::nullopt;
  return ray.at(exit);
}

// ---------------------------------------------------------------------------

Containment contains(const ConvexBody& body, const Vector& x_in) {
  const Vector x = validate_point(body.chart(), x_in);
  const double s = body.signed_measure(x);
  if (s > kBoundaryBand) return Containment::exterior;
  if (s < -kBoundaryBand) return Containment::interior;
  return Containment::boundary;
}

namespace {

std::optional<RayHit> polytope_hit(const ConvexBody& body, const GeodesicRay& ray) {
  const double cutoff = body.chart().ray_cutoff();
  double t_in = 0.0, t_out = cutoff;
  const Hyperplane* entering = nullptr;
  for (const auto& face : body.faces()) {
    const auto [a, b] = ray.pairing(face);
    const auto cross = ray.crossing(face);
    if (a < 0) {
      if (cross) t_out = std::min(t_out, *cross);
    } else if (a > 0) {
      if (!cross) return std::nullopt;
      if (*cross > t_in || !entering) {
        if (*cross >= t_in) {
          t_in = *cross;
          entering = &face;
        }
      }
    } else if (b >= 0) {
      return std::nullopt;
    }
  }
  if (!entering)
    fail(ErrorCode::precondition, "ray base point is not exterior to the body");
  if (!(t_in < t_out - kBetweenness)) return std::nullopt;
  RayHit hit;
  hit.t = t_in;
  hit.point = ray.at(t_in);
  hit.pairing = entering->rate(ray.velocity(t_in));
  hit.transversal = std::abs(hit.pairing) > kTransversality;
  hit.support = *entering;
  return hit;
}

std::optional<RayHit> ball_hit(const ConvexBody& body, const GeodesicRay& ray) {
  const Ball& ball = body.as_ball();
  const Chart& chart = body.chart();
  const Vector& p = ray.base();
  const Vector& u = ray.tangent();
  double t = 0.0;
  bool tangent = false;
  switch (chart.kind) {
    case ChartKind::euclidean: {
      const Vector rel = p - ball.center;
      const double beta = u.dot(rel);
      const double gamma = rel.squaredNorm() - ball.radius * ball.radius;
      const double disc = beta * beta - gamma;
      if (disc < 0 || beta >= 0) return std::nullopt;
      const double root = std::sqrt(disc);
      t = gamma / (-beta + root);
      tangent = disc == 0.0;
      break;
    }
    case ChartKind::spherical: {
      const double alpha = ball.center.dot(p);
      const double beta = ball.center.dot(u);
      const double rho = std::hypot(alpha, beta);
      const double cr = std::cos(ball.radius);
      if (rho < cr) return std::nullopt;
      const double phi = std::atan2(beta, alpha);
      const double half = std::acos(std::min(1.0, cr / rho));
      t = phi - half;
      while (t <= 0) t += 2 * M_PI;
      if (t >= M_PI) return std::nullopt;
      tangent = rho == cr;
      break;
    }
    case ChartKind::hyperbolic: {
      const double alpha = -minkowski_dot(ball.center, p);
      const double beta = -minkowski_dot(ball.center, u);
      const double c = std::cosh(ball.radius);
      const double disc = c * c - (alpha - beta) * (alpha + beta);
      if (disc < 0) return std::nullopt;
      const double z = (alpha - beta) / (c + std::sqrt(disc));
      if (!(z > 1.0)) return std::nullopt;
      t = std::log(z);
      tangent = disc == 0.0;
      break;
    }
  }
  RayHit hit;
  hit.t = t;
  hit.point = ray.at(t);
  if (chart.kind == ChartKind::spherical) hit.point.normalize();
  if (chart.kind == ChartKind::hyperbolic) hit.point = validate_point(chart, hit.point);
  hit.support = body.tangent_plane(hit.point);
  hit.pairing = hit.support->rate(ray.velocity(t));
  hit.transversal = !tangent && std::abs(hit.pairing) > kTransversality;
  return hit;
}

}  // namespace

std::optional<RayHit> ray_first_hit(const ConvexBody& body, const GeodesicRay& ray) {
  if (!(ray.chart() == body.chart())) fail(ErrorCode::chart_mismatch, "ray from another chart");
  if (contains(body, ray.base()) != Containment::exterior)
    fail(ErrorCode::precondition, "ray base point is not exterior to the body");
  return body.is_polytope() ? polytope_hit(body, ray) : ball_hit(body, ray);
}

// ---------------------------------------------------------------------------

Vector TangentFamily::contact_point(const Vector& direction) const {
  const Vector u = tangent_projection(chart_, ball_.center, direction);
  const double n = tangent_norm(chart_.kind, u);
  if (!(n > 0)) fail(ErrorCode::degenerate_ray, "zero contact direction");
  return exponential_map(chart_, ball_.center, u / n, ball_.radius);
}

Hyperplane TangentFamily::plane(const Vector& direction) const {
  const Vector u = tangent_projection(chart_, ball_.center, direction);
  const double n = tangent_norm(chart_.kind, u);
  if (!(n > 0)) fail(ErrorCode::degenerate_ray, "zero contact direction");
  const Vector w = u / n;
  const double r = ball_.radius;
  switch (chart_.kind) {
    case ChartKind::euclidean: return Hyperplane(chart_, w, w.dot(ball_.center) + r);
    case ChartKind::spherical:
      return Hyperplane(chart_, w * std::cos(r) - ball_.center * std::sin(r));
    case ChartKind::hyperbolic:
      return Hyperplane(chart_, ball_.center * std::sinh(r) + w * std::cosh(r));
  }
  fail(ErrorCode::unsupported, "tangent family");
}

bool TangentFamily::contains(const Vector& direction) const {
  return plane(direction).signed_value(apex_) > kSeparationMargin;
}

HyperplaneFamily separating_hyperplanes(const ConvexBody& body, const Vector& x_in) {
  const Vector x = validate_point(body.chart(), x_in);
  if (contains(body, x) != Containment::exterior)
    fail(ErrorCode::no_separator, "only exterior points have separating hyperplanes");
  if (body.is_ball()) return {TangentFamily(body.chart(), body.as_ball(), x)};
  std::vector<Hyperplane> out;
  for (const auto& f : body.faces())
    if (f.signed_value(x) > kSeparationMargin) out.push_back(f);
  if (out.empty()) fail(ErrorCode::no_separator, "no face separates the point");
  return {std::move(out)};
}

RatioInfimum ratio_infimum(const ConvexBody& body, const Vector& p_in, const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if (contains(body, p) != Containment::exterior)
    fail(ErrorCode::precondition, "ratio infimum needs an exterior p");
  const HyperplaneFamily family = separating_hyperplanes(body, q);
  if (family.is_finite()) {
    RatioInfimum best{kInf, std::nullopt};
    for (const auto& plane : family.finite()) {
      const double sp = plane.signed_value(p);
      const double value = sp > 0 ? std::log(sp / plane.signed_value(q)) : -kInf;
      if (value < best.value) best = {value, plane};
    }
    return best;
  }
  // Balls: the minimizer is the tangent plane at the first hit of the ray p->q.
  const TangentFamily& tangents = family.tangents();
  if ((p - q).norm() == 0.0) {
    const Vector toward = tangent_projection(chart, body.as_ball().center, q);
    Vector dir = toward;
    if (chart.kind == ChartKind::euclidean) dir = q - body.as_ball().center;
    return {0.0, tangents.plane(dir)};
  }
  const GeodesicRay ray = geodesic_through(chart, p, q);
  const auto hit = ray_first_hit(body, ray);
  const double tq = chart_distance(chart, p, q);
  if (!hit || !hit->transversal || !(tq < hit->t - kBetweenness)) return {-kInf, std::nullopt};
  const Hyperplane& plane = *hit->support;
  return {std::log(plane.signed_value(p) / plane.signed_value(q)), plane};
}

double ratio_infimum_all_supports(const ConvexBody& body, const Vector& p_in, const Vector& q_in) {
  const Chart& chart = body.chart();
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  double best = kInf;
  auto consider = [&](const Hyperplane& plane) {
    const double sp = std::abs(plane.signed_value(p));
    const double sq = std::abs(plane.signed_value(q));
    if (sp > 0 && sq > 0) best = std::min(best, std::log(sp / sq));
  };
  if (body.is_polytope()) {
    for (const auto& f : body.faces()) consider(f);
    return best;
  }
  const TangentFamily family(chart, body.as_ball(), q);
  const Matrix basis = tangent_basis(chart, body.as_ball().center);
  const int n = chart.dimension;
  const int samples = 4096;
  for (int i = 0; i < samples; ++i) {
    Vector coeffs(n);
    if (n == 1) {
      coeffs(0) = i % 2 == 0 ? 1.0 : -1.0;
    } else if (n == 2) {
      const double a = 2 * M_PI * i / samples;
      coeffs << std::cos(a), std::sin(a);
    } else {
      // Fibonacci sphere in the first three tangent coordinates.
      const double z = 1.0 - 2.0 * (i + 0.5) / samples;
      const double r = std::sqrt(1 - z * z);
      const double a = M_PI * (3.0 - std::sqrt(5.0)) * i;
      coeffs.setZero();
      coeffs(0) = r * std::cos(a);
      coeffs(1) = r * std::sin(a);
      coeffs(2) = z;
    }
    consider(family.plane(basis * coeffs));
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

double kernel_to_distance(ChartKind kind, double k) {
  switch (kind) {
    case ChartKind::spherical: return std::asin(std::clamp(k, -1.0, 1.0));
    case ChartKind::hyperbolic: return std::asinh(k);
    default: return k;
  }
}

/// Smallest signed value of `plane` over a polytope, or nothing if the
/// polytope is unbounded in a way that makes it -inf. For non-euclidean
/// charts the value is a lower bound of the kernel (hyperbolic) or exact over
/// the vertices (spherical).
std::optional<double> min_over_polytope(const ConvexBody& body, const Hyperplane& plane) {
  const Chart& chart = body.chart();
  const Vector h = body.hemisphere() ? *body.hemisphere() : Vector();
  LinearChart lc = linearize_faces(chart, body.faces(), h);
  const int n = chart.dimension;
  if (chart.kind == ChartKind::euclidean) {
    // Bounded LP with a large box; hitting the box means unbounded.
    const double box = 1e7;
    Matrix A(lc.A.rows() + 2 * n, n);
    Vector b(lc.A.rows() + 2 * n);
    A.topRows(lc.A.rows()) = lc.A;
    b.head(lc.A.rows()) = lc.b;
    for (int j = 0; j < n; ++j) {
      A.row(lc.A.rows() + 2 * j) = Vector::Unit(n, j).transpose();
      A.row(lc.A.rows() + 2 * j + 1) = -Vector::Unit(n, j).transpose();
      b(lc.A.rows() + 2 * j) = box;
      b(lc.A.rows() + 2 * j + 1) = box;
    }
    const auto sol = detail::lp_maximize(A, b, -plane.normal());
    if (!sol || sol->x.cwiseAbs().maxCoeff() > 0.5 * box) return std::nullopt;
    return -sol->value - plane.offset();
  }
  if (chart.kind == ChartKind::hyperbolic) {
    // Klein ball approximated from outside by its bounding box.
    Matrix A(lc.A.rows() + 2 * n, n);
    Vector b(lc.A.rows() + 2 * n);
    A.topRows(lc.A.rows()) = lc.A;
    b.head(lc.A.rows()) = lc.b;
    for (int j = 0; j < n; ++j) {
      A.row(lc.A.rows() + 2 * j) = Vector::Unit(n, j).transpose();
      A.row(lc.A.rows() + 2 * j + 1) = -Vector::Unit(n, j).transpose();
      b(lc.A.rows() + 2 * j) = 1.0;
      b(lc.A.rows() + 2 * j + 1) = 1.0;
    }
    double best = kInf;
    for (const Vector& y : detail::polyhedron_vertices(A, b)) {
      Vector x(n + 1);
      x(0) = 1.0;
      x.tail(n) = y;
      best = std::min(best, plane.signed_value(x));
    }
    if (!std::isfinite(best)) return std::nullopt;
    return best;
  }
  double best = kInf;
  for (const Vector& y : detail::polyhedron_vertices(lc.A, lc.b))
    best = std::min(best, plane.signed_value((h + lc.basis * y).normalized()));
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

/// Gap certified by the faces of `poly` against `other`, or -1.
double face_separation(const ConvexBody& poly, const ConvexBody& other) {
  const Chart& chart = poly.chart();
  double best = -1.0;
  for (const auto& f : poly.faces()) {
    double gap = -1.0;
    if (other.is_ball()) {
      const Ball& b = other.as_ball();
      if (f.signed_value(b.center) > 0) gap = hyperplane_distance(chart, b.center, f) - b.radius;
    } else if (auto m = min_over_polytope(other, f)) {
      if (*m > 0) gap = kernel_to_distance(chart.kind, *m);
    }
    best = std::max(best, gap);
  }
  return best;
}

}  // namespace

double separation_lower_bound(const ConvexBody& a, const ConvexBody& b) {
  if (!(a.chart() == b.chart())) fail(ErrorCode::chart_mismatch, "bodies in different charts");
  const Chart& chart = a.chart();
  if (a.is_ball() && b.is_ball())
    return chart_distance(chart, a.as_ball().center, b.as_ball().center) - a.as_ball().radius -
           b.as_ball().radius;
  if (chart.kind == ChartKind::euclidean) {
    if (a.is_polytope() && b.is_polytope()) {
      const LinearChart la = linearize_faces(chart, a.faces(), Vector());
      const LinearChart lb = linearize_faces(chart, b.faces(), Vector());
      Matrix A(la.A.rows() + lb.A.rows(), chart.dimension);
      Vector rhs(A.rows());
      A << la.A, lb.A;
      rhs << la.b, lb.b;
      const auto ball = detail::chebyshev_center(A, rhs, 1e6);
      if (!ball) return -1.0;
      // Offsetting both bodies by |r| makes them touch, so they are 2|r| apart.
      return ball->radius < 0 ? -2.0 * ball->radius : -1.0;
    }
    const ConvexBody& poly = a.is_polytope() ? a : b;
    const Ball& ball = a.is_ball() ? a.as_ball() : b.as_ball();
    const LinearChart lp = linearize_faces(chart, poly.faces(), Vector());
    return detail::distance_to_polyhedron(lp.A, lp.b, ball.center) - ball.radius;
  }
  double best = -1.0;
  if (a.is_polytope()) best = std::max(best, face_separation(a, b));
  if (b.is_polytope()) best = std::max(best, face_separation(b, a));
  return best;
}

}  // namespace timelike
