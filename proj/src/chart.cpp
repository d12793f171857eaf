#include "timelike/chart.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace timelike {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::coordinate_domain: return "coordinate-domain error";
    case ErrorCode::degenerate_ray: return "degenerate-ray error";
    case ErrorCode::ambiguous_geodesic: return "ambiguous-geodesic error";
    case ErrorCode::chart_mismatch: return "chart-mismatch error";
    case ErrorCode::collinearity: return "collinearity error";
    case ErrorCode::degenerate_configuration: return "degenerate-configuration error";
    case ErrorCode::precondition: return "precondition error";
    case ErrorCode::no_separator: return "no-separator error";
    case ErrorCode::not_in_future: return "not-in-future error";
    case ErrorCode::unsupported: return "unsupported-representation error";
    case ErrorCode::not_timelike_direction: return "not-timelike-direction error";
    case ErrorCode::null_chord: return "null-chord error";
    case ErrorCode::projection_domain: return "projection-domain error";
    case ErrorCode::not_timelike_separated: return "not-timelike-separated error";
    case ErrorCode::curve_evaluation: return "curve-evaluation error";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::validation: return "validation error";
  }
  return "error";
}

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::euclidean: return "euclidean";
    case ChartKind::spherical: return "spherical";
    case ChartKind::hyperbolic: return "hyperbolic";
  }
  return "euclidean";
}

ChartKind chart_kind_from_string(std::string_view name) {
  if (name == "euclidean") return ChartKind::euclidean;
  if (name == "spherical") return ChartKind::spherical;
  if (name == "hyperbolic") return ChartKind::hyperbolic;
  fail(ErrorCode::validation, "unknown chart kind '" + std::string(name) + "'");
}

namespace {

void check_size(const Chart& chart, const Vector& x) {
  if (x.size() != chart.ambient_size())
    fail(ErrorCode::coordinate_domain,
         "expected " + std::to_string(chart.ambient_size()) + " coordinates, got " +
             std::to_string(x.size()));
  if (!x.allFinite()) fail(ErrorCode::coordinate_domain, "non-finite coordinate");
}

}  // namespace

bool is_valid_point(const Chart& chart, const Vector& x) {
  if (x.size() != chart.ambient_size() || !x.allFinite()) return false;
  switch (chart.kind) {
    case ChartKind::euclidean: return true;
    case ChartKind::spherical: return std::abs(x.squaredNorm() - 1.0) <= kPointTolerance;
    case ChartKind::hyperbolic:
      return x(0) > 0 && std::abs(minkowski_dot(x, x) + 1.0) <= kPointTolerance;
  }
  return false;
}

Vector validate_point(const Chart& chart, const Vector& x) {
  check_size(chart, x);
  switch (chart.kind) {
    case ChartKind::euclidean: return x;
    case ChartKind::spherical:
      if (std::abs(x.squaredNorm() - 1.0) > kPointTolerance)
        fail(ErrorCode::coordinate_domain, "spherical point is not unit length");
      return x.normalized();
    case ChartKind::hyperbolic: {
      if (x(0) <= 0 || std::abs(minkowski_dot(x, x) + 1.0) > kPointTolerance)
        fail(ErrorCode::coordinate_domain, "point is not on the upper hyperboloid sheet");
      Vector y = x;
      y(0) = std::sqrt(1.0 + x.tail(x.size() - 1).squaredNorm());
      return y;
    }
  }
  return x;
}

Vector tangent_projection(const Chart& chart, const Vector& at, const Vector& v) {
  switch (chart.kind) {
    case ChartKind::spherical: return v - v.dot(at) * at;
    case ChartKind::hyperbolic: return v + minkowski_dot(v, at) * at;
    default: return v;
  }
}

Matrix tangent_basis(const Chart& chart, const Vector& at) {
  const Eigen::Index m = chart.ambient_size();
  Matrix basis(m, chart.dimension);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < m && found < chart.dimension; ++i) {
    Vector v = tangent_projection(chart, at, Vector::Unit(m, i));
    for (Eigen::Index j = 0; j < found; ++j)
      v -= chart_dot(chart.kind, v, basis.col(j)) * basis.col(j);
    const double n = tangent_norm(chart.kind, v);
    if (n > 1e-8) basis.col(found++) = v / n;
  }
  if (found < chart.dimension) fail(ErrorCode::degenerate_configuration, "tangent basis");
  return basis;
}

Vector lift_klein(const Vector& y) {
  const double r2 = y.squaredNorm();
  if (!(r2 < 1.0)) fail(ErrorCode::coordinate_domain, "Klein coordinates must satisfy |y| < 1");
  Vector x(y.size() + 1);
  const double s = 1.0 / std::sqrt(1.0 - r2);
  x(0) = s;
  x.tail(y.size()) = s * y;
  return x;
}

Vector to_klein(const Vector& x) { return x.tail(x.size() - 1) / x(0); }

Vector exponential_map(const Chart& chart, const Vector& center, const Vector& unit_tangent,
                       double r) {
  switch (chart.kind) {
    case ChartKind::spherical: return center * std::cos(r) + unit_tangent * std::sin(r);
    case ChartKind::hyperbolic: return center * std::cosh(r) + unit_tangent * std::sinh(r);
    default: return center + r * unit_tangent;
  }
}

double chart_distance(const Chart& chart, const Vector& x_in, const Vector& y_in) {
  const Vector x = validate_point(chart, x_in);
  const Vector y = validate_point(chart, y_in);
  switch (chart.kind) {
    case ChartKind::euclidean: return (x - y).norm();
    case ChartKind::spherical: return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
    case ChartKind::hyperbolic: {
      const Vector diff = x - y;
      const double chord2 = std::max(0.0, minkowski_dot(diff, diff));
      return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

Hyperplane::Hyperplane(const Chart& chart, const Vector& normal, double offset)
    : chart_(chart), normal_(normal), offset_(offset) {
  if (normal.size() != chart.ambient_size() || !normal.allFinite())
    fail(ErrorCode::coordinate_domain, "hyperplane normal has the wrong size");
  const double sq = chart_dot(chart.kind, normal, normal);
  if (!(sq > 0)) fail(ErrorCode::coordinate_domain, "hyperplane normal must be spacelike/nonzero");
  const double scale = std::sqrt(sq);
  normal_ /= scale;
  if (chart.kind == ChartKind::euclidean) {
    offset_ /= scale;
  } else {
    if (offset != 0.0)
      fail(ErrorCode::coordinate_domain, "non-euclidean hyperplanes pass through the origin");
    offset_ = 0.0;
  }
}

Hyperplane Hyperplane::flipped() const {
  Hyperplane h = *this;
  h.normal_ = -normal_;
  h.offset_ = -offset_;
  return h;
}

bool Hyperplane::approx_equal(const Hyperplane& other, double tol) const {
  return chart_ == other.chart_ && (normal_ - other.normal_).cwiseAbs().maxCoeff() <= tol &&
         std::abs(offset_ - other.offset_) <= tol;
}

double hyperplane_kernel(const Chart& chart, const Vector& x, const Hyperplane& plane) {
  if (!(plane.chart() == chart)) fail(ErrorCode::chart_mismatch, "hyperplane from another chart");
  return std::abs(plane.signed_value(validate_point(chart, x)));
}

double hyperplane_distance(const Chart& chart, const Vector& x, const Hyperplane& plane) {
  const double k = hyperplane_kernel(chart, x, plane);
  switch (chart.kind) {
    case ChartKind::spherical: return std::asin(std::min(1.0, k));
    case ChartKind::hyperbolic: return std::asinh(k);
    default: return k;
  }
}

// ---------------------------------------------------------------------------

GeodesicRay::GeodesicRay(const Chart& chart, const Vector& base, const Vector& direction)
    : chart_(chart), base_(validate_point(chart, base)) {
  if (direction.size() != chart.ambient_size() || !direction.allFinite())
    fail(ErrorCode::coordinate_domain, "ray direction has the wrong size");
  Vector u = tangent_projection(chart, base_, direction);
  const double norm = tangent_norm(chart.kind, u);
  if (!(norm > 1e-300) || norm <= 1e-14 * std::max(1.0, direction.norm()))
    fail(ErrorCode::degenerate_ray, "ray direction is zero or normal to the chart");
  tangent_ = u / norm;
}

Vector GeodesicRay::at(double t) const { return exponential_map(chart_, base_, tangent_, t); }

Vector GeodesicRay::velocity(double t) const {
  switch (chart_.kind) {
    case ChartKind::spherical: return -base_ * std::sin(t) + tangent_ * std::cos(t);
    case ChartKind::hyperbolic: return base_ * std::sinh(t) + tangent_ * std::cosh(t);
    default: return tangent_;
  }
}

std::pair<double, double> GeodesicRay::pairing(const Hyperplane& plane) const {
  if (!(plane.chart() == chart_)) fail(ErrorCode::chart_mismatch, "hyperplane from another chart");
  return {plane.signed_value(base_), plane.rate(tangent_)};
}

std::optional<double> GeodesicRay::crossing(const Hyperplane& plane) const {
  const auto [a, b] = pairing(plane);
  switch (chart_.kind) {
    case ChartKind::euclidean: {
      if (b == 0.0) return std::nullopt;
      const double t = -a / b;
      if (t > 0) return t;
      return std::nullopt;
    }
    case ChartKind::hyperbolic: {
      if (b == 0.0) return std::nullopt;
      const double r = -a / b;
      if (!(r > 0.0 && r < 1.0)) return std::nullopt;
      return std::atanh(r);
    }
    case ChartKind::spherical: {
      if (a == 0.0) return std::nullopt;
      const double t = a > 0 ? std::atan2(a, -b) : std::atan2(-a, b);
      if (t > 0 && t < M_PI) return t;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

GeodesicRay geodesic_through(const Chart& chart, const Vector& p_in, const Vector& q_in) {
  const Vector p = validate_point(chart, p_in);
  const Vector q = validate_point(chart, q_in);
  if ((p - q).norm() == 0.0 || chart_distance(chart, p, q) == 0.0)
    fail(ErrorCode::degenerate_ray, "coincident points do not determine a geodesic");
  switch (chart.kind) {
    case ChartKind::euclidean: return GeodesicRay(chart, p, q - p);
    case ChartKind::spherical:
      if ((p + q).norm() < 1e-12)
        fail(ErrorCode::ambiguous_geodesic, "antipodal points lie on infinitely many great circles");
      return GeodesicRay(chart, p, q - p.dot(q) * p);
    case ChartKind::hyperbolic: return GeodesicRay(chart, p, q + minkowski_dot(p, q) * p);
  }
  return GeodesicRay(chart, p, q - p);
}

// ---------------------------------------------------------------------------

double affine_cross_ratio(const Vector& a1, const Vector& p, const Vector& q, const Vector& a2) {
  const std::array<const Vector*, 4> pts{&a1, &p, &q, &a2};
  for (const Vector* x : pts)
    if (x->size() != a1.size()) fail(ErrorCode::coordinate_domain, "mixed point dimensions");
  // Line direction from the most separated pair.
  double best = -1.0;
  Vector origin = a1, dir = a2 - a1;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double n = (*pts[j] - *pts[i]).norm();
      if (n > best) {
        best = n;
        origin = *pts[i];
        dir = *pts[j] - *pts[i];
      }
    }
  if (!(best > 0)) fail(ErrorCode::degenerate_configuration, "all four points coincide");
  dir /= best;
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Vector rel = *pts[i] - origin;
    s[i] = rel.dot(dir);
    if ((rel - s[i] * dir).norm() > kCollinearity)
      fail(ErrorCode::collinearity, "cross-ratio points are not collinear");
  }
  const double num = (s[3] - s[1]) * (s[2] - s[0]);
  const double den = (s[3] - s[2]) * (s[1] - s[0]);
  if (den == 0.0) fail(ErrorCode::degenerate_configuration, "cross ratio has a zero denominator");
  return num / den;
}

namespace {

double sin_between(const Vector& x, const Vector& y) {
  return 0.5 * (x - y).norm() * (x + y).norm();
}

}  // namespace

double spherical_cross_ratio(const Vector& p1, const Vector& p2, const Vector& p3,
                             const Vector& p4) {
  const std::array<const Vector*, 4> pts{&p1, &p2, &p3, &p4};
  for (const Vector* x : pts)
    if (x->size() != p1.size() || std::abs(x->squaredNorm() - 1.0) > kPointTolerance)
      fail(ErrorCode::coordinate_domain, "spherical cross ratio needs unit vectors");
  // Orthonormal basis of the spanned 2-plane from the most independent pair.
  double best = -1.0;
  Vector e1, e2;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Vector& a = *pts[i];
      const Vector perp = *pts[j] - pts[j]->dot(a) * a;
      if (perp.norm() > best) {
        best = perp.norm();
        e1 = a;
        e2 = perp;
      }
    }
  if (best > 1e-12) {
    e2 /= best;
    for (const Vector* x : pts) {
      const Vector residual = *x - x->dot(e1) * e1 - x->dot(e2) * e2;
      if (residual.norm() > kCollinearity)
        fail(ErrorCode::collinearity, "cross-ratio points are not on one great circle");
    }
  }
  const double num = sin_between(p2, p4) * sin_between(p3, p1);
  const double den = sin_between(p3, p4) * sin_between(p2, p1);
  if (den == 0.0) fail(ErrorCode::degenerate_configuration, "cross ratio has a zero denominator");
  return num / den;
}

double kernel_cross_ratio(ChartKind kind, double d_p_a2, double d_q_a1, double d_q_a2,
                          double d_p_a1) {
  const double den = distance_kernel(kind, d_q_a2) * distance_kernel(kind, d_p_a1);
  if (den == 0.0) fail(ErrorCode::degenerate_configuration, "cross ratio has a zero denominator");
  return distance_kernel(kind, d_p_a2) * distance_kernel(kind, d_q_a1) / den;
}

}  // namespace timelike
