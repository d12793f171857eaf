#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "timelike/chart.hpp"

namespace timelike {

inline constexpr double kBoundaryBand = 1e-9;
inline constexpr double kSeparationMargin = 1e-12;

enum class Containment { interior, boundary, exterior };
std::string_view to_string(Containment c);

/// Finite intersection of closed half-spaces {signed_value <= 0}. May be
/// unbounded (a single half-space, a strip wall, ...).
struct HPolytope {
  std::vector<Hyperplane> faces;
};

/// Euclidean ball, spherical cap (radius < pi/2) or hyperbolic ball.
struct Ball {
  Vector center;
  double radius = 1.0;
};

/// Closure K° of an open convex set I in a chart. Always carries a strict
/// interior witness; spherical bodies also carry a hemisphere witness h with
/// <h, x> > 0 on the closure.
class ConvexBody {
 public:
  static ConvexBody polytope(const Chart& chart, std::vector<Hyperplane> faces,
                             std::optional<Vector> interior = std::nullopt,
                             std::optional<Vector> hemisphere = std::nullopt);
  static ConvexBody ball(const Chart& chart, const Vector& center, double radius);
  /// Euclidean half-space {<normal, x> < offset} as a one-face polytope.
  static ConvexBody half_space(const Vector& normal, double offset);

  const Chart& chart() const { return chart_; }
  bool is_polytope() const { return std::holds_alternative<HPolytope>(shape_); }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  const HPolytope& as_polytope() const;
  const Ball& as_ball() const;
  const std::vector<Hyperplane>& faces() const { return as_polytope().faces; }

  const Vector& interior_point() const { return interior_; }
  const std::optional<Vector>& hemisphere() const { return hemisphere_; }

  /// Positive outside, negative inside. Polytopes: largest face signed value
  /// (kernel units); balls: chart distance to the center minus the radius.
  double signed_measure(const Vector& x) const;

  /// Supporting hyperplane at a boundary point of a ball (the tangent plane).
  Hyperplane tangent_plane(const Vector& boundary_point) const;

  /// Image under x -> -x (spherical bodies only).
  ConvexBody antipodal() const;
  /// Image under an orthogonal (euclidean/spherical) or Lorentz (hyperbolic)
  /// linear map of the ambient space. Euclidean translations are not covered.
  ConvexBody transformed(const Matrix& linear) const;
  /// Euclidean bodies only.
  ConvexBody translated(const Vector& shift) const;

  /// Exit point of the geodesic from the interior witness in `direction`, or
  /// nothing when the body is unbounded that way.
  std::optional<Vector> boundary_point_from_interior(const Vector& direction) const;

 private:
  ConvexBody(const Chart& chart, std::variant<HPolytope, Ball> shape, Vector interior,
             std::optional<Vector> hemisphere)
      : chart_(chart), shape_(std::move(shape)), interior_(std::move(interior)),
        hemisphere_(std::move(hemisphere)) {}

  Chart chart_;
  std::variant<HPolytope, Ball> shape_;
  Vector interior_;
  std::optional<Vector> hemisphere_;
};

struct RayHit {
  double t = 0.0;
  Vector point;
  bool transversal = false;
  /// Pairing of the supporting normal with the ray velocity at the hit.
  double pairing = 0.0;
  /// Entering face for polytopes, tangent plane for balls.
  std::optional<Hyperplane> support;
};

Containment contains(const ConvexBody& body, const Vector& x);

/// First parameter t in (0, cutoff) with ray.at(t) in the body. The ray base
/// must be exterior. Tangential contact is reported with transversal = false.
std::optional<RayHit> ray_first_hit(const ConvexBody& body, const GeodesicRay& ray);

/// Supporting planes of a ball tangent at exp_center(radius * direction),
/// restricted to those separating `apex` from the ball.
class TangentFamily {
 public:
  TangentFamily(const Chart& chart, Ball ball, Vector apex)
      : chart_(chart), ball_(std::move(ball)), apex_(std::move(apex)) {}

  const Ball& ball() const { return ball_; }
  const Vector& apex() const { return apex_; }
  /// `direction` is a tangent vector at the center; it is normalized.
  Vector contact_point(const Vector& direction) const;
  Hyperplane plane(const Vector& direction) const;
  bool contains(const Vector& direction) const;

 private:
  Chart chart_;
  Ball ball_;
  Vector apex_;
};

/// P(x): the supporting hyperplanes that separate the body from x.
struct HyperplaneFamily {
  std::variant<std::vector<Hyperplane>, TangentFamily> members;

  bool is_finite() const { return std::holds_alternative<std::vector<Hyperplane>>(members); }
  const std::vector<Hyperplane>& finite() const {
    return std::get<std::vector<Hyperplane>>(members);
  }
  const TangentFamily& tangents() const { return std::get<TangentFamily>(members); }
};

HyperplaneFamily separating_hyperplanes(const ConvexBody& body, const Vector& x);

struct RatioInfimum {
  /// inf over P(q) of log(k(d(p,pi)) / k(d(q,pi))); -inf when some member of
  /// P(q) fails to separate p.
  double value = 0.0;
  std::optional<Hyperplane> argmin;
};

RatioInfimum ratio_infimum(const ConvexBody& body, const Vector& p, const Vector& q);

/// Same ratio minimized over every supporting hyperplane with p and q off the
/// plane, using unsigned kernel distances. Diagnostic only: for compact bodies
/// far-side supports pull this below the P(q) value.
double ratio_infimum_all_supports(const ConvexBody& body, const Vector& p, const Vector& q);

/// Lower bound on the chart distance between two bodies, or a negative number
/// when they cannot be certified disjoint.
double separation_lower_bound(const ConvexBody& a, const ConvexBody& b);

}  // namespace timelike
