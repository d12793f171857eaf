#pragma once

#include <string>
#include <vector>

#include "timelike/hilbert.hpp"

namespace timelike {

struct SphericalHilbertValue {
  double distance = 0.0;
  Vector a1, p, q, a2;
  /// Orthonormal basis (columns) of the 2-plane of the great circle.
  Matrix plane;
};

/// log [a1, p, q, a2] with the sine cross ratio. For projective de Sitter
/// contexts a chord tangent to the caps raises a null-chord error.
SphericalHilbertValue spherical_hilbert_distance(const TimelikeContext& ctx, const Vector& p,
                                                 const Vector& q);

/// Value on a null chord of a projective de Sitter context: the tangency
/// points a2 on K2 and a1 = -a2 on K1 give a cross ratio of one.
SphericalHilbertValue null_chord_value(const TimelikeContext& ctx, const Vector& p,
                                       const Vector& q);

ConvexBody antipodal_body(const ConvexBody& body);

/// x -> x / x0 onto {x0 = 1} (x0 > 1e-9), and its inverse onto the sphere.
Vector gnomonic_project(const Vector& x);
Vector gnomonic_lift(const Vector& y);

/// Central projection of a de Sitter point onto {x0 = 1}.
Vector desitter_project(const Vector& x);

/// Checks <x,x>_M = 1 within 1e-9.
Vector validate_desitter_point(const Vector& x);
/// Point (sinh t, cosh t, 0, ...) of the de Sitter space of dimension n.
Vector desitter_point(double t, int n = 1);

/// arccosh <p,q>_M for a future-directed timelike pair.
double desitter_distance(const Vector& p, const Vector& q);

/// Past cap (-e0, pi/4) of the projective de Sitter context in dimension n.
TimelikeContext desitter_context(int n);

struct DesitterPair {
  Vector p, q;
};

struct DesitterReport {
  std::size_t pairs = 0;
  double max_relative_deviation = 0.0;  // |H - 2 d| / max(2 d, tiny)
  double max_cross_ratio_deviation = 0.0;
  double min_ratio = 0.0;  // H / d over pairs with d > 0
  double max_ratio = 0.0;
  bool passed = false;
  /// Reports that the relation d = 2 H, as sometimes stated, contradicts
  /// the derived H = 2 d.
  std::string note;
};

/// For each pair, compares H of the lifted images with 2 d_dS, and the sine
/// cross ratio with the planar cross ratio of the projected points.
DesitterReport desitter_isometry_check(const std::vector<DesitterPair>& pairs,
                                       double tolerance = 1e-9);

/// Lorentz boost/rotation in SO(n,1)^+ acting on R^{n,1} (n = 2): rapidity
/// `boost` along x1 after a rotation by `angle` in the x1x2 plane.
Matrix lorentz_transform(int n, double angle, double boost);

/// Future-directed tangent directions at p along which the great circle
/// touches the caps. Two directions for n = 2; `count` samples of the cone
/// for n > 2.
struct NullDirection {
  Vector direction;
  double certificate = 0.0;  // |projected center reach - cos R|
};
std::vector<NullDirection> null_directions(const TimelikeContext& ctx, const Vector& p,
                                           int count = 16);

}  // namespace timelike
