#pragma once

// Cone boundaries, future-sphere level curves and the SVG emitter.

#include <optional>
#include <string>
#include <vector>

#include "timelike/context.hpp"

namespace timelike {

class Scene;

/// Boundary ray of the cone of directions from `apex` whose geodesic meets
/// the body transversally. `contact` is the last visible boundary point, or
/// nothing when the body is unbounded in that direction.
struct ConeRay {
  Vector direction;  // unit tangent at the apex
  std::optional<Vector> contact;
  double angle = 0.0;  // opening angle from the axis toward the body witness
};

/// Two rays in dimension 2 (counterclockwise one first); `count` rays spread
/// around the axis in higher dimensions.
std::vector<ConeRay> cone_boundary(const ConvexBody& body, const Vector& apex, int count = 16);

/// Timelike future directions from p in the context: the geodesic meets the
/// future body transversally ahead of p and, for Hilbert contexts, the past
/// body transversally behind p.
bool is_future_direction(const TimelikeContext& ctx, const Vector& p, const Vector& direction);

struct LevelPoint {
  Vector direction;
  Vector point;
  double residual = 0.0;  // |d(p, point) - r|
};

/// Points at distance r from p along `count` directions; directions that
/// are not future directions are skipped, and so are gaps in the output.
/// In dimension 2 the directions are at angles 2 pi k / count measured in
/// the tangent frame of p. Euclidean Funk contexts use the dilation formula;
/// other contexts bisect along each geodesic.
std::vector<std::optional<LevelPoint>> future_sphere_curve(const TimelikeContext& ctx,
                                                           const Vector& p, double r, int count);

/// Unit tangent directions at p used for sampling in dimension 2.
std::vector<Vector> planar_directions(const Chart& chart, const Vector& p, int count);

struct RenderOptions {
  std::optional<Vector> apex;   // chart coordinates
  std::vector<double> radii;    // future spheres around the apex
  bool cones = false;           // cone boundary rays at the apex
  bool null_directions = false; // projective de Sitter contexts only
  bool points = true;           // the scene's named points
  int samples = 720;            // directions per future sphere
};

/// Deterministic 600x600 SVG of a 2-dimensional scene. Euclidean scenes are
/// drawn as is, hyperbolic scenes in the Klein disk and spherical scenes by
/// central projection onto {x0 = 1} (x and -x share an image).
std::string render_svg(const Scene& scene, const RenderOptions& options);

}  // namespace timelike
