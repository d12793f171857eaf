#pragma once

// Scene and curve files.
//
// A scene is one JSON document:
//   {"chart": {"kind": "euclidean"|"spherical"|"hyperbolic", "dimension": n},
//    "bodies": [{"id": "K", "kind": "hpolytope", "faces": [{"normal": [...], "offset": c}]},
//               {"id": "B", "kind": "ball"|"cap", "center": [...], "radius": r}],
//    "context": {"kind": "funk", "body": "K"}
//             | {"kind": "hilbert"|"spherical_hilbert", "past": "A", "future": "B"}
//             | {"kind": "projective_desitter", "past": "A"},
//    "points": [{"id": "p", "coords": [...]}],
//    "curves": [{"id": "c", "kind": "segment", "points": [[...], [...]]}]}
//
// Bodies may also carry "interior" (a strict interior witness) and
// "hemisphere" (spherical polytopes). Hyperbolic points and ball centers may
// be given with n Klein coordinates and are lifted to the hyperboloid.
// Hyperbolic face normals always have n+1 Minkowski components.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timelike/context.hpp"
#include "timelike/curve.hpp"

namespace timelike {

struct FaceSpec {
  Vector normal;
  double offset = 0.0;
};

struct BodySpec {
  std::string id;
  std::string kind;  // "hpolytope", "ball" or "cap"
  std::vector<FaceSpec> faces;
  Vector center;
  double radius = 0.0;
  std::optional<Vector> interior;
  std::optional<Vector> hemisphere;
};

struct ContextSpec {
  ContextKind kind = ContextKind::funk;
  std::string past;    // empty for funk contexts
  std::string future;  // the Funk body, or the future body
};

struct PointSpec {
  std::string id;
  Vector coords;  // as written in the file
};

/// Curve kinds: "segment" (two points), "polyline" (vertices), "hermite"
/// (points and tangents), "bump" (two points plus sine-bump amplitudes and
/// ambient directions).
struct CurveSpec {
  std::string id;
  std::string kind;
  std::vector<Vector> points;
  std::vector<Vector> tangents;
  std::vector<double> amplitudes;
  std::vector<Vector> directions;
  int samples = 2048;
};

class Scene {
 public:
  /// Validates and builds every body and the context.
  Scene(Chart chart, std::vector<BodySpec> bodies, ContextSpec context,
        std::vector<PointSpec> points = {}, std::vector<CurveSpec> curves = {});

  const Chart& chart() const { return chart_; }
  const std::vector<BodySpec>& body_specs() const { return body_specs_; }
  const ContextSpec& context_spec() const { return context_spec_; }
  const std::vector<PointSpec>& point_specs() const { return point_specs_; }
  const std::vector<CurveSpec>& curve_specs() const { return curve_specs_; }

  const std::vector<ConvexBody>& bodies() const { return bodies_; }
  const ConvexBody& body(std::string_view id) const;
  const TimelikeContext& context() const { return *context_; }
  /// Named point in chart coordinates.
  Vector point(std::string_view id) const;
  TimelikeCurve curve(std::string_view id) const;

 private:
  Chart chart_;
  std::vector<BodySpec> body_specs_;
  ContextSpec context_spec_;
  std::vector<PointSpec> point_specs_;
  std::vector<CurveSpec> curve_specs_;
  std::vector<ConvexBody> bodies_;
  std::optional<TimelikeContext> context_;
};

/// Parses and validates a scene. Syntax errors raise a parse error with the
/// line and column; semantic problems raise a validation error naming the
/// offending body or field.
Scene parse_scene(std::string_view text);
Scene load_scene(const std::string& path);
/// JSON text that parses back to bit-identical specs.
std::string serialize_scene(const Scene& scene);

/// Coordinates as written in a file or on the command line, moved into the
/// chart: hyperbolic Klein coordinates are lifted, everything is validated.
Vector chart_point(const Chart& chart, const Vector& coords);
/// "x,y,..." into a vector (parse error on malformed input).
Vector parse_coordinates(std::string_view text);

CurveSpec parse_curve(std::string_view text);
CurveSpec load_curve(const std::string& path);
TimelikeCurve build_curve(const Chart& chart, const CurveSpec& spec);

std::string read_file(const std::string& path);

}  // namespace timelike
