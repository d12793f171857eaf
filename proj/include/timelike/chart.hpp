#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <string_view>

#include "timelike/error.hpp"

namespace timelike {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPointTolerance = 1e-9;
inline constexpr double kNormalTolerance = 1e-12;
inline constexpr double kTransversality = 1e-9;
inline constexpr double kBetweenness = 1e-12;
inline constexpr double kCollinearity = 1e-9;

enum class ChartKind { euclidean, spherical, hyperbolic };

std::string_view to_string(ChartKind kind);
ChartKind chart_kind_from_string(std::string_view name);

/// Ambient geometry of a scene. Euclidean points live in R^n; spherical points
/// on the unit sphere of R^{n+1}; hyperbolic points on the upper sheet of
/// <x,x>_M = -1 in Minkowski space R^{n,1} (signature -,+,...,+).
struct Chart {
  ChartKind kind = ChartKind::euclidean;
  int dimension = 2;

  static Chart euclidean(int n) { return {ChartKind::euclidean, n}; }
  static Chart spherical(int n) { return {ChartKind::spherical, n}; }
  static Chart hyperbolic(int n) { return {ChartKind::hyperbolic, n}; }

  int ambient_size() const { return kind == ChartKind::euclidean ? dimension : dimension + 1; }
  /// Largest arc-length parameter a geodesic ray is followed for.
  double ray_cutoff() const {
    return kind == ChartKind::spherical ? M_PI : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const Chart&, const Chart&) = default;
};

// ---------------------------------------------------------------------------
// Bilinear forms

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar minkowski_dot(const Eigen::MatrixBase<DerivedA>& x,
                                        const Eigen::MatrixBase<DerivedB>& y) {
  const auto n = x.size() - 1;
  return -x(0) * y(0) + x.tail(n).dot(y.tail(n));
}

/// The chart's ambient form: Euclidean dot product, or the Minkowski form for
/// the hyperboloid.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar chart_dot(ChartKind kind, const Eigen::MatrixBase<DerivedA>& x,
                                    const Eigen::MatrixBase<DerivedB>& y) {
  return kind == ChartKind::hyperbolic ? minkowski_dot(x, y) : x.dot(y);
}

/// Norm of a tangent vector (spacelike for the hyperboloid).
template <typename Derived>
typename Derived::Scalar tangent_norm(ChartKind kind, const Eigen::MatrixBase<Derived>& v) {
  using std::sqrt;
  const auto sq = chart_dot(kind, v, v);
  return sq > 0 ? sqrt(sq) : typename Derived::Scalar(0);
}

/// Distance kernel k(d): the quantity the Funk/Hilbert ratios are built from.
/// d for euclidean, sin d for spherical, sinh d for hyperbolic.
template <typename Scalar>
Scalar distance_kernel(ChartKind kind, Scalar d) {
  using std::sin;
  using std::sinh;
  switch (kind) {
    case ChartKind::spherical: return sin(d);
    case ChartKind::hyperbolic: return sinh(d);
    default: return d;
  }
}

/// k(d)/k'(d): d, tan d, tanh d. Finsler functionals divide by this.
template <typename Scalar>
Scalar tangent_kernel(ChartKind kind, Scalar d) {
  using std::tan;
  using std::tanh;
  switch (kind) {
    case ChartKind::spherical: return tan(d);
    case ChartKind::hyperbolic: return tanh(d);
    default: return d;
  }
}

// ---------------------------------------------------------------------------
// Points

/// Validates a point against the chart invariants and returns it renormalized
/// (spherical points to unit length, hyperbolic points back onto the sheet).
Vector validate_point(const Chart& chart, const Vector& x);
bool is_valid_point(const Chart& chart, const Vector& x);

/// Projects a vector onto the tangent space at a chart point.
Vector tangent_projection(const Chart& chart, const Vector& at, const Vector& v);

/// Columns form a basis of the tangent space at `at`, orthonormal in the
/// chart's form.
Matrix tangent_basis(const Chart& chart, const Vector& at);

/// Klein-ball coordinates y (|y| < 1) lifted onto the hyperboloid.
Vector lift_klein(const Vector& y);
Vector to_klein(const Vector& x);

/// Point at geodesic distance r from `center` along unit tangent direction.
Vector exponential_map(const Chart& chart, const Vector& center, const Vector& unit_tangent,
                       double r);

double chart_distance(const Chart& chart, const Vector& x, const Vector& y);

// ---------------------------------------------------------------------------
// Hyperplanes

/// Totally geodesic hypersurface. The normal is oriented so that
/// signed_value(x) > 0 on the side away from the body it supports (the open
/// half-space H_pi), and < 0 on the body side H+_pi.
///
/// euclidean:  {<n,x> = c},   signed_value = <n,x> - c   = +-d
/// spherical:  {<u,x> = 0},   signed_value = <u,x>       = +-sin d
/// hyperbolic: {<w,x>_M = 0}, signed_value = <w,x>_M     = +-sinh d
class Hyperplane {
 public:
  Hyperplane() = default;
  Hyperplane(const Chart& chart, const Vector& normal, double offset = 0.0);

  const Chart& chart() const { return chart_; }
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  double signed_value(const Vector& x) const {
    return chart_dot(chart_.kind, normal_, x) - offset_;
  }
  /// Linear part of signed_value applied to a tangent vector.
  double rate(const Vector& v) const { return chart_dot(chart_.kind, normal_, v); }

  bool exterior_side(const Vector& x, double margin = 0.0) const {
    return signed_value(x) > margin;
  }
  Hyperplane flipped() const;
  bool approx_equal(const Hyperplane& other, double tol = kNormalTolerance) const;

 private:
  Chart chart_;
  Vector normal_;
  double offset_ = 0.0;
};

double hyperplane_distance(const Chart& chart, const Vector& x, const Hyperplane& plane);
/// k(d(x, plane)) evaluated as an exact pairing, no inverse trig.
double hyperplane_kernel(const Chart& chart, const Vector& x, const Hyperplane& plane);

// ---------------------------------------------------------------------------
// Geodesic rays

/// Arc-length parametrized geodesic x(t) = p + t u, p cos t + u sin t, or
/// p cosh t + u sinh t.
class GeodesicRay {
 public:
  GeodesicRay() = default;
  /// `direction` need not be tangent or unit; it is projected and normalized.
  GeodesicRay(const Chart& chart, const Vector& base, const Vector& direction);

  const Chart& chart() const { return chart_; }
  const Vector& base() const { return base_; }
  const Vector& tangent() const { return tangent_; }

  Vector at(double t) const;
  Vector velocity(double t) const;
  /// (a, b) with signed_value(at(t)) = a c(t) + b s(t), where (c, s) is
  /// (1, t), (cos t, sin t) or (cosh t, sinh t).
  std::pair<double, double> pairing(const Hyperplane& plane) const;
  /// Parameter in (0, cutoff) where the plane's signed value changes sign.
  std::optional<double> crossing(const Hyperplane& plane) const;

 private:
  Chart chart_;
  Vector base_;
  Vector tangent_;
};

GeodesicRay geodesic_through(const Chart& chart, const Vector& p, const Vector& q);

// ---------------------------------------------------------------------------
// Cross ratios

/// Projective cross ratio of four collinear points,
/// (|p a2| |q a1|) / (|q a2| |p a1|), computed from signed coordinates along the
/// common line so it stays valid for configurations through infinity.
double affine_cross_ratio(const Vector& a1, const Vector& p, const Vector& q, const Vector& a2);

/// [p1,p2,p3,p4] = sin d(p2,p4) sin d(p3,p1) / (sin d(p3,p4) sin d(p2,p1)).
double spherical_cross_ratio(const Vector& p1, const Vector& p2, const Vector& p3,
                             const Vector& p4);

/// Same ratio with the chart kernel applied to arc lengths along a chord;
/// used by the Hilbert formulas once the chord parameters are known.
double kernel_cross_ratio(ChartKind kind, double d_p_a2, double d_q_a1, double d_q_a2,
                          double d_p_a1);

}  // namespace timelike
