#pragma once

#include <cmath>
#include <initializer_list>

#include "timelike/body.hpp"

namespace test {

using timelike::Chart;
using timelike::ConvexBody;
using timelike::Hyperplane;
using timelike::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// {|x_i| <= h} in R^n.
inline ConvexBody cube(int n, double h = 1.0) {
  const Chart chart = Chart::euclidean(n);
  std::vector<Hyperplane> faces;
  for (int i = 0; i < n; ++i) {
    faces.emplace_back(chart, Vector::Unit(n, i), h);
    faces.emplace_back(chart, -Vector::Unit(n, i), h);
  }
  return ConvexBody::polytope(chart, faces);
}

inline ConvexBody unit_disk() { return ConvexBody::ball(Chart::euclidean(2), vec({0, 0}), 1.0); }

/// Point of H^n at arc length t along x1 from the base point.
inline Vector hyper_point(double t, int n = 2) {
  Vector x = Vector::Zero(n + 1);
  x(0) = std::cosh(t);
  x(1) = std::sinh(t);
  return x;
}

}  // namespace test
