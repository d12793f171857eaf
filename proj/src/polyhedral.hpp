#pragma once

// Small dense polyhedral routines for low-dimensional bodies. Problems here
// have at most a handful of variables and a few dozen constraints, so
// optima are found by enumerating basic solutions.

#include <optional>
#include <vector>

#include "timelike/chart.hpp"

namespace timelike::detail {

struct LpSolution {
  Vector x;
  double value = 0.0;
};

/// max c.x subject to A x <= b. The caller must include bounds that make the
/// feasible set compact. Returns nothing when infeasible.
std::optional<LpSolution> lp_maximize(const Matrix& A, const Vector& b, const Vector& c);

/// Center and radius of the largest ball inside {A x <= b} intersected with
/// the box |x_j| <= box. Rows of A need not be normalized. The radius is
/// negative when the set is empty (it then measures the violation).
struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
};
std::optional<ChebyshevBall> chebyshev_center(const Matrix& A, const Vector& b, double box);

/// Euclidean distance from `point` to {A x <= b}; infinity if empty.
double distance_to_polyhedron(const Matrix& A, const Vector& b, const Vector& point);

/// Vertices of the bounded polyhedron {A x <= b} (basic feasible solutions).
std::vector<Vector> polyhedron_vertices(const Matrix& A, const Vector& b);

/// Orthonormal basis (as columns) of the orthogonal complement of unit h.
Matrix complement_basis(const Vector& h);

}  // namespace timelike::detail
