#include "polyhedral.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace timelike::detail {

namespace {

// Calls visit(indices) for every k-subset of {0..n-1}.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      visit(idx);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k <= n) rec(0, 0);
}

bool feasible(const Matrix& A, const Vector& b, const Vector& x) {
  const Vector r = A * x - b;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r(i) > 1e-9 * (1.0 + std::abs(b(i)))) return false;
  return true;
}

}  // namespace

std::optional<LpSolution> lp_maximize(const Matrix& A, const Vector& b, const Vector& c) {
  std::optional<LpSolution> best;
  for (const Vector& x : polyhedron_vertices(A, b)) {
    const double value = c.dot(x);
    if (!best || value > best->value) best = LpSolution{x, value};
  }
  return best;
}

std::optional<ChebyshevBall> chebyshev_center(const Matrix& A, const Vector& b, double box) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  // Variables (x, r): a_i.x + |a_i| r <= b_i, |x_j| + r <= box, r <= box, -r <= box.
  Matrix M(m + 2 * n + 2, n + 1);
  Vector rhs(m + 2 * n + 2);
  M.setZero();
  for (int i = 0; i < m; ++i) {
    M.row(i).head(n) = A.row(i);
    M(i, n) = A.row(i).norm();
    rhs(i) = b(i);
  }
  for (int j = 0; j < n; ++j) {
    M(m + 2 * j, j) = 1.0;
    M(m + 2 * j, n) = 1.0;
    rhs(m + 2 * j) = box;
    M(m + 2 * j + 1, j) = -1.0;
    M(m + 2 * j + 1, n) = 1.0;
    rhs(m + 2 * j + 1) = box;
  }
  M(m + 2 * n, n) = 1.0;
  rhs(m + 2 * n) = box;
  M(m + 2 * n + 1, n) = -1.0;
  rhs(m + 2 * n + 1) = box;
  Vector objective = Vector::Zero(n + 1);
  objective(n) = 1.0;
  const auto sol = lp_maximize(M, rhs, objective);
  if (!sol) return std::nullopt;
  return ChebyshevBall{sol->x.head(n), sol->x(n)};
}

double distance_to_polyhedron(const Matrix& A, const Vector& b, const Vector& point) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (feasible(A, b, point)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  // The nearest point is the projection onto the affine hull of some set of
  // active constraints.
  for (int k = 1; k <= std::min(n, m); ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& rows) {
      Matrix As(k, n);
      Vector bs(k);
      for (int i = 0; i < k; ++i) {
        As.row(i) = A.row(rows[static_cast<std::size_t>(i)]);
        bs(i) = b(rows[static_cast<std::size_t>(i)]);
      }
      // x = point - As^T lambda with As x = bs.
      const Matrix G = As * As.transpose();
      Eigen::FullPivLU<Matrix> lu(G);
      if (lu.rank() < k) return;
      const Vector lambda = lu.solve(As * point - bs);
      const Vector x = point - As.transpose() * lambda;
      if (!x.allFinite() || !feasible(A, b, x)) return;
      best = std::min(best, (x - point).norm());
    });
  }
  return best;
}

std::vector<Vector> polyhedron_vertices(const Matrix& A, const Vector& b) {
  const int n = static_cast<int>(A.cols());
  std::vector<Vector> out;
  Matrix As(n, n);
  Vector bs(n);
  for_each_subset(static_cast<int>(A.rows()), n, [&](const std::vector<int>& rows) {
    for (int i = 0; i < n; ++i) {
      As.row(i) = A.row(rows[static_cast<std::size_t>(i)]);
      bs(i) = b(rows[static_cast<std::size_t>(i)]);
    }
    // Skip (near) singular bases; rows are O(1) so the scale test is absolute.
    const Eigen::PartialPivLU<Matrix> lu(As);
    const Matrix& f = lu.matrixLU();
    for (int i = 0; i < n; ++i)
      if (std::abs(f(i, i)) < 1e-12 * (1.0 + As.cwiseAbs().maxCoeff())) return;
    const Vector x = lu.solve(bs);
    if (x.allFinite() && feasible(A, b, x)) out.push_back(x);
  });
  return out;
}

Matrix complement_basis(const Vector& h) {
  const Eigen::Index n = h.size();
  Eigen::HouseholderQR<Matrix> qr(h);
  const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  return Q.rightCols(n - 1);
}

}  // namespace timelike::detail
