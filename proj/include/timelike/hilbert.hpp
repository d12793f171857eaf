#pragma once

#include "timelike/funk.hpp"

namespace timelike {

struct HilbertValue {
  double distance = 0.0;
  double f2 = 0.0;  // F2(p, q), toward the future body
  double f1 = 0.0;  // F1(q, p), toward the past body
  Vector a1;        // chord endpoint on K1 (past)
  Vector a2;        // chord endpoint on K2 (future)
};

/// H(p,q) = F2(p,q) + F1(q,p). Accepts every Hilbert-type context.
HilbertValue hilbert_distance(const TimelikeContext& ctx, const Vector& p, const Vector& q);

/// Log cross ratio of (a1, p, q, a2) along the chord, with the chart kernel:
/// planar cross ratio, sine cross ratio, or sinh of chord distances.
HilbertValue hilbert_distance_cross_ratio(const TimelikeContext& ctx, const Vector& p,
                                          const Vector& q);

/// P_H(p,v) = P2(p,v) + P1(p,-v).
FinslerValue hilbert_functional(const TimelikeContext& ctx, const Vector& p, const Vector& v);

/// Hilbert distance of the interval (-1,1) between a and b:
/// log[(a-1)/(b-1) * (b+1)/(a+1)].
double strip_closed_form(double a, double b);

struct FunkLimit {
  double hilbert = 0.0;  // H_a with past wall {x_1 < -a}
  double funk = 0.0;     // F for the future body alone
  double gap = 0.0;      // |H_a - F|
};

/// Hilbert distance against a retreating wall {x_1 < -a}, compared with the
/// Funk distance of the future body (euclidean).
FunkLimit funk_limit_check(const ConvexBody& future, double a, const Vector& p, const Vector& q);

}  // namespace timelike
