#pragma once

// Random instances for the property suites and tests. Every generator draws
// only from the given Rng, so instances are reproducible from the seed.

#include <optional>

#include "timelike/desitter.hpp"
#include "timelike/random.hpp"

namespace timelike {

enum class BodyShape { polytope, ball, any };

/// Random body in the chart, roughly of unit size around a base point:
/// the origin (euclidean), e0 (hyperbolic) or a random pole (spherical).
ConvexBody random_body(const Chart& chart, Rng& rng, BodyShape shape = BodyShape::any);

/// Random point of the chart near the body's interior witness, at a
/// distance in [lo, hi] from it.
Vector random_point_near(const ConvexBody& body, Rng& rng, double lo, double hi);

/// Random exterior point at distance in [lo, hi] from the interior witness.
Vector random_exterior_point(const ConvexBody& body, Rng& rng, double lo = 0.5, double hi = 3.0);

/// Random point strictly inside the body, close to its interior witness.
Vector random_interior_point(const ConvexBody& body, Rng& rng);

/// From p, a point q on the ray toward a random interior point, at a random
/// fraction of the way to the first hit. Nothing if the hit is tangential.
std::optional<Vector> random_successor(const ConvexBody& body, const Vector& p, Rng& rng,
                                       double lo = 0.05, double hi = 0.95);

struct OrderedPair {
  Vector p, q;
};
struct OrderedChain {
  Vector p, q, r;
};

/// p < q for a Funk body (retries internally).
OrderedPair random_funk_pair(const ConvexBody& body, Rng& rng);
/// p < q < r for a Funk body; with `collinear` all three lie on one ray.
OrderedChain random_funk_chain(const ConvexBody& body, Rng& rng, bool collinear);

/// Random Hilbert context with disjoint past/future bodies (euclidean,
/// hyperbolic or spherical according to the chart).
TimelikeContext random_hilbert_context(const Chart& chart, Rng& rng,
                                       BodyShape shape = BodyShape::any);

/// p < q in a Hilbert context (retries internally; nothing after many
/// failures).
std::optional<OrderedPair> random_hilbert_pair(const TimelikeContext& ctx, Rng& rng);
std::optional<OrderedChain> random_hilbert_chain(const TimelikeContext& ctx, Rng& rng,
                                                 bool collinear);

/// Timelike pair on S^{n,1} (n = 1 or 2) along the x1 meridian, optionally
/// moved by a random SO(2,1) element. Both points keep |x0| >= 1e-6.
DesitterPair random_desitter_pair(Rng& rng, int n, bool transport);

}  // namespace timelike
