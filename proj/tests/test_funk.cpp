#include <cmath>
#include <functional>
#include <limits>

#include "doctest.h"
#include "support.hpp"

#include "timelike/funk.hpp"
#include "timelike/generators.hpp"

using namespace timelike;
using test::vec;

namespace {

ConvexBody hyperbolic_wall() {
  const Chart h = Chart::hyperbolic(2);
  return ConvexBody::polytope(h, {Hyperplane(h, vec({0, 1, 0}))});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::domain;
}

}  // namespace

TEST_SUITE("funk") {

TEST_CASE("boundary-hit distance examples") {
  const auto disk = TimelikeContext::funk(test::unit_disk());
  CHECK(test::near(funk_distance(disk, vec({-2, 0}), vec({-1.5, 0})).distance, std::log(2.0), 1e-12));
  CHECK(funk_distance(disk, vec({-2, 0}), vec({-2, 0})).distance == 0.0);

  const auto half = TimelikeContext::funk(ConvexBody::half_space(vec({-1, 0}), -1.0));
  CHECK(test::near(funk_distance(half, vec({0, 0}), vec({0.5, 0})).distance, std::log(2.0), 1e-12));

  const auto wall = TimelikeContext::funk(hyperbolic_wall());
  const double f = funk_distance(wall, test::hyper_point(2.0), test::hyper_point(1.0)).distance;
  CHECK(test::near(f, std::log(std::sinh(2.0) / std::sinh(1.0)), 1e-12));
  CHECK(test::near(f, 1.12693, 1e-5));

  CHECK(code_of([&] { funk_distance(disk, vec({-2, 0}), vec({2, 0})); }) ==
        ErrorCode::not_in_future);
  const auto cap = TimelikeContext::funk(ConvexBody::ball(Chart::spherical(2), vec({1, 0, 0}), 0.5));
  CHECK(code_of([&] { funk_distance(cap, vec({0, 1, 0}), vec({0, 1, 0})); }) ==
        ErrorCode::unsupported);
}

TEST_CASE("variational distance examples") {
  const auto square = TimelikeContext::funk(test::cube(2));
  const Vector p = vec({-3, -0.2}), q = vec({-2, -0.1});
  CHECK(test::near(funk_distance_variational(square, p, q).distance,
                   funk_distance(square, p, q).distance, 1e-12));

  const auto half = TimelikeContext::funk(ConvexBody::half_space(vec({-1, 0}), -1.0));
  const FunkValue v = funk_distance_variational(half, vec({0, 0}), vec({0.5, 0}));
  CHECK(test::near(v.distance, std::log(2.0), 1e-12));
  REQUIRE(v.argmin);
  CHECK(v.argmin->approx_equal(Hyperplane(Chart::euclidean(2), vec({-1, 0}), -1.0)));
  CHECK(funk_distance_variational(square, p, p).distance == 0.0);
}

TEST_CASE("functional examples") {
  const auto disk = TimelikeContext::funk(test::unit_disk());
  FinslerValue f = funk_functional(disk, vec({-2, 0}), vec({1, 0}));
  CHECK(test::near(f.value, 1.0, 1e-12));
  CHECK(test::near(f.t_star, 1.0, 1e-12));
  CHECK(test::near(funk_functional(disk, vec({-2, 0}), vec({2, 0})).value, 2.0, 1e-12));
  CHECK(funk_functional(disk, vec({-2, 0}), vec({0, 0})).value == 0.0);
  CHECK(code_of([&] { funk_functional(disk, vec({-2, 0}), vec({-1, 0})); }) ==
        ErrorCode::not_timelike_direction);

  const auto half = TimelikeContext::funk(ConvexBody::half_space(vec({-1, 0}), -1.0));
  CHECK(test::near(funk_functional(half, vec({0, 0}), vec({1, 0})).value, 1.0, 1e-12));

  const auto square = TimelikeContext::funk(test::cube(2));
  CHECK(test::near(funk_functional_variational(square, vec({-2, 0}), vec({1, 0})).value, 1.0,
                   1e-12));
  // From the corner region both visible faces are at distance 1 and see
  // <v, eta> = 1/sqrt(2).
  const Vector v = vec({1, 1}) / std::sqrt(2.0);
  const double pv = funk_functional_variational(square, vec({-2, -2}), v).value;
  CHECK(test::near(pv, 1.0 / std::sqrt(2.0), 1e-12));
  CHECK(test::rel_near(pv, funk_functional(square, vec({-2, -2}), v).value, 1e-9));
  CHECK(test::near(funk_functional_variational(square, vec({-2, -2}), 3.0 * v).value, 3.0 * pv,
                   1e-12));
  CHECK(code_of([&] { funk_functional_variational(disk, vec({-2, 0}), vec({1, 0})); }) ==
        ErrorCode::unsupported);
}

TEST_CASE("future sphere examples") {
  const auto disk = TimelikeContext::funk(test::unit_disk());
  const SpherePoint s = future_sphere_point(disk, vec({-2, 0}), std::log(2.0), vec({1, 0}));
  CHECK((s.point - vec({-1.5, 0})).norm() < 1e-12);
  CHECK(s.residual <= 1e-12);
  const SpherePoint tiny = future_sphere_point(disk, vec({-2, 0}), 1e-12, vec({1, 0}));
  CHECK((tiny.point - vec({-2, 0})).norm() < 1e-11);
  CHECK(code_of([&] { future_sphere_sample(disk, vec({-2, 0}), 0.0, 4); }) == ErrorCode::domain);
  CHECK(code_of([&] { future_sphere_sample(disk, vec({-2, 0}), -1.0, 4); }) == ErrorCode::domain);
}

TEST_CASE("monotonicity examples") {
  const ConvexBody inner = test::unit_disk();
  const ConvexBody outer = ConvexBody::ball(Chart::euclidean(2), vec({0, 0}), 1.2);
  const auto rep = funk_monotonicity_check(inner, outer, vec({-3, 0}), vec({-2, 0}));
  CHECK(test::near(rep.inner, std::log(2.0), 1e-12));
  CHECK(test::near(rep.outer, std::log(1.8 / 0.8), 1e-12));
  CHECK(rep.holds);
  const auto same = funk_monotonicity_check(inner, inner, vec({-3, 0}), vec({-2, 0}));
  CHECK(same.inner == same.outer);

  const ConvexBody h1 = ConvexBody::half_space(vec({-1, 0}), -1.0);   // {x1 > 1}
  const ConvexBody h05 = ConvexBody::half_space(vec({-1, 0}), -0.5);  // {x1 > 0.5}
  CHECK(funk_monotonicity_check(h1, h05, vec({0, 0}), vec({0.2, 0})).holds);
  CHECK(code_of([&] { funk_monotonicity_check(h05, h1, vec({0, 0}), vec({0.2, 0})); }) ==
        ErrorCode::precondition);
}

TEST_CASE("positivity and homogeneity") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Chart chart = i % 2 ? Chart::hyperbolic(2 + i % 3 / 2) : Chart::euclidean(2 + i % 3 / 2);
    const ConvexBody body = random_body(chart, rng);
    const OrderedPair pq = random_funk_pair(body, rng);
    CHECK(funk_distance(body, pq.p, pq.q).distance > 0.0);
    CHECK(funk_distance(body, pq.q, pq.q).distance == 0.0);
    const Vector v = chart.kind == ChartKind::euclidean
                         ? Vector(pq.q - pq.p)
                         : geodesic_through(chart, pq.p, pq.q).tangent();
    const double base = funk_functional(body, pq.p, v).value;
    CHECK(base > 0.0);
    for (double lambda : {2.0, 10.0, 1.0 / 3.0})
      CHECK(test::rel_near(funk_functional(body, pq.p, lambda * v).value, lambda * base, 1e-12));
  }
}

TEST_CASE("dual forms agree on random instances") {
  Rng rng(12);
  double worst = 0.0, worst_p = 0.0;
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + i % 2;
    const Chart chart = (i / 2) % 2 ? Chart::hyperbolic(n) : Chart::euclidean(n);
    const ConvexBody body = random_body(chart, rng);
    const OrderedPair pq = random_funk_pair(body, rng);
    const double a = funk_distance(body, pq.p, pq.q).distance;
    const double b = funk_distance_variational(body, pq.p, pq.q).distance;
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    if (body.is_polytope()) {
      const Vector v = chart.kind == ChartKind::euclidean
                           ? Vector(pq.q - pq.p)
                           : geodesic_through(chart, pq.p, pq.q).tangent();
      const double p1 = funk_functional(body, pq.p, v).value;
      const double p2 = funk_functional_variational(body, pq.p, v).value;
      worst_p = std::max(worst_p, std::abs(p1 - p2) / std::abs(p1));
    }
  }
  CHECK(worst <= 1e-9);
  CHECK(worst_p <= 1e-9);
}

TEST_CASE("ball variational form matches a brute-force scan of tangent planes") {
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    const Vector c = vec({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const double radius = rng.uniform(0.3, 2.0);
    const ConvexBody body = ConvexBody::ball(Chart::euclidean(2), c, radius);
    const OrderedPair pq = random_funk_pair(body, rng);
    const double f = funk_distance(body, pq.p, pq.q).distance;
    // Tangent plane at c + radius u: <u, x - c> <= radius.
    double best = std::numeric_limits<double>::infinity();
    const int steps = 200000;
    for (int k = 0; k < steps; ++k) {
      const double a = 2 * M_PI * k / steps;
      const Vector u = vec({std::cos(a), std::sin(a)});
      const double sq = u.dot(pq.q - c) - radius;
      if (!(sq > 0)) continue;
      const double sp = u.dot(pq.p - c) - radius;
      best = std::min(best, sp > 0 ? std::log(sp / sq) : -std::numeric_limits<double>::infinity());
    }
    CHECK(best >= f - 1e-12);
    CHECK(best <= f + 1e-6);
    CHECK(test::near(funk_distance_variational(body, pq.p, pq.q).distance, best, 1e-6));
  }
}

TEST_CASE("time inequality and collinear equality") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const Chart chart = i % 2 ? Chart::hyperbolic(2 + i % 4 / 2) : Chart::euclidean(2 + i % 4 / 2);
    const ConvexBody body = random_body(chart, rng);
    const bool collinear = i % 3 == 0;
    const OrderedChain c = random_funk_chain(body, rng, collinear);
    const double pq = funk_distance(body, c.p, c.q).distance;
    const double qr = funk_distance(body, c.q, c.r).distance;
    const double pr = funk_distance(body, c.p, c.r).distance;
    CHECK(pq + qr <= pr + 1e-9);
    if (collinear) CHECK(test::near(pq + qr, pr, 1e-9));
  }
}

TEST_CASE("broken segments near a flat face are geodesics") {
  Rng rng(14);
  const auto square = TimelikeContext::funk(test::cube(2));
  int tested = 0;
  for (int i = 0; i < 500; ++i) {
    // Face {x1 = -1}; distances to it strictly decrease along p, q, r.
    double d[3] = {rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3)};
    std::sort(d, d + 3, std::greater<>());
    if (d[0] - d[1] < 1e-3 || d[1] - d[2] < 1e-3) continue;
    const Vector p = vec({-1 - d[0], rng.uniform(-0.1, 0.1)});
    const Vector q = vec({-1 - d[1], rng.uniform(-0.1, 0.1)});
    const Vector r = vec({-1 - d[2], rng.uniform(-0.1, 0.1)});
    if (!funk_precedes(square, p, q) || !funk_precedes(square, q, r) ||
        !funk_precedes(square, p, r))
      continue;
    const double sum = funk_distance(square, p, q).distance + funk_distance(square, q, r).distance;
    CHECK(test::near(funk_distance(square, p, r).distance, sum, 1e-9));
    ++tested;
  }
  CHECK(tested > 100);
}

TEST_CASE("distance to a fixed future point is concave along segments") {
  Rng rng(15);
  int tested = 0;
  for (int i = 0; i < 300 && tested < 100; ++i) {
    const ConvexBody body = random_body(Chart::euclidean(2 + i % 2), rng);
    const OrderedPair px = random_funk_pair(body, rng);
    const double scale = 0.2 * funk_distance(body, px.p, px.q).distance;
    const Vector a = px.p + scale * rng.normal_vector(px.p.size());
    const Vector b = px.p + scale * rng.normal_vector(px.p.size());
    const int steps = 40;
    std::vector<double> values;
    bool ok = true;
    for (int k = 0; k <= steps && ok; ++k) {
      const Vector s = a + (b - a) * (double(k) / steps);
      if (contains(body, s) != Containment::exterior || !body_order(body, s, px.q)) {
        ok = false;
        break;
      }
      values.push_back(funk_distance(body, s, px.q).distance);
    }
    if (!ok) continue;
    double worst = -1e300;
    for (int k = 1; k < steps; ++k)
      worst = std::max(worst, values[k - 1] - 2 * values[k] + values[k + 1]);
    CHECK(worst <= 1e-8);
    ++tested;
  }
  CHECK(tested >= 100);
}

TEST_CASE("future spheres re-evaluate to the radius") {
  Rng rng(16);
  for (int i = 0; i < 50; ++i) {
    const ConvexBody body = random_body(Chart::euclidean(2 + i % 2), rng);
    const auto ctx = TimelikeContext::funk(body);
    const Vector p = random_exterior_point(body, rng);
    for (double r : {0.1, std::log(2.0), 3.0}) {
      const auto pts = future_sphere_sample(ctx, p, r, 24);
      CHECK(pts.size() == 24);
      for (const auto& s : pts) {
        CHECK(s.residual <= 1e-9);
        CHECK(funk_precedes(ctx, p, s.point));
      }
    }
  }
}

TEST_CASE("monotonicity on nested random bodies") {
  Rng rng(17);
  int tested = 0;
  for (int i = 0; i < 200; ++i) {
    const ConvexBody inner = random_body(Chart::euclidean(2), rng, BodyShape::ball);
    const Ball& b = inner.as_ball();
    const ConvexBody outer = ConvexBody::ball(inner.chart(), b.center + 0.1 * b.radius * rng.unit_vector(2),
                                              b.radius * rng.uniform(1.15, 2.0));
    const Vector p = random_exterior_point(outer, rng, 0.5 + outer.as_ball().radius, 4.0);
    auto q = random_successor(inner, p, rng, 0.05, 0.5);
    if (!q || contains(outer, *q) != Containment::exterior || !body_order(outer, p, *q)) continue;
    CHECK(funk_monotonicity_check(inner, outer, p, *q).holds);
    ++tested;
  }
  CHECK(tested > 50);
}

}  // TEST_SUITE
