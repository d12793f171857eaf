#include "doctest.h"
#include "support.hpp"

#include "timelike/random.hpp"

using namespace timelike;
using test::vec;

namespace {

Vector on_circle(double angle) { return vec({std::cos(angle), std::sin(angle), 0.0}); }

}  // namespace

TEST_SUITE("geometry-kernel") {

TEST_CASE("chart distances") {
  CHECK(chart_distance(Chart::euclidean(2), vec({0, 0}), vec({3, 4})) == doctest::Approx(5.0));
  CHECK(chart_distance(Chart::spherical(2), vec({1, 0, 0}), vec({0, 1, 0})) ==
        doctest::Approx(M_PI / 2).epsilon(1e-15));
  const Vector y = vec({std::cosh(1.0), std::sinh(1.0), 0});
  const double oracle = std::acosh(-(-1.0 * y(0)));
  CHECK(test::near(chart_distance(Chart::hyperbolic(2), vec({1, 0, 0}), y), oracle, 1e-12));
  CHECK(test::near(chart_distance(Chart::spherical(2), vec({1, 0, 0}), vec({-1, 0, 0})), M_PI,
                   1e-15));
}

TEST_CASE("invalid coordinates are rejected") {
  CHECK_THROWS_AS(validate_point(Chart::spherical(2), vec({1, 1, 0})), Error);
  CHECK_THROWS_AS(validate_point(Chart::hyperbolic(2), vec({-1, 0, 0})), Error);
  CHECK_THROWS_AS(validate_point(Chart::euclidean(2), vec({1, 2, 3})), Error);
  try {
    chart_distance(Chart::hyperbolic(1), vec({2, 0}), vec({1, 0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::coordinate_domain);
  }
}

TEST_CASE("geodesic_through") {
  const GeodesicRay e = geodesic_through(Chart::euclidean(2), vec({0, 0}), vec({2, 0}));
  CHECK(e.tangent().isApprox(vec({1, 0})));
  CHECK((e.at(2.0) - vec({2, 0})).norm() < 1e-15);

  const Vector mid = vec({1, 1, 0}) / std::sqrt(2.0);
  const GeodesicRay s = geodesic_through(Chart::spherical(2), vec({1, 0, 0}), mid);
  CHECK((s.at(M_PI / 2) - vec({0, 1, 0})).norm() < 1e-15);

  const Vector h2 = test::hyper_point(2.0);
  const GeodesicRay h = geodesic_through(Chart::hyperbolic(2), vec({1, 0, 0}), h2);
  CHECK((h.at(2.0) - h2).norm() < 1e-12);

  try {
    geodesic_through(Chart::euclidean(2), vec({1, 1}), vec({1, 1}));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::degenerate_ray);
  }
  try {
    geodesic_through(Chart::spherical(2), vec({0, 0, 1}), vec({0, 0, -1}));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ambiguous_geodesic);
  }
}

TEST_CASE("hyperplane distances") {
  const Chart e = Chart::euclidean(2);
  CHECK(hyperplane_distance(e, vec({0, 0}), Hyperplane(e, vec({1, 0}), 1.0)) == doctest::Approx(1));
  const Chart h = Chart::hyperbolic(2);
  const Vector x = test::hyper_point(2.0);
  CHECK(test::near(hyperplane_distance(h, x, Hyperplane(h, vec({0, 1, 0}))), 2.0, 1e-12));
  CHECK(test::near(hyperplane_kernel(h, x, Hyperplane(h, vec({0, 1, 0}))), std::sinh(2.0), 1e-12));
  const Chart s = Chart::spherical(2);
  CHECK(test::near(hyperplane_distance(s, vec({1, 0, 0}), Hyperplane(s, vec({1, 0, 0}))), M_PI / 2,
                   1e-7));
  CHECK_THROWS_AS(hyperplane_distance(s, vec({1, 0}), Hyperplane(e, vec({1, 0}), 0.0)), Error);
}

TEST_CASE("affine cross ratio examples") {
  const Vector dir = vec({0.6, 0.8});
  const Vector base = vec({2, -1});
  auto at = [&](double s) -> Vector { return base + s * dir; };
  CHECK(test::rel_near(affine_cross_ratio(at(-1), at(0), at(0.5), at(1)), 3.0, 1e-14));
  CHECK(affine_cross_ratio(at(-1), at(0.2), at(0.2), at(1)) == doctest::Approx(1.0));
  double previous = 1.0;
  for (double x = 0.1; x < 0.95; x += 0.1) {
    const double value = affine_cross_ratio(at(-1), at(0), at(x), at(1));
    CHECK(test::rel_near(value, (1 + x) / (1 - x), 1e-12));
    CHECK(value > previous);
    previous = value;
  }
  try {
    affine_cross_ratio(vec({-1, 0}), vec({0, 0.1}), vec({0.5, 0}), vec({1, 0}));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::collinearity);
  }
}

TEST_CASE("spherical cross ratio examples") {
  CHECK(test::rel_near(spherical_cross_ratio(on_circle(0), on_circle(0.4), on_circle(1.1),
                                             on_circle(M_PI)),
                       1.0, 1e-12));
  const double oracle = std::pow(std::sin(M_PI / 3), 2) / std::pow(std::sin(M_PI / 6), 2);
  CHECK(test::rel_near(spherical_cross_ratio(on_circle(0), on_circle(M_PI / 6), on_circle(M_PI / 3),
                                             on_circle(M_PI / 2)),
                       oracle, 1e-12));
  CHECK(test::rel_near(oracle, 3.0, 1e-12));
  CHECK(spherical_cross_ratio(on_circle(0), on_circle(0.3), on_circle(0.3), on_circle(1)) ==
        doctest::Approx(1.0));
  try {
    spherical_cross_ratio(on_circle(0), on_circle(0.3), vec({0, 0.6, 0.8}), on_circle(1));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::collinearity);
  }
}

TEST_CASE("rays are arc-length parametrized") {
  Rng rng(11);
  for (const Chart chart : {Chart::euclidean(3), Chart::spherical(3), Chart::hyperbolic(3)}) {
    for (int i = 0; i < 50; ++i) {
      Vector p;
      if (chart.kind == ChartKind::euclidean) p = rng.normal_vector(3);
      if (chart.kind == ChartKind::spherical) p = rng.unit_vector(4);
      if (chart.kind == ChartKind::hyperbolic) p = lift_klein(0.7 * rng.unit_vector(3) * rng.uniform());
      const GeodesicRay ray(chart, p, rng.normal_vector(chart.ambient_size()));
      const double cutoff = std::min(chart.ray_cutoff(), 4.0);
      for (double t : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        if (t >= cutoff) continue;
        CHECK(test::near(chart_distance(chart, p, ray.at(t)), t, 1e-9));
      }
    }
  }
}

TEST_CASE("cross ratio invariances") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vector base = rng.normal_vector(2), dir = rng.unit_vector(2);
    double s[5] = {-1.0, rng.uniform(-0.9, 0.0), 0.0, rng.uniform(0.05, 0.5), 1.0};
    s[2] = rng.uniform(s[1] + 0.01, s[3] - 0.01);
    auto at = [&](double x) -> Vector { return base + x * dir; };
    const double cr = affine_cross_ratio(at(s[0]), at(s[1]), at(s[2]), at(s[4]));
    const double scale = rng.uniform(0.1, 10.0);
    const Vector shift = rng.normal_vector(2);
    auto moved = [&](double x) -> Vector { return scale * at(x) + shift; };
    const double cr2 = affine_cross_ratio(moved(s[0]), moved(s[1]), moved(s[2]), moved(s[4]));
    CHECK(std::abs(cr2 - cr) <= 1e-12 * cr * 10);
    // Multiplicativity along the chord.
    const double left = affine_cross_ratio(at(s[0]), at(s[1]), at(s[2]), at(s[4]));
    const double right = affine_cross_ratio(at(s[0]), at(s[2]), at(s[3]), at(s[4]));
    const double whole = affine_cross_ratio(at(s[0]), at(s[1]), at(s[3]), at(s[4]));
    CHECK(test::rel_near(left * right, whole, 1e-9));
  }
  for (int i = 0; i < 200; ++i) {
    double a[4] = {0, rng.uniform(0.1, 0.9), 0, 2.5};
    a[2] = rng.uniform(a[1] + 0.05, 2.4);
    Vector pts[4];
    for (int k = 0; k < 4; ++k) pts[k] = on_circle(a[k]);
    const double cr = spherical_cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    const Matrix q = rng.orthogonal(3);
    const double cr2 = spherical_cross_ratio(q * pts[0], q * pts[1], q * pts[2], q * pts[3]);
    CHECK(std::abs(cr2 - cr) <= 1e-9 * cr);
  }
}

}  // TEST_SUITE
