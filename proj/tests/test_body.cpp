#include "doctest.h"
#include "support.hpp"

#include "timelike/random.hpp"

using namespace timelike;
using test::vec;

TEST_SUITE("convex-body") {

TEST_CASE("containment of the unit disk") {
  const ConvexBody disk = test::unit_disk();
  CHECK(contains(disk, vec({0, 0})) == Containment::interior);
  CHECK(contains(disk, vec({1, 0})) == Containment::boundary);
  CHECK(contains(disk, vec({2, 0})) == Containment::exterior);
}

TEST_CASE("ray first hit examples") {
  const Chart e = Chart::euclidean(2);
  const ConvexBody disk = test::unit_disk();
  auto hit = ray_first_hit(disk, GeodesicRay(e, vec({-2, 0}), vec({1, 0})));
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(1.0));
  CHECK((hit->point - vec({-1, 0})).norm() < 1e-12);
  CHECK(hit->transversal);

  const ConvexBody square = test::cube(2);
  hit = ray_first_hit(square, GeodesicRay(e, vec({-2, 0}), vec({1, 0})));
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(1.0));
  CHECK(hit->support->approx_equal(Hyperplane(e, vec({-1, 0}), 1.0)));

  hit = ray_first_hit(disk, GeodesicRay(e, vec({-2, 1}), vec({1, 0})));
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(2.0));
  CHECK((hit->point - vec({0, 1})).norm() < 1e-9);
  CHECK_FALSE(hit->transversal);

  CHECK_FALSE(ray_first_hit(disk, GeodesicRay(e, vec({-2, 0}), vec({-1, 0}))));
  try {
    ray_first_hit(disk, GeodesicRay(e, vec({0.5, 0}), vec({1, 0})));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::precondition);
  }
}

TEST_CASE("separating hyperplanes") {
  const Chart e = Chart::euclidean(2);
  const ConvexBody square = test::cube(2);
  auto fam = separating_hyperplanes(square, vec({-2, 0}));
  REQUIRE(fam.is_finite());
  REQUIRE(fam.finite().size() == 1);
  CHECK(fam.finite()[0].approx_equal(Hyperplane(e, vec({-1, 0}), 1.0)));
  fam = separating_hyperplanes(square, vec({-2, -2}));
  CHECK(fam.finite().size() == 2);

  // Tangent family of the disk seen from (-2,0): visible contact angles have
  // cos(theta) < -1/2.
  const ConvexBody disk = test::unit_disk();
  const auto tangents = separating_hyperplanes(disk, vec({-2, 0}));
  REQUIRE_FALSE(tangents.is_finite());
  for (int k = 0; k < 360; ++k) {
    const double theta = 2 * M_PI * (k + 0.5) / 360;
    const bool visible = std::cos(theta) < -0.5;
    CHECK(tangents.tangents().contains(vec({std::cos(theta), std::sin(theta)})) == visible);
  }
  try {
    separating_hyperplanes(disk, vec({0, 0}));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::no_separator);
  }
}

TEST_CASE("ratio infimum examples") {
  const ConvexBody half = ConvexBody::half_space(vec({-1, 0}), -1.0);  // {x1 > 1}
  CHECK(contains(half, vec({2, 0})) == Containment::interior);
  auto r = ratio_infimum(half, vec({0, 0}), vec({0.5, 0}));
  CHECK(test::near(r.value, std::log(2.0), 1e-15));
  REQUIRE(r.argmin);
  CHECK(r.argmin->approx_equal(Hyperplane(Chart::euclidean(2), vec({-1, 0}), -1.0)));

  r = ratio_infimum(test::unit_disk(), vec({-2, 0}), vec({-1.5, 0}));
  CHECK(test::near(r.value, std::log(2.0), 1e-12));
  CHECK(ratio_infimum(test::unit_disk(), vec({-2, 0}), vec({-2, 0})).value == 0.0);
}

TEST_CASE("hit points lie on the boundary and P(q) is nested in P(p)") {
  Rng rng(3);
  const Chart e = Chart::euclidean(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<Hyperplane> faces;
    for (int k = 0; k < 6; ++k) faces.emplace_back(e, rng.unit_vector(3), rng.uniform(0.5, 1.5));
    faces.emplace_back(e, vec({0, 0, -1}), 1.0);
    const ConvexBody body = ConvexBody::polytope(e, faces);
    const Vector p = 4.0 * rng.unit_vector(3);
    if (contains(body, p) != Containment::exterior) continue;
    const Vector target = body.interior_point() + 0.3 * rng.normal_vector(3);
    if (contains(body, target) != Containment::interior) continue;
    const auto hit = ray_first_hit(body, GeodesicRay(e, p, target - p));
    REQUIRE(hit);
    CHECK(contains(body, hit->point) == Containment::boundary);
    const Vector q = p + rng.uniform(0.05, 0.95) * (hit->point - p);
    const auto fp = separating_hyperplanes(body, p).finite();
    const auto fq = separating_hyperplanes(body, q);
    for (const auto& face : fq.finite()) {
      const bool in_p = std::any_of(fp.begin(), fp.end(),
                                    [&](const Hyperplane& g) { return g.approx_equal(face); });
      CHECK(in_p);
    }
    // Similarity of triangles: the infimum is attained at the hit.
    const double oracle = std::log((hit->point - p).norm() / (hit->point - q).norm());
    CHECK(test::rel_near(ratio_infimum(body, p, q).value, oracle, 1e-9));
  }
}

TEST_CASE("spherical and hyperbolic balls") {
  const Chart s = Chart::spherical(2);
  const ConvexBody cap = ConvexBody::ball(s, vec({1, 0, 0}), M_PI / 4);
  const GeodesicRay ray(s, vec({0, 1, 0}), vec({1, 0, 0}));
  const auto hit = ray_first_hit(cap, ray);
  REQUIRE(hit);
  CHECK(test::near(hit->t, M_PI / 4, 1e-12));
  CHECK(contains(cap, hit->point) == Containment::boundary);
  CHECK_THROWS_AS(ConvexBody::ball(s, vec({1, 0, 0}), 2.0), Error);

  const Chart h = Chart::hyperbolic(2);
  const ConvexBody ball = ConvexBody::ball(h, vec({1, 0, 0}), 1.0);
  const GeodesicRay hr(h, test::hyper_point(-3.0), vec({0, 1, 0}));
  const auto hh = ray_first_hit(ball, hr);
  REQUIRE(hh);
  CHECK(test::near(hh->t, 2.0, 1e-12));
  CHECK(hh->transversal);
}

TEST_CASE("polytope witnesses and validation") {
  const Chart s = Chart::spherical(2);
  // Spherical triangle around e0.
  std::vector<Hyperplane> faces;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * M_PI * k / 3;
    faces.emplace_back(s, vec({-0.5, std::cos(a), std::sin(a)}));
  }
  const ConvexBody tri = ConvexBody::polytope(s, faces);
  CHECK(contains(tri, vec({1, 0, 0})) == Containment::interior);
  CHECK(contains(tri, vec({-1, 0, 0})) == Containment::exterior);
  CHECK(tri.antipodal().antipodal().interior_point().isApprox(tri.interior_point()));

  // A lune is not inside an open hemisphere.
  std::vector<Hyperplane> lune = {Hyperplane(s, vec({0, 1, 0})), Hyperplane(s, vec({0, 0, 1}))};
  CHECK_THROWS_AS(ConvexBody::polytope(s, lune), Error);

  // Empty euclidean polytope.
  const Chart e = Chart::euclidean(2);
  std::vector<Hyperplane> empty = {Hyperplane(e, vec({1, 0}), -1.0), Hyperplane(e, vec({-1, 0}), -1.0)};
  CHECK_THROWS_AS(ConvexBody::polytope(e, empty), Error);

  // Hyperbolic triangle.
  const Chart h = Chart::hyperbolic(2);
  std::vector<Hyperplane> hf;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * M_PI * k / 3;
    hf.emplace_back(h, vec({0.3, std::cos(a), std::sin(a)}));
  }
  const ConvexBody ht = ConvexBody::polytope(h, hf);
  CHECK(contains(ht, vec({1, 0, 0})) == Containment::interior);
  CHECK(contains(ht, test::hyper_point(3.0)) == Containment::exterior);
}

TEST_CASE("separation lower bounds") {
  const ConvexBody a = ConvexBody::ball(Chart::euclidean(2), vec({0, 0}), 1.0);
  const ConvexBody b = ConvexBody::ball(Chart::euclidean(2), vec({3, 0}), 1.0);
  CHECK(separation_lower_bound(a, b) == doctest::Approx(1.0));
  const ConvexBody left = ConvexBody::half_space(vec({1, 0}), -1.0);
  const ConvexBody right = ConvexBody::half_space(vec({-1, 0}), -1.0);
  CHECK(test::near(separation_lower_bound(left, right), 2.0, 1e-9));
  CHECK(test::near(separation_lower_bound(left, a), 0.0, 1e-9));
  CHECK(separation_lower_bound(right, b) < 0);
  CHECK(test::near(separation_lower_bound(test::cube(2).translated(vec({5, 0})), a), 3.0, 1e-9));
}

}  // TEST_SUITE
