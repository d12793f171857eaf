#include "doctest.h"
#include "support.hpp"

#include "timelike/curve.hpp"
#include "timelike/generators.hpp"

using namespace timelike;
using test::vec;

namespace {

TimelikeContext strip() {
  return TimelikeContext::hilbert(ConvexBody::half_space(vec({1, 0}), -1.0),
                                  ConvexBody::half_space(vec({-1, 0}), -1.0));
}

TimelikeContext disk_ctx() { return TimelikeContext::funk(test::unit_disk()); }

std::pair<double, double> exp_warp(double s) {
  const double a = 1.7, scale = std::expm1(a);
  return {std::expm1(a * s) / scale, a * std::exp(a * s) / scale};
}

}  // namespace

TEST_SUITE("finsler-length") {

TEST_CASE("timelike validation examples") {
  const Chart e = Chart::euclidean(2);
  const auto disk = disk_ctx();
  CHECK(is_timelike(disk, TimelikeCurve::segment(e, vec({-2, 0}), vec({-1.5, 0}))).timelike);
  const TimelikeCheck back = is_timelike(disk, TimelikeCurve::segment(e, vec({-1.5, 0}), vec({-2, 0})));
  CHECK_FALSE(back.timelike);
  REQUIRE(back.first_violation);
  CHECK(*back.first_violation == 0.0);

  const TimelikeCheck vertical = is_timelike(strip(), TimelikeCurve::segment(e, vec({0, 0}), vec({0, 1})));
  CHECK_FALSE(vertical.timelike);
  CHECK(*vertical.first_violation == 0.0);

  try {
    curve_length(strip(), TimelikeCurve::segment(e, vec({0, 0}), vec({0, 1})));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::precondition);
  }

  const TimelikeCurve broken([](double) -> CurveSample { throw std::runtime_error("boom"); });
  try {
    is_timelike(disk, broken);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::curve_evaluation);
  }
}

TEST_CASE("length examples") {
  const Chart e = Chart::euclidean(2);
  const auto disk = disk_ctx();
  CHECK(test::near(curve_length(disk, TimelikeCurve::segment(e, vec({-2, 0}), vec({-1.5, 0}))),
                   std::log(2.0), 1e-8));
  CHECK(test::near(curve_length(strip(), TimelikeCurve::segment(e, vec({0, 0}), vec({0.5, 0}))),
                   std::log(3.0), 1e-8));
  // A constant middle piece adds nothing.
  const TimelikeCurve paused =
      TimelikeCurve::polyline({vec({-2, 0}), vec({-1.75, 0}), vec({-1.75, 0}), vec({-1.5, 0})});
  CHECK(test::near(curve_length(disk, paused), std::log(2.0), 1e-8));
}

TEST_CASE("maximality examples") {
  const auto disk = disk_ctx();
  const MaximalityReport rep = maximality_check(disk, vec({-2, 0}), vec({-1.5, 0}), 200, 0.05, 1);
  CHECK(rep.accepted == 200);
  CHECK(rep.passed);
  CHECK(rep.max_length <= std::log(2.0) + 1e-6);

  const MaximalityReport flat = maximality_check(disk, vec({-2, 0}), vec({-1.5, 0}), 5, 0.0, 2);
  CHECK(flat.passed);
  CHECK(test::near(flat.max_length, std::log(2.0), 1e-8));
  CHECK(test::near(flat.max_excess, 0.0, 1e-8));

  const MaximalityReport s = maximality_check(strip(), vec({0, 0}), vec({0.5, 0}), 200, 0.05, 3);
  CHECK(s.passed);
  CHECK(s.max_length <= std::log(3.0) + 1e-6);

  // Small perturbations come within quadrature noise of the chord.
  const MaximalityReport tiny = maximality_check(disk, vec({-2, 0}), vec({-1.5, 0}), 20, 1e-3, 1);
  CHECK(tiny.passed);
  CHECK(std::log(2.0) - tiny.max_length <= 1e-6);
}

TEST_CASE("chord length equals the distance") {
  Rng rng(40);
  for (int i = 0; i < 30; ++i) {
    const Chart chart = i % 2 ? Chart::hyperbolic(2 + i % 4 / 2) : Chart::euclidean(2 + i % 4 / 2);
    const auto ctx = TimelikeContext::funk(random_body(chart, rng));
    const OrderedPair pq = random_funk_pair(ctx.body(), rng);
    const double len = curve_length(ctx, TimelikeCurve::segment(chart, pq.p, pq.q));
    CHECK(test::near(len, context_distance(ctx, pq.p, pq.q), 1e-6));
  }
}

TEST_CASE("reparametrization and concatenation") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const Chart chart = i % 2 ? Chart::hyperbolic(2) : Chart::euclidean(2);
    const auto ctx = TimelikeContext::funk(random_body(chart, rng));
    const OrderedPair pq = random_funk_pair(ctx.body(), rng);
    const TimelikeCurve seg = TimelikeCurve::segment(chart, pq.p, pq.q);
    const double whole = curve_length(ctx, seg);
    CHECK(test::near(curve_length(ctx, seg.reparametrized(exp_warp)), whole, 1e-8));
    const double s = rng.uniform(0.2, 0.8);
    CHECK(test::near(curve_length(ctx, seg.restricted(0, s)) + curve_length(ctx, seg.restricted(s, 1)),
                     whole, 1e-8));
  }
}

TEST_CASE("perturbed chords never beat the chord") {
  Rng rng(42);
  for (int i = 0; i < 6; ++i) {
    const Chart chart = i % 2 ? Chart::hyperbolic(2) : Chart::euclidean(2);
    const auto ctx = i % 3 == 2 ? random_hilbert_context(chart, rng)
                                : TimelikeContext::funk(random_body(chart, rng));
    Vector p, q;
    if (ctx.is_funk()) {
      const OrderedPair pq = random_funk_pair(ctx.body(), rng);
      p = pq.p;
      q = pq.q;
    } else {
      const auto pq = random_hilbert_pair(ctx, rng);
      if (!pq) continue;
      p = pq->p;
      q = pq->q;
    }
    const MaximalityReport rep = maximality_check(ctx, p, q, 30, 0.05, 100 + i);
    CHECK(rep.passed);
    CHECK(rep.max_excess <= 1e-6);
  }
}

}  // TEST_SUITE
