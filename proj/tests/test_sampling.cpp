#include <doctest.h>

#include "ellint/sampling.hpp"

using namespace ellint;

namespace {

Ellipsoid disk_at(double x, double y) {
  return Ellipsoid(Eigen::Vector2d(x, y), SymMatrix::identity(2));
}

}  // namespace

TEST_CASE("samples always land inside the ellipsoid") {
  SymMatrix p(2);
  p.set(0, 0, 6.0);
  p.set(0, 1, -5.0);
  p.set(1, 1, 12.0);
  const Ellipsoid e(Eigen::Vector2d(12.0, 11.0), p);
  Rng rng(3);
  for (int k = 0; k < 2000; ++k)
    CHECK(contains(e, sample_in_ellipsoid(e, rng), 1e-12));

  const Ellipsoid seg(Eigen::VectorXd::Zero(1), SymMatrix::identity(1));
  Rng rng1(4);
  for (int k = 0; k < 200; ++k) {
    const double x = sample_in_ellipsoid(seg, rng1)[0];
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("unit-disk samples are centered (Monte Carlo)") {
  const Ellipsoid disk = disk_at(0.0, 0.0);
  Rng rng(11);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  const int count = 100000;
  for (int k = 0; k < count; ++k) mean += sample_in_ellipsoid(disk, rng);
  mean /= count;
  CHECK(std::abs(mean.x()) < 0.02);
  CHECK(std::abs(mean.y()) < 0.02);
}

TEST_CASE("feasible point search") {
  SUBCASE("single disk: the center wins immediately") {
    const auto p = intersection_feasible_point(IntersectionSpec({disk_at(0, 0)}));
    REQUIRE(p.has_value());
    CHECK(p->norm() < 1e-12);
  }
  SUBCASE("overlapping disks") {
    const IntersectionSpec spec({disk_at(0, 0), disk_at(1, 0)});
    const auto p = intersection_feasible_point(spec);
    REQUIRE(p.has_value());
    // g([0.5, 0]) = 0.25, so a valid point certainly exists
    for (const Ellipsoid& e : spec.members()) CHECK(contains(e, *p, 0.0));
  }
  SUBCASE("disjoint disks: min g = 2.25 > 1") {
    const auto p =
        intersection_feasible_point(IntersectionSpec({disk_at(0, 0), disk_at(3, 0)}));
    CHECK_FALSE(p.has_value());
  }
}

TEST_CASE("rejection sampling of the intersection") {
  Rng rng(5);
  SUBCASE("single disk") {
    const auto pts =
        sample_intersection(IntersectionSpec({disk_at(0, 0)}), 10, rng);
    CHECK(pts.size() == 10);
  }
  SUBCASE("lens of two disks") {
    const IntersectionSpec spec({disk_at(0, 0), disk_at(1, 0)});
    const auto pts = sample_intersection(spec, 100, rng);
    CHECK(pts.size() == 100);
    for (const auto& x : pts)
      for (const Ellipsoid& e : spec.members()) CHECK(contains(e, x, 0.0));
  }
  SUBCASE("disjoint disks exhaust the budget with zero accepted") {
    const IntersectionSpec spec({disk_at(0, 0), disk_at(3, 0)});
    try {
      sample_intersection(spec, 5, rng);
      FAIL("expected SamplingBudgetExceeded");
    } catch (const SamplingBudgetExceeded& e) {
      CHECK(e.accepted() == 0);
    }
  }
}
