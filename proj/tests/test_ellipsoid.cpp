#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ellint/ellipsoid.hpp"
#include "ellint/rng.hpp"

using namespace ellint;

namespace {

SymMatrix sym2(double a, double b, double c) {
  SymMatrix m(2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 1, c);
  return m;
}

Ellipsoid unit_disk() {
  return Ellipsoid(Eigen::Vector2d::Zero(), SymMatrix::identity(2));
}

}  // namespace

TEST_CASE("construction validates shape and dimensions") {
  CHECK_NOTHROW(Ellipsoid(Eigen::Vector2d(12.0, 11.0), sym2(6.0, -5.0, 12.0)));
  SymMatrix bad(1);
  bad.set(0, 0, -1.0);
  CHECK_THROWS_AS(make_ellipsoid(Eigen::VectorXd::Zero(1), bad),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(make_ellipsoid(Eigen::Vector2d::Zero(), SymMatrix::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("contains evaluates the quadratic form through a Cholesky solve") {
  const Ellipsoid disk = unit_disk();
  CHECK(contains(disk, Eigen::Vector2d(0.0, 0.0), 0.0));
  CHECK(contains(disk, Eigen::Vector2d(1.0, 0.0), 0.0));  // boundary
  // direct evaluation: (1.1)^2 = 1.21 > 1
  CHECK(disk.form_value(Eigen::Vector2d(1.1, 0.0)) == doctest::Approx(1.21));
  CHECK_FALSE(contains(disk, Eigen::Vector2d(1.1, 0.0), 0.0));
  CHECK_THROWS_AS(contains(disk, Eigen::VectorXd::Zero(3), 0.0),
                  DimensionMismatch);
}

TEST_CASE("size_value matches hand-computed determinants") {
  const Ellipsoid disk = unit_disk();
  CHECK(size_value(disk, SizeCriterion::LogDet) == doctest::Approx(0.0));
  CHECK(size_value(disk, SizeCriterion::Trace) == doctest::Approx(2.0));
  // det [[6,-5],[-5,12]] = 72 - 25 = 47
  const Ellipsoid e(Eigen::Vector2d::Zero(), sym2(6.0, -5.0, 12.0));
  CHECK(size_value(e, SizeCriterion::LogDet) ==
        doctest::Approx(std::log(47.0)).epsilon(1e-12));
}

TEST_CASE("quadratic form matches the stated blocks") {
  const QuadraticForm disk_form = quadratic_form(unit_disk());
  const Eigen::MatrixXd a = disk_form.matrix().dense();
  Eigen::MatrixXd expect(3, 3);
  expect << 1, 0, 0, 0, 1, 0, 0, 0, -1;
  CHECK((a - expect).cwiseAbs().maxCoeff() < 1e-14);

  // 1D case P = [4], x = [2]: A = [[0.25, -0.5], [-0.5, 0]]
  SymMatrix p1(1);
  p1.set(0, 0, 4.0);
  const QuadraticForm f1 =
      quadratic_form(Ellipsoid(Eigen::VectorXd::Constant(1, 2.0), p1));
  CHECK(f1.matrix()(0, 0) == doctest::Approx(0.25));
  CHECK(f1.matrix()(0, 1) == doctest::Approx(-0.5));
  CHECK(f1.matrix()(1, 1) == doctest::Approx(0.0).epsilon(1e-14));

  // static-case member: top-left block equals the matrix inverse (oracle:
  // direct dense inverse).
  const Ellipsoid e1(Eigen::Vector2d(12.0, 11.0), sym2(6.0, -5.0, 12.0));
  const Eigen::MatrixXd inv_oracle = e1.shape().dense().inverse();
  const Eigen::MatrixXd top = quadratic_form(e1).matrix().dense().topLeftCorner(2, 2);
  CHECK((top - inv_oracle).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quadratic form round trip reproduces center and shape") {
  Rng rng(7);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
      const Eigen::MatrixXd p =
          g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
      Eigen::VectorXd c(n);
      for (int i = 0; i < n; ++i) c[i] = rng.uniform(-3.0, 3.0);
      const Ellipsoid e(c, SymMatrix::from_dense(p));
      const Ellipsoid back = quadratic_form(e).to_ellipsoid();
      const double scale = p.cwiseAbs().maxCoeff();
      CHECK((back.center() - c).norm() < 1e-10 * (1.0 + c.norm()));
      CHECK((back.shape().dense() - e.shape().dense()).cwiseAbs().maxCoeff() <
            1e-10 * scale);
    }
  }
}

TEST_CASE("intersection spec enforces uniform dimension") {
  CHECK_THROWS_AS(IntersectionSpec({}), DimensionMismatch);
  CHECK_THROWS_AS(
      IntersectionSpec({unit_disk(), Ellipsoid(Eigen::VectorXd::Zero(1),
                                               SymMatrix::identity(1))}),
      DimensionMismatch);
  const IntersectionSpec spec({unit_disk(), unit_disk()});
  CHECK(spec.size() == 2);
  CHECK(spec.dimension() == 2);
}
