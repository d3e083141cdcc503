#include <cmath>

#include "doctest.h"
#include "wfr/errors.hpp"
#include "wfr/mds.hpp"

using namespace wfr;

namespace {

Eigen::MatrixXd pairwise(const Eigen::MatrixXd& coords) {
  const auto n = coords.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (coords.row(i) - coords.row(j)).norm();
  return d;
}

}  // namespace

TEST_CASE("two points embed at their exact distance") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 3.5, 3.5, 0;
  MdsResult r = classical_mds(d, 3);
  CHECK(std::abs(r.coords(0, 0) - r.coords(1, 0)) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(r.coords.col(1).norm() <= 1e-9);
  CHECK(r.coords.col(2).norm() <= 1e-9);
  CHECK(r.clamped_negative == 0);
}

TEST_CASE("collinear points stay on a line") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 3, 1, 0, 2, 3, 2, 0;
  MdsResult r = classical_mds(d, 2);
  CHECK((pairwise(r.coords) - d).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r.eigenvalues(0) > 1.0);
  CHECK(std::abs(r.eigenvalues(1)) <= 1e-12);
}

TEST_CASE("a unit square is reproduced up to rigid motion") {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 1, 0, 1, 1, 0, 1;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();

  MdsResult r = classical_mds(d, 3);
  CHECK((pairwise(r.coords) - d).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r.clamped_negative == 0);
  CHECK(r.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvalues(2) <= 1e-12);
}

TEST_CASE("non euclidean inputs clamp negative directions") {
  // unit star: three leaves pairwise at 2, hub at 1; lives in no euclidean space
  Eigen::MatrixXd d(4, 4);
  d << 0, 1, 1, 1, 1, 0, 2, 2, 1, 2, 0, 2, 1, 2, 2, 0;
  MdsResult r = classical_mds(d, 4);
  CHECK(r.clamped_negative >= 1);
  // the clamped axes carry zero coordinates
  CHECK(r.coords.col(3).norm() == 0.0);
  // the dominant directions still approximate the metric from below
  CHECK(r.eigenvalues(0) >= r.eigenvalues(1));
}

TEST_CASE("requesting more axes than points pads with zeros") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  MdsResult r = classical_mds(d, 5);
  CHECK(r.coords.cols() == 5);
  CHECK(r.coords.col(2).norm() == 0.0);
  CHECK(r.coords.col(4).norm() == 0.0);
}

TEST_CASE("input validation") {
  Eigen::MatrixXd rect = Eigen::MatrixXd::Zero(2, 3);
  CHECK_THROWS_AS(classical_mds(rect, 2), invalid_input);

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(classical_mds(asym, 2), invalid_input);

  Eigen::MatrixXd with_nan(2, 2);
  with_nan << 0, std::nan(""), std::nan(""), 0;
  CHECK_THROWS_AS(classical_mds(with_nan, 2), invalid_input);

  Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(classical_mds(ok, 0), invalid_input);
}
