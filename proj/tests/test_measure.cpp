#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "wfr/measure.hpp"

using namespace wfr;

TEST_CASE("unit vectors renormalize and reject junk") {
  UnitVector u(3.0, 0.0, 4.0);
  CHECK(u.x() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u.z() == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(u.vec().norm() - 1.0) <= 1e-12);

  CHECK_THROWS_AS(UnitVector(0.0, 0.0, 0.0), invalid_input);
  CHECK_THROWS_AS(UnitVector(1.0, std::nan(""), 0.0), invalid_input);
  CHECK_THROWS_AS(UnitVector(std::numeric_limits<double>::infinity(), 0.0, 0.0), invalid_input);
}

TEST_CASE("measures validate their weights") {
  UnitVector e3(0.0, 0.0, 1.0);
  CHECK_THROWS_AS(DiscreteMeasure({}, {}), invalid_input);
  CHECK_THROWS_AS(DiscreteMeasure({1.0, -2.0}, {e3, e3}), invalid_input);
  CHECK_THROWS_AS(DiscreteMeasure({0.0}, {e3}), invalid_input);
  CHECK_THROWS_AS(DiscreteMeasure({std::nan("")}, {e3}), invalid_input);
  CHECK_THROWS_AS(DiscreteMeasure({1.0, 2.0}, {e3}), invalid_input);

  DiscreteMeasure m({2.0, 1.0}, {e3, UnitVector(1.0, 0.0, 0.0)});
  CHECK(m.size() == 2);
  CHECK(m.total_mass() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("consolidation merges nearly equal supports into the first occurrence") {
  UnitVector a(0.0, 0.0, 1.0);
  UnitVector b(1e-14, 0.0, 1.0);  // same direction up to roundoff
  UnitVector c(1.0, 0.0, 0.0);
  DiscreteMeasure m({1.0, 2.0, 4.0}, {a, b, c});

  DiscreteMeasure merged = m.consolidated();
  REQUIRE(merged.size() == 2);
  CHECK(merged.weight(0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(merged.support(0).z() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(merged.weight(1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(merged.total_mass() == doctest::Approx(m.total_mass()).epsilon(1e-15));

  // distinct directions survive a strict threshold
  DiscreteMeasure strict = m.consolidated(1.0 + 1e-9);
  CHECK(strict.size() == 3);
}

TEST_CASE("kernel factories validate rho") {
  CHECK(Kernel::wfr().rho == 1.0);
  CHECK(Kernel::wfr(0.5).family == Kernel::Family::wfr);
  CHECK(Kernel::ghk(2.0).family == Kernel::Family::ghk);
  CHECK_THROWS_AS(Kernel::wfr(0.0), invalid_input);
  CHECK_THROWS_AS(Kernel::wfr(-1.0), invalid_input);
  CHECK_THROWS_AS(Kernel::ghk(0.0), invalid_input);
  CHECK_THROWS_AS(Kernel::ghk(std::nan("")), invalid_input);
}

TEST_CASE("cost matrix at rho = 1 is the plain inner product") {
  UnitVector ex(1.0, 0.0, 0.0), ey(0.0, 1.0, 0.0), ez(0.0, 0.0, 1.0);
  DiscreteMeasure mu({1.0, 1.0}, {ex, ez});
  DiscreteMeasure nu({1.0, 1.0, 1.0}, {ex, ey, UnitVector(-1.0, 0.0, 0.0)});

  CostMatrix omega = build_cost_matrix(mu, nu, Kernel::wfr());
  REQUIRE(omega.rows() == 2);
  REQUIRE(omega.cols() == 3);
  CHECK(omega(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(omega(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(omega(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(omega(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("cost matrix with rho stretches the geodesic before the cosine") {
  UnitVector ex(1.0, 0.0, 0.0), ey(0.0, 1.0, 0.0);
  DiscreteMeasure mu({1.0}, {ex});
  DiscreteMeasure nu({1.0}, {ey});
  const double quarter = std::numbers::pi / 2.0;

  // d = pi/2: cos(d / 2) = cos(pi/4)
  CostMatrix omega2 = build_cost_matrix(mu, nu, Kernel::wfr(2.0));
  CHECK(omega2(0, 0) == doctest::Approx(std::cos(quarter / 2.0)).epsilon(1e-14));

  // rho < 1 can push the angle past pi, the cosine just keeps going
  CostMatrix omega_half = build_cost_matrix(mu, nu, Kernel::wfr(0.5));
  CHECK(omega_half(0, 0) == doctest::Approx(std::cos(2.0 * quarter)).epsilon(1e-14));
}

TEST_CASE("gaussian kernel hits exp(-d^2 / (2 rho))") {
  UnitVector ez(0.0, 0.0, 1.0);
  UnitVector mz(0.0, 0.0, -1.0);
  DiscreteMeasure mu({1.0}, {ez});
  DiscreteMeasure nu({1.0, 1.0}, {ez, mz});

  CostMatrix omega = build_cost_matrix(mu, nu, Kernel::ghk(1.0));
  const double pi = std::numbers::pi;
  CHECK(omega(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(omega(0, 1) == doctest::Approx(std::exp(-pi * pi / 2.0)).epsilon(1e-12));

  CostMatrix wide = build_cost_matrix(mu, nu, Kernel::ghk(4.0));
  CHECK(wide(0, 1) == doctest::Approx(std::exp(-pi * pi / 8.0)).epsilon(1e-12));
  CHECK(wide(0, 1) > omega(0, 1));  // larger rho forgives distance
}

TEST_CASE("nearly parallel doubles clamp instead of producing nan") {
  UnitVector a(1.0, 0.0, 0.0);
  UnitVector b(1.0, 1e-13, 0.0);
  DiscreteMeasure mu({1.0}, {a});
  DiscreteMeasure nu({1.0}, {b});
  CostMatrix omega = build_cost_matrix(mu, nu, Kernel::wfr(0.7));
  CHECK(std::isfinite(omega(0, 0)));
  CHECK(omega(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("random measures are deterministic in the seed") {
  DiscreteMeasure a = random_measure(16, 42);
  DiscreteMeasure b = random_measure(16, 42);
  DiscreteMeasure c = random_measure(16, 43);
  REQUIRE(a.size() == 16);
  bool identical = true;
  bool differs_from_c = false;
  for (int i = 0; i < a.size(); ++i) {
    identical = identical && a.weight(i) == b.weight(i) &&
                a.support(i).vec() == b.support(i).vec();
    differs_from_c = differs_from_c || a.weight(i) != c.weight(i);
  }
  CHECK(identical);
  CHECK(differs_from_c);
}

TEST_CASE("random measure weights live in (0, mass_scale]") {
  const double scale = 30.0;
  DiscreteMeasure m = random_measure(256, 7, scale);
  for (int i = 0; i < m.size(); ++i) {
    CHECK(m.weight(i) > 0.0);
    CHECK(m.weight(i) <= scale);
    CHECK(std::abs(m.support(i).vec().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("random supports cover both hemispheres") {
  DiscreteMeasure m = random_measure(512, 99);
  int north = 0;
  for (int i = 0; i < m.size(); ++i)
    if (m.support(i).z() > 0.0) ++north;
  CHECK(north > 150);
  CHECK(north < 362);
}
