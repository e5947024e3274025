#include <doctest.h>

#include "helio2d/specfun.hpp"
#include "oracles.hpp"

using namespace helio2d;
using oracles::bessel_reference;
using Complex = std::complex<double>;

namespace {
double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("bessel matches the arbitrary-precision reference to 1e-13") {
  for (const auto& row : bessel_reference()) {
    auto b = specfun::bessel_j0j1y0y1(row.x);
    CAPTURE(row.x);
    CHECK(rel_err(b.j0, row.j0) <= 1e-13);
    CHECK(rel_err(b.j1, row.j1) <= 1e-13);
    CHECK(rel_err(b.y0, row.y0) <= 1e-13);
    CHECK(rel_err(b.y1, row.y1) <= 1e-13);
  }
}

TEST_CASE("bessel spot values") {
  auto b1 = specfun::bessel_j0j1y0y1(1.0);
  CHECK(rel_err(b1.j0, 0.7651976865579666) <= 1e-14);
  CHECK(rel_err(b1.y0, 0.08825696421567696) <= 1e-13);
  CHECK(specfun::bessel_j0j1y0y1(1e-8).j0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bessel domain errors") {
  CHECK_THROWS_AS(specfun::bessel_j0j1y0y1(0.0), std::domain_error);
  CHECK_THROWS_AS(specfun::bessel_j0j1y0y1(-2.0), std::domain_error);
}

TEST_CASE("no common zeros: J0^2 + Y0^2 > 0 on the reference grid") {
  for (const auto& row : bessel_reference()) {
    auto b = specfun::bessel_j0j1y0y1(row.x);
    CHECK(b.j0 * b.j0 + b.y0 * b.y0 > 0.0);
  }
}

TEST_CASE("fast hankel path agrees with the accurate path") {
  for (const auto& row : bessel_reference()) {
    auto fast = specfun::hankel01_fast(row.x);
    auto ref = specfun::hankel01(row.x);
    CHECK(std::abs(fast.h0 - ref.h0) / std::abs(ref.h0) <= 8e-15);
    CHECK(std::abs(fast.h1 - ref.h1) / std::abs(ref.h1) <= 8e-15);
  }
}

TEST_CASE("green: symmetry, value, small-argument limit") {
  Eigen::Vector2d x(0.3, -0.2), y(1.1, 0.5);
  CHECK(std::abs(specfun::green(2.0, x, y) - specfun::green(2.0, y, x)) <= 1e-16);

  // k=1, |x-y|=1: (i/4)(J0(1) + iY0(1))
  Complex g = specfun::green(1.0, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0));
  CHECK(rel_err(g.real(), -0.08825696421567696 / 4.0) <= 1e-13);
  CHECK(rel_err(g.imag(), 0.7651976865579666 / 4.0) <= 1e-13);

  // Im(G) -> 1/4 as r -> 0
  Complex g0 = specfun::green(1.0, Eigen::Vector2d(0, 0), Eigen::Vector2d(1e-7, 0));
  CHECK(std::abs(g0.imag() - 0.25) <= 1e-13);

  CHECK_THROWS_AS(specfun::green(1.0, x, x), std::domain_error);
}

TEST_CASE("green_grad: antisymmetry, finite differences, closed form") {
  double k = 1.3;
  Eigen::Vector2d x(0.2, 0.1), y(1.0, -0.4);
  auto gy = specfun::green_grad(k, x, y);
  auto gx = specfun::green_grad(k, y, x);
  CHECK(std::abs(gy[0] + gx[0]) <= 1e-15);
  CHECK(std::abs(gy[1] + gx[1]) <= 1e-15);

  // central difference along a direction, O(h^2)
  Eigen::Vector2d nu(0.6, 0.8);
  auto fd = [&](double h) {
    Complex gp = specfun::green(k, x, y + h * nu);
    Complex gm = specfun::green(k, x, y - h * nu);
    Complex dirder = (gp - gm) / (2.0 * h);
    return std::abs(dirder - (nu.x() * gy[0] + nu.y() * gy[1]));
  };
  double e3 = fd(1e-3), e4 = fd(1e-4), e5 = fd(1e-5);
  CHECK(e5 <= 1e-10);
  CHECK(e4 / e3 <= 0.02);  // second order
  CHECK(e5 / e4 <= 0.05);

  // k=2, x=(0,0), y=(1,0): -(ik/4) H1(k) (y-x)/r
  auto g2 = specfun::green_grad(2.0, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0));
  auto h2 = specfun::hankel01(2.0);
  Complex want = Complex(0, -0.5) * h2.h1;
  CHECK(std::abs(g2[0] - want) <= 1e-14);
  CHECK(std::abs(g2[1]) <= 1e-16);
}

TEST_CASE("green satisfies the Helmholtz equation to O(h^2)") {
  double k = 2.0;
  Eigen::Vector2d x(0.0, 0.0), y(1.4, 0.7);
  auto lap_residual = [&](double h) {
    Complex c = specfun::green(k, x, y);
    Complex e = specfun::green(k, x, y + Eigen::Vector2d(h, 0));
    Complex w = specfun::green(k, x, y - Eigen::Vector2d(h, 0));
    Complex n = specfun::green(k, x, y + Eigen::Vector2d(0, h));
    Complex s = specfun::green(k, x, y - Eigen::Vector2d(0, h));
    return std::abs((e + w + n + s - 4.0 * c) / (h * h) + k * k * c);
  };
  double r2 = lap_residual(1e-2), r3 = lap_residual(1e-3);
  CHECK(r2 <= 1e-3);
  CHECK(r3 / r2 <= 0.02);  // O(h^2)
}
