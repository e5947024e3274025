#include <doctest.h>

#include "helio2d/quadrature.hpp"
#include "oracles.hpp"

using namespace helio2d;
using Complex = std::complex<double>;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// exact value of int log|2 sin((t-s)/2)| / (a - cos(s - s0)) ds via the
// geometric Fourier series of the density
double log_kernel_exact(double t, double a, double s0) {
  double root = std::sqrt(a * a - 1.0);
  double r = a - root;
  double acc = 0.0;
  double rm = 1.0;
  for (int m = 1; m < 40000; ++m) {
    rm *= r;
    double term = -2.0 * M_PI / m * rm / root * std::cos(m * (t - s0));
    acc += term;
    if (std::abs(rm) < 1e-18) break;
  }
  return acc;
}

double apply_log_rule(const AlpertRule& rule, int n, double t_target, double a,
                      double s0) {
  int i = 0;
  // shift the density so the target lands on node 0
  auto kernel = [&](double s) {
    return Complex(std::log(std::abs(2.0 * std::sin(0.5 * (0.0 - s)))), 0.0);
  };
  Eigen::VectorXcd row = alpert_row(rule, n, i, kernel);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = kTwoPi * j / n;
    acc += row[j].real() / (a - std::cos(s + t_target - s0));
  }
  return acc;
}

}  // namespace

TEST_CASE("trapezoid weights") {
  Eigen::VectorXd w = trapezoid_weights(64);
  double c3 = 0.0, one = 0.0, esin = 0.0;
  for (int j = 0; j < 64; ++j) {
    double t = kTwoPi * j / 64;
    c3 += w[j] * std::cos(3.0 * t);
    one += w[j];
    esin += w[j] * std::exp(std::sin(t));
  }
  CHECK(std::abs(c3) <= 1e-15);
  CHECK(std::abs(one - kTwoPi) <= 1e-14);
  double ref = oracles::adaptive_quad(
      [](double t) { return std::exp(std::sin(t)); }, 0.0, kTwoPi);
  CHECK(std::abs(ref - 7.95492652101284) <= 1e-12);
  CHECK(std::abs(esin - ref) <= 1e-12);
}

TEST_CASE("alpert rule tables are sane") {
  for (int order : {4, 8, 16}) {
    const AlpertRule& r = AlpertRule::get(order);
    CHECK(r.nodes.minCoeff() > 0.0);  // aux nodes never touch the singularity
    CHECK(r.nodes.maxCoeff() < r.n_skipped);
    // sum of weights reproduces the skipped mass: sum w = a - 1/2
    CHECK(std::abs(r.weights.sum() - (r.n_skipped - 0.5)) <= 1e-13);
  }
  CHECK_THROWS(AlpertRule::get(6));
}

TEST_CASE("order-16 rule reproduces the classical log integrals at N=128") {
  const AlpertRule& rule = AlpertRule::get(16);
  int n = 128;
  int i = 17;
  double ti = kTwoPi * i / n;
  auto kernel = [&](double t) {
    return Complex(std::log(std::abs(2.0 * std::sin(0.5 * (ti - t)))), 0.0);
  };
  Eigen::VectorXcd row = alpert_row(rule, n, i, kernel);
  CHECK(std::abs(row.sum()) <= 1e-12);  // int log|2 sin| ds = 0
  for (int m = 1; m <= 4; ++m) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * std::cos(m * (kTwoPi * j / n));
    CHECK(std::abs(acc - Complex(-M_PI / m * std::cos(m * ti), 0.0)) <= 1e-12);
  }
}

TEST_CASE("full rule applied to constant density covers the period") {
  const AlpertRule& rule = AlpertRule::get(16);
  int n = 128;
  Eigen::VectorXcd row =
      alpert_row(rule, n, 5, [](double) { return Complex(1.0, 0.0); });
  CHECK(std::abs(row.sum() - kTwoPi) <= 1e-13);
}

TEST_CASE("smooth integrand: correction row matches plain trapezoid") {
  const AlpertRule& rule = AlpertRule::get(16);
  int n = 256;
  auto kernel = [](double t) { return Complex(std::exp(std::cos(t)), 0.0); };
  Eigen::VectorXcd row = alpert_row(rule, n, 31, kernel);
  double plain = 0.0;
  for (int j = 0; j < n; ++j) plain += kTwoPi / n * std::exp(std::cos(kTwoPi * j / n));
  CHECK(std::abs(row.sum().real() - plain) <= 1e-12);
}

TEST_CASE("convergence order on the log kernel") {
  // density 1/(a - cos(s - s0)), exact integral from its Fourier series;
  // a close to 1 keeps the errors above the floor at these N
  double a = 1.02, s0 = 0.37;
  struct Case {
    int order;
    int n_lo, n_hi;
    double min_ratio;
  } cases[] = {
      {4, 96, 192, std::pow(2.0, 3)},
      {8, 96, 192, std::pow(2.0, 7)},
      {16, 96, 192, std::pow(2.0, 12)},  // empirical order >= 12
  };
  for (const auto& c : cases) {
    const AlpertRule& rule = AlpertRule::get(c.order);
    double exact = log_kernel_exact(0.0, a, s0);
    double e_lo = std::abs(apply_log_rule(rule, c.n_lo, 0.0, a, s0) - exact);
    double e_hi = std::abs(apply_log_rule(rule, c.n_hi, 0.0, a, s0) - exact);
    CAPTURE(c.order);
    CAPTURE(e_lo);
    CAPTURE(e_hi);
    CHECK(e_lo / std::max(e_hi, 1e-16) >= c.min_ratio);
  }
}

TEST_CASE("layout preconditions") {
  CHECK_THROWS(AlpertLayout::build(AlpertRule::get(16), 64));
  CHECK_NOTHROW(AlpertLayout::build(AlpertRule::get(16), 65));
}
