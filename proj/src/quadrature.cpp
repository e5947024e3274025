#include "helio2d/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace helio2d {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct RuleData {
  int order;
  int a;
  int n;
  std::vector<double> chi;
  std::vector<double> w;
};

const RuleData kRules[] = {
#include "alpert_tables.inc"
};

AlpertRule make_rule(const RuleData& d) {
  AlpertRule r;
  r.order = d.order;
  r.n_skipped = d.a;
  r.interp_points = d.order;
  r.nodes = Eigen::Map<const Eigen::VectorXd>(d.chi.data(), d.n);
  r.weights = Eigen::Map<const Eigen::VectorXd>(d.w.data(), d.n);
  return r;
}

}  // namespace

Eigen::VectorXd trapezoid_weights(int N) {
  if (N < 2) throw std::invalid_argument("trapezoid_weights: N >= 2 required");
  return Eigen::VectorXd::Constant(N, kTwoPi / N);
}

const AlpertRule& AlpertRule::get(int order) {
  static const AlpertRule r4 = make_rule(kRules[0]);
  static const AlpertRule r8 = make_rule(kRules[1]);
  static const AlpertRule r16 = make_rule(kRules[2]);
  switch (order) {
    case 4:
      return r4;
    case 8:
      return r8;
    case 16:
      return r16;
    default:
      throw std::invalid_argument("AlpertRule::get: order must be 4, 8 or 16");
  }
}

AlpertLayout AlpertLayout::build(const AlpertRule& rule, int N) {
  if (N <= 4 * rule.order)
    throw std::invalid_argument("AlpertLayout: N must exceed 4*order");
  AlpertLayout lay;
  lay.order = rule.order;
  lay.a = rule.n_skipped;
  lay.n = N;
  lay.h = kTwoPi / N;
  int q = rule.interp_points;
  for (int m = 0; m < rule.nodes.size(); ++m) {
    double chi = rule.nodes[m];
    int first = static_cast<int>(std::floor(chi)) - (q / 2 - 1);
    Eigen::VectorXd st(q);
    for (int j = 0; j < q; ++j) {
      double xj = first + j;
      double num = 1.0, den = 1.0;
      for (int k = 0; k < q; ++k) {
        if (k == j) continue;
        num *= chi - (first + k);
        den *= xj - (first + k);
      }
      st[j] = num / den;
    }
    AlpertAux plus{chi, rule.weights[m], first, st};
    AlpertAux minus{-chi, rule.weights[m], -(first + q - 1), st.reverse()};
    lay.aux.push_back(plus);
    lay.aux.push_back(minus);
  }
  return lay;
}

Eigen::VectorXcd alpert_row(
    const AlpertRule& rule, int N, int i,
    const std::function<std::complex<double>(double)>& kernel_at) {
  AlpertLayout lay = AlpertLayout::build(rule, N);
  double h = lay.h;
  Eigen::VectorXcd row = Eigen::VectorXcd::Zero(N);
  for (int j = 0; j < N; ++j) {
    int d = std::abs(j - i);
    d = std::min(d, N - d);
    if (d < lay.a) continue;
    row[j] += h * kernel_at(kTwoPi * j / N);
  }
  double ti = kTwoPi * i / N;
  for (const AlpertAux& ax : lay.aux) {
    std::complex<double> c = h * ax.weight * kernel_at(ti + ax.offset * h);
    for (int j = 0; j < ax.stencil.size(); ++j) {
      int col = ((i + ax.first + j) % N + N) % N;
      row[col] += c * ax.stencil[j];
    }
  }
  return row;
}

}  // namespace helio2d
