// Generates the embedded endpoint-correction tables (src/alpert_tables.inc)
// for the hybrid Gauss-trapezoidal rules handling log-singular periodic
// integrands.
//
// Construction: one-sided correction for integrands f(x) = phi(x) + psi(x) ln x
// sampled on a uniform grid with the first `a` points skipped,
//
//   h [ sum_i w_i f(chi_i h) ] + h sum_{j>=a} f(j h)  ~  "int_0^inf f",
//
// is exact (in the zeta-regularized sense) for x^m and x^m ln x, m = 0..p-1:
//
//   sum_i w_i chi_i^m        = -zeta(-m, a)
//   sum_i w_i chi_i^m ln chi = zeta'(-m, a)
//
// Auxiliary nodes chi_i are fixed (Gauss-Legendre on (0,a), n = 2p) and the
// weights solve the square moment system, assembled in a Chebyshev basis and
// solved in double-double arithmetic. Hurwitz zeta values at non-positive
// integers and their s-derivatives come from the Euler-Maclaurin formula,
// which terminates for the polynomial part. Everything is validated against
// classical closed forms before the tables are emitted.

#include <cmath>
#include <cstdio>
#include <vector>

#include "helio2d/dd.hpp"

using helio2d::DD;
using helio2d::dd_add;
using helio2d::dd_div;
using helio2d::dd_log;
using helio2d::dd_mul;
using helio2d::dd_neg;
using helio2d::dd_sub;

namespace {

// B_{2r} for r = 1..13
const long long kBernNum[] = {1,  -1, 1,  -1, 5,  -691, 7,
                              -3617, 43867, -174611, 854513, -236364091, 8553103};
const long long kBernDen[] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730, 6};

DD bern2r(int r) {  // B_{2r}
  return dd_div(DD(static_cast<double>(kBernNum[r - 1])),
                DD(static_cast<double>(kBernDen[r - 1])));
}

DD dd_powi(DD x, int e) {
  DD out(1.0);
  for (int i = 0; i < std::abs(e); ++i) out = dd_mul(out, x);
  return e < 0 ? dd_div(DD(1.0), out) : out;
}

DD factorial_dd(int n) {
  DD f(1.0);
  for (int i = 2; i <= n; ++i) f = dd_mul(f, static_cast<double>(i));
  return f;
}

// zeta(-m, a): Euler-Maclaurin with J = a (pure tail form), terminating sum.
DD hurwitz_zeta_neg(int m, int a) {
  int J = a;
  // sum_{j=a}^{J-1} empty; continuation terms at s = -m:
  DD jm1 = dd_powi(DD(static_cast<double>(J)), m + 1);
  DD jm = dd_powi(DD(static_cast<double>(J)), m);
  DD total = dd_div(jm1, DD(-(m + 1.0)));
  total = dd_add(total, dd_mul(jm, 0.5));
  for (int r = 1; 2 * r - 2 <= m; ++r) {
    // Poch(-m, 2r-1) = prod_{q=0}^{2r-2} (-m+q); zero if 2r-2 >= m+1
    DD poch(1.0);
    bool zero = false;
    for (int q = 0; q <= 2 * r - 2; ++q) {
      int f = -m + q;
      if (f == 0) {
        zero = true;
        break;
      }
      poch = dd_mul(poch, static_cast<double>(f));
    }
    if (zero) continue;
    DD term = dd_mul(dd_div(bern2r(r), factorial_dd(2 * r)), poch);
    term = dd_mul(term, dd_powi(DD(static_cast<double>(J)), m + 1 - 2 * r));
    total = dd_add(total, term);
  }
  return total;
}

// zeta'(-m, a) via Euler-Maclaurin at J >= a, R terms.
DD hurwitz_zeta_deriv_neg(int m, int a, int J, int R) {
  DD total(0.0);
  for (int j = a; j < J; ++j) {
    DD jm = dd_powi(DD(static_cast<double>(j)), m);
    total = dd_sub(total, dd_mul(jm, dd_log(DD(static_cast<double>(j)))));
  }
  DD lnJ = dd_log(DD(static_cast<double>(J)));
  DD jm1 = dd_powi(DD(static_cast<double>(J)), m + 1);
  DD jm = dd_powi(DD(static_cast<double>(J)), m);
  // d/ds [J^{1-s}/(s-1)] at s=-m: J^{m+1} [ln J/(m+1) - 1/(m+1)^2]
  DD inv_sq = dd_div(DD(1.0), DD((m + 1.0) * (m + 1.0)));
  total = dd_add(total, dd_mul(jm1, dd_sub(dd_div(lnJ, DD(m + 1.0)), inv_sq)));
  total = dd_sub(total, dd_mul(dd_mul(jm, lnJ), 0.5));
  for (int r = 1; r <= R; ++r) {
    // Poch(s,2r-1) and d/ds Poch at s=-m
    DD poch(1.0);
    DD dpoch(0.0);
    bool zero = false;
    for (int q = 0; q <= 2 * r - 2; ++q)
      if (q == m) zero = true;
    if (zero) {
      DD prod(1.0);
      for (int q = 0; q <= 2 * r - 2; ++q) {
        if (q == m) continue;
        prod = dd_mul(prod, static_cast<double>(q - m));
      }
      dpoch = prod;
      poch = DD(0.0);
    } else {
      DD hsum(0.0);
      for (int q = 0; q <= 2 * r - 2; ++q) {
        poch = dd_mul(poch, static_cast<double>(q - m));
        hsum = dd_add(hsum, dd_div(DD(1.0), DD(static_cast<double>(q - m))));
      }
      dpoch = dd_mul(poch, hsum);
    }
    // d/ds [Poch J^{-s-2r+1}] = (Poch' - Poch ln J) J^{m-2r+1}
    DD bracket = dd_sub(dpoch, dd_mul(poch, lnJ));
    DD term = dd_mul(dd_div(bern2r(r), factorial_dd(2 * r)), bracket);
    term = dd_mul(term, dd_powi(DD(static_cast<double>(J)), m + 1 - 2 * r));
    total = dd_add(total, term);
  }
  return total;
}

// Gauss-Legendre nodes/weights on [-1,1] (double precision is plenty: the
// nodes are arbitrary fixed abscissae; only the weight solve needs dd).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
      double dx = p0 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
    }
    double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

// dense dd linear solve, partial pivoting
std::vector<DD> dd_solve(std::vector<std::vector<DD>> A, std::vector<DD> b) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A[r][c].hi) > std::abs(A[piv][c].hi)) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < n; ++r) {
      DD f = dd_div(A[r][c], A[c][c]);
      for (int k = c; k < n; ++k) A[r][k] = dd_sub(A[r][k], dd_mul(f, A[c][k]));
      b[r] = dd_sub(b[r], dd_mul(f, b[c]));
    }
  }
  std::vector<DD> x(n);
  for (int r = n - 1; r >= 0; --r) {
    DD acc = b[r];
    for (int k = r + 1; k < n; ++k) acc = dd_sub(acc, dd_mul(A[r][k], x[k]));
    x[r] = dd_div(acc, A[r][r]);
  }
  return x;
}

struct Rule {
  int order, a;
  std::vector<double> chi;
  std::vector<double> w;
};

double apply_rule(const Rule& r, int N, double (*g)(double));
double g_log(double s);
double g_logcos2(double s);

std::vector<double> aux_nodes(int n, int a, int strategy) {
  std::vector<double> gx, gw, chi(n);
  switch (strategy) {
    case 0:  // Gauss-Legendre on (0,a)
      gauss_legendre(n, gx, gw);
      for (int i = 0; i < n; ++i) chi[i] = 0.5 * a * (1.0 + gx[i]);
      break;
    case 1:  // quadratic clustering toward the singularity
      gauss_legendre(n, gx, gw);
      for (int i = 0; i < n; ++i) {
        double u = 0.5 * (1.0 + gx[i]);
        chi[i] = a * u * u;
      }
      break;
    default: {  // split (0,1) + (1,a)
      gauss_legendre(n / 2, gx, gw);
      for (int i = 0; i < n / 2; ++i) {
        chi[i] = 0.5 * (1.0 + gx[i]);
        chi[n / 2 + i] = 1.0 + 0.5 * (a - 1.0) * (1.0 + gx[i]);
      }
      break;
    }
  }
  return chi;
}

Rule build_rule_nodes(int p, int a, const std::vector<double>& chi) {
  int n = 2 * p;

  // Chebyshev basis T_m(2x/a - 1) as monomial coefficients (dd)
  std::vector<std::vector<DD>> cheb(p);
  {
    std::vector<DD> t0{DD(1.0)};
    std::vector<DD> t1{DD(-1.0), dd_div(DD(2.0), DD(static_cast<double>(a)))};
    cheb[0] = t0;
    if (p > 1) cheb[1] = t1;
    for (int m = 2; m < p; ++m) {
      const auto& prev = cheb[m - 1];
      const auto& prev2 = cheb[m - 2];
      std::vector<DD> cur(m + 1, DD(0.0));
      for (size_t r = 0; r < prev.size(); ++r) {
        // 2*(2x/a - 1)*prev
        cur[r + 1] = dd_add(cur[r + 1], dd_mul(prev[r], 4.0 / a));
        cur[r] = dd_sub(cur[r], dd_mul(prev[r], 2.0));
      }
      for (size_t r = 0; r < prev2.size(); ++r) cur[r] = dd_sub(cur[r], prev2[r]);
      cheb[m] = cur;
    }
  }

  auto poly_eval = [](const std::vector<DD>& c, DD x) {
    DD acc(0.0);
    for (int r = static_cast<int>(c.size()) - 1; r >= 0; --r)
      acc = dd_add(dd_mul(acc, x), c[r]);
    return acc;
  };

  // regularized tail moments per basis polynomial
  int J = std::max(40, 4 * a);
  std::vector<DD> zneg(p), zdneg(p);
  for (int r = 0; r < p; ++r) {
    zneg[r] = hurwitz_zeta_neg(r, a);
    zdneg[r] = hurwitz_zeta_deriv_neg(r, a, J, 13);
    // convergence guard: J refinement must agree
    DD check = hurwitz_zeta_deriv_neg(r, a, J + 17, 13);
    double rel = std::abs(dd_sub(check, zdneg[r]).hi) /
                 std::max(1.0, std::abs(zdneg[r].hi));
    if (rel > 1e-16) {
      std::fprintf(stderr, "zeta' EM not converged: m=%d rel=%.3e\n", r, rel);
      std::exit(1);
    }
  }

  std::vector<std::vector<DD>> A(2 * p, std::vector<DD>(n));
  std::vector<DD> rhs(2 * p);
  for (int m = 0; m < p; ++m) {
    DD mom_p(0.0), mom_l(0.0);
    for (size_t r = 0; r < cheb[m].size(); ++r) {
      mom_p = dd_add(mom_p, dd_mul(cheb[m][r], dd_neg(zneg[r])));
      mom_l = dd_add(mom_l, dd_mul(cheb[m][r], zdneg[r]));
    }
    rhs[m] = mom_p;
    rhs[p + m] = mom_l;
    for (int i = 0; i < n; ++i) {
      DD xi(chi[i]);
      DD pv = poly_eval(cheb[m], xi);
      A[m][i] = pv;
      A[p + m][i] = dd_mul(pv, dd_log(xi));
    }
  }

  std::vector<DD> w = dd_solve(A, rhs);
  Rule rule{p, a, chi, {}};
  rule.w.resize(n);
  DD s(0.0);
  for (int i = 0; i < n; ++i) {
    rule.w[i] = w[i].value();
    s = dd_add(s, w[i]);
  }
  // sanity: sum w_i == a - 1/2 (the m=0 moment)
  if (std::abs(s.value() - (a - 0.5)) > 1e-20 * std::max(1.0, std::abs(a - 0.5))) {
    std::fprintf(stderr, "order %d: sum w residual %.3e\n", p,
                 s.value() - (a - 0.5));
    std::exit(1);
  }
  return rule;
}

Rule build_rule(int p, int a) {
  double best_score = 1e300;
  Rule best;
  for (int strategy = 0; strategy < 3; ++strategy) {
    Rule r = build_rule_nodes(p, a, aux_nodes(2 * p, a, strategy));
    double wmax = 0.0;
    for (double v : r.w) wmax = std::max(wmax, std::abs(v));
    double err = std::abs(apply_rule(r, 128, g_logcos2) + M_PI / 2.0) +
                 std::abs(apply_rule(r, 128, g_log));
    double score = err * (1.0 + wmax);
    std::fprintf(stderr, "p=%2d strategy %d: max|w|=%.3g iderr=%.3e\n", p,
                 strategy, wmax, err);
    if (score < best_score) {
      best_score = score;
      best = r;
    }
  }
  return best;
}

// periodic integral of g over [0,2pi], log singularity at 0 (== 2pi)
double apply_rule(const Rule& r, int N, double (*g)(double)) {
  double h = 2.0 * M_PI / N;
  double total = 0.0;
  for (int j = r.a; j <= N - r.a; ++j) total += g(j * h);
  total *= h;
  for (size_t i = 0; i < r.chi.size(); ++i) {
    total += h * r.w[i] * (g(r.chi[i] * h) + g(2.0 * M_PI - r.chi[i] * h));
  }
  return total;
}

double g_log(double s) { return std::log(std::abs(2.0 * std::sin(0.5 * s))); }
double g_logcos2(double s) { return g_log(s) * std::cos(2.0 * s); }
double g_smooth(double s) { return std::exp(std::cos(s)); }

void validate(const Rule& r) {
  struct Case {
    double (*g)(double);
    double exact;
    const char* name;
  } cases[] = {
      {g_log, 0.0, "log identity"},
      {g_logcos2, -M_PI / 2.0, "log*cos2"},
      {g_smooth, 7.95492652101284527, "smooth exp(cos)"},
  };
  for (const auto& c : cases) {
    double e1 = std::abs(apply_rule(r, 128, c.g) - c.exact);
    double e2 = std::abs(apply_rule(r, 64, c.g) - c.exact);
    double order = std::log2(e2 / std::max(e1, 1e-17));
    std::fprintf(stderr, "p=%2d %-16s errN128=%.3e errN64=%.3e order~%.1f\n",
                 r.order, c.name, e1, e2, order);
  }
}

void emit(const Rule& r) {
  std::printf("{\n  %d, %d, %d,\n  {", r.order, r.a,
              static_cast<int>(r.chi.size()));
  for (size_t i = 0; i < r.chi.size(); ++i)
    std::printf("%s%.17g", i ? ", " : "", r.chi[i]);
  std::printf("},\n  {");
  for (size_t i = 0; i < r.w.size(); ++i)
    std::printf("%s%.17g", i ? ", " : "", r.w[i]);
  std::printf("},\n},\n");
}

}  // namespace

int main() {
  // spot checks for the zeta machinery
  {
    DD z0 = hurwitz_zeta_deriv_neg(0, 1, 41, 13);  // zeta'(0) = -ln(2pi)/2
    DD z1 = hurwitz_zeta_deriv_neg(1, 1, 41, 13);  // zeta'(-1)
    DD z2 = hurwitz_zeta_deriv_neg(2, 1, 41, 13);  // zeta'(-2) = -zeta(3)/4pi^2
    double r0 = std::abs(z0.value() + 0.91893853320467274178);
    double r1 = std::abs(z1.value() + 0.16542114370045092921);
    double r2 = std::abs(z2.value() + 0.030448457058393270780251530471);
    std::fprintf(stderr, "zeta' spot checks: %.2e %.2e %.2e\n", r0, r1, r2);
    if (r0 > 1e-15 || r1 > 1e-15 || r2 > 1e-15) return 1;
    if (std::abs(hurwitz_zeta_neg(0, 10).value() - (0.5 - 10.0)) > 1e-14) return 1;
    if (std::abs(hurwitz_zeta_neg(1, 10).value() + (100.0 - 10.0 + 1.0 / 6.0) / 2.0) >
        1e-12)
      return 1;
  }

  std::printf(
      "// Generated by tools/gen_alpert_tables.cpp; do not edit by hand.\n"
      "// {order, n_skipped a, n_aux, chi[], w[]}\n");
  int orders[] = {4, 8, 16};
  int skips[] = {2, 5, 10};
  for (int c = 0; c < 3; ++c) {
    Rule r = build_rule(orders[c], skips[c]);
    validate(r);
    emit(r);
  }
  return 0;
}
