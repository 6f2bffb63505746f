#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fsv/errors.hpp"

namespace fsv {

struct QuadNodes {
  std::vector<double> x;  // abscissae
  std::vector<double> w;  // weights
};

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
inline QuadNodes gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n >= 1 required");
  QuadNodes out;
  out.x.resize(n);
  out.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    out.x[i] = -z;
    out.x[n - 1 - i] = z;
    out.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    out.w[n - 1 - i] = out.w[i];
  }
  return out;
}

/// Same nodes mapped onto [a, b].
inline QuadNodes gauss_legendre(int n, double a, double b) {
  QuadNodes g = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    g.x[i] = mid + half * g.x[i];
    g.w[i] *= half;
  }
  return g;
}

template <class F>
double integrate_nodes(const F& f, const QuadNodes& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(g.x[i]);
  return s;
}

namespace detail {

// Gauss7/Kronrod15 panel; err is the usual scaled discrepancy estimate.
template <class F>
double quad_g7k15(const F& f, double a, double b, double& err) {
  static const double nw[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529}};
  const double x0 = 0.5 * (a + b), h = 0.5 * (b - a);
  double y0 = f(x0);
  double g7 = nw[0][1] * y0, k15 = nw[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    double dx = h * nw[i][0];
    double yi = f(x0 + dx) + f(x0 - dx);
    g7 += nw[i][1] * yi;
    k15 += nw[i][2] * yi;
  }
  g7 *= h;
  k15 *= h;
  err = std::abs(g7 - k15);
  err = 200.0 * err * std::sqrt(200.0 * err);
  return k15;
}

template <class F>
double adaptive_rec(const F& f, double a, double b, double tol, int depth, int max_depth) {
  double err = 0.0;
  double v = quad_g7k15(f, a, b, err);
  if (err <= tol || depth >= max_depth) return v;
  double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, tol * 0.5, depth + 1, max_depth) +
         adaptive_rec(f, m, b, tol * 0.5, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive quadrature on [a, b]; tol is an absolute error target.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
  if (!(b >= a)) throw DomainError("integrate_adaptive: b >= a required");
  if (a == b) return 0.0;
  return detail::adaptive_rec(f, a, b, tol, 0, max_depth);
}

}  // namespace fsv
