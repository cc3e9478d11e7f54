#pragma once

#include "sosm/common.hpp"

#include <cmath>
#include <vector>

namespace sosm {

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  int size() const { return static_cast<int>(x.size()); }
};

/// n-point Gauss-Legendre rule on [0, 1], exact for polynomials of
/// degree 2n-1. Nodes found by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error("gauss_legendre: need n >= 1");
  GaussLegendre rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess on [-1, 1].
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    p0 = 1.0;
    p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.x[i] = 0.5 * (1.0 - t);
    rule.x[n - 1 - i] = 0.5 * (1.0 + t);
    rule.w[i] = 0.5 * w;
    rule.w[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

/// Quadrature on the reference triangle {(0,0), (1,0), (0,1)}.
///
/// Points are stored in reference coordinates; the barycentric
/// coordinates of point (x, y) are (1-x-y, x, y). Weights are positive
/// and sum to the reference area 1/2. The rule is a collapsed
/// Gauss-Legendre product (Duffy transform), exact for all polynomials
/// up to the requested degree.
class QuadratureRule {
 public:
  static QuadratureRule for_exactness(int degree) {
    if (degree < 0) throw Error("QuadratureRule: negative exactness");
    int n = (degree + 3) / 2;  // ceil((degree + 2) / 2)
    GaussLegendre gl = gauss_legendre(n);
    QuadratureRule rule;
    rule.exactness_ = degree;
    rule.points_.reserve(n * n);
    rule.weights_.reserve(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double u = gl.x[i];
        double v = gl.x[j];
        rule.points_.emplace_back(u, v * (1.0 - u));
        rule.weights_.push_back(gl.w[i] * gl.w[j] * (1.0 - u));
      }
    }
    return rule;
  }

  int size() const { return static_cast<int>(points_.size()); }
  const Vec2& point(int q) const { return points_[q]; }
  double weight(int q) const { return weights_[q]; }
  int exactness() const { return exactness_; }

  /// Barycentric coordinates of quadrature point q.
  Eigen::Vector3d barycentric(int q) const {
    const Vec2& p = points_[q];
    return {1.0 - p.x() - p.y(), p.x(), p.y()};
  }

 private:
  QuadratureRule() = default;
  std::vector<Vec2> points_;
  std::vector<double> weights_;
  int exactness_ = 0;
};

/// Shifted Legendre polynomial P_m(2s - 1) on [0, 1]; used for facet
/// moment degrees of freedom.
inline double shifted_legendre(int m, double s) {
  double t = 2.0 * s - 1.0;
  switch (m) {
    case 0: return 1.0;
    case 1: return t;
    case 2: return 0.5 * (3.0 * t * t - 1.0);
    default: {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      return p1;
    }
  }
}

}  // namespace sosm
