#include "torsionlab/exact.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "torsionlab/errors.hpp"

namespace torsionlab::exact {

using geometry::Polynomial;
using std::numbers::pi;

PointValue eval_equilateral_torsion(double x, double y) {
  PointValue v;
  v.value = 0.25 * y * y * y - 0.5 * y * y + 0.25 * y - 0.75 * x * x * y;
  v.gradient = {-1.5 * x * y, 0.75 * y * y - y + 0.25 - 0.75 * x * x};
  v.uxx = -1.5 * y;
  v.uxy = -1.5 * x;
  v.uyy = 1.5 * y - 1.0;
  return v;
}

namespace {

/// cosh(k y) / cosh(k eps) for |y| <= eps without overflow.
double cosh_ratio(double k, double y, double eps) {
  const double ay = std::abs(y);
  return std::exp(k * (ay - eps)) * (1.0 + std::exp(-2.0 * k * ay)) / (1.0 + std::exp(-2.0 * k * eps));
}

}  // namespace

double eval_rectangle_torsion(double eps, double x, double y, int n_terms) {
  double sum = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    const double n = 2.0 * k + 1.0;
    sum += 2.0 / (n * n * n) * std::sin(n * pi * x) * cosh_ratio(n * pi, y, eps);
  }
  return 0.5 * x * (1.0 - x) - 2.0 / (pi * pi * pi) * sum;
}

double rectangle_short_side_gradient(double eps, int n_terms) {
  double sum = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    const double n = 2.0 * k + 1.0;
    sum += 1.0 / (n * n) * cosh_ratio(n * pi, 0.0, eps);
  }
  return 0.5 - 4.0 / (pi * pi) * sum;
}

PointValue eval_ellipse_torsion(double a_semi, double b_semi, double x, double y) {
  const double a2 = a_semi * a_semi, b2 = b_semi * b_semi;
  const double k = a2 * b2 / (2.0 * (a2 + b2));
  PointValue v;
  v.value = k * (1.0 - x * x / a2 - y * y / b2);
  v.gradient = {-2.0 * k * x / a2, -2.0 * k * y / b2};
  v.uxx = -2.0 * k / a2;
  v.uyy = -2.0 * k / b2;
  return v;
}

RadialValue eval_concentric_annulus_torsion(double rho1, double rho2, double r) {
  if (!(0.0 < rho2 && rho2 < rho1)) throw DomainError("concentric annulus needs 0 < rho2 < rho1");
  if (r < rho2 * (1.0 - 1e-14) || r > rho1 * (1.0 + 1e-14))
    throw DomainError("radius outside the annulus");
  const double c = (rho1 * rho1 - rho2 * rho2) / (4.0 * std::log(rho1 / rho2));
  return {(rho1 * rho1 - r * r) / 4.0 + c * std::log(r / rho1), -0.5 * r + c / r, -0.5 - c / (r * r)};
}

NarrowCoefficients narrow_coefficients(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double x) {
  const Polynomial &p1 = f1.polynomial(), &p2 = f2.polynomial();
  const Polynomial a1p = 0.5 * (p1 + p2);
  const Polynomial a2p = -0.5 * (p1 * p2);

  const double g1 = p1(x), g2 = p2(x);
  const double a1 = a1p(x), a1d = a1p.derivative_at(x, 1), a1dd = a1p.derivative_at(x, 2);
  const double a2 = a2p(x), a2d = a2p.derivative_at(x, 1), a2dd = a2p.derivative_at(x, 2);

  NarrowCoefficients c;
  c.a1 = a1;
  c.a2 = a2;
  c.a3 = a1dd * (g1 * g1 + g1 * g2 + g2 * g2) / 6.0 + 0.5 * a2dd * (g1 + g2);
  c.a4 = g1 * g1 * g1 * a1dd / 6.0 + 0.5 * a2dd * g1 * g1 - c.a3 * g1;
  c.lambda1 = 0.25 * (g2 - g1) * (g2 - g1);
  auto lambda2 = [&](double fk) {
    const double t = a1d * fk + a2d;
    return t * t + (fk - a1) * (fk * fk * a1dd + 2.0 * fk * a2dd - 2.0 * c.a3);
  };
  c.lambda2_lower = lambda2(g1);
  c.lambda2_upper = lambda2(g2);
  return c;
}

double narrow_predicted_gradient_sq(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double eps,
                                    double x, Side side) {
  const auto c = narrow_coefficients(f1, f2, x);
  const double l2 = side == Side::lower ? c.lambda2_lower : c.lambda2_upper;
  return eps * eps * c.lambda1 + eps * eps * eps * eps * l2;
}

GapLeadingTerm gap_leading_term(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double a, double b) {
  const Polynomial gap = f2.polynomial() - f1.polynomial();
  const Polynomial slope = gap.derivative();

  constexpr int kGrid = 1000;
  int changes = 0;
  double lo = a, hi = b;
  double last_sign = 0.0, last_x = a;
  for (int i = 1; i < kGrid; ++i) {
    const double x = a + (b - a) * i / kGrid;
    const double v = slope(x);
    if (v == 0.0) continue;
    const double sgn = v > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && sgn != last_sign) {
      ++changes;
      lo = last_x;
      hi = x;
    }
    last_sign = sgn;
    last_x = x;
  }
  if (changes == 0 && last_sign == 0.0) throw DomainError("f2 - f1 is constant; no thickest cross-section");
  if (changes != 1 || slope(lo) < 0.0)
    throw DomainError(
        "f2 - f1 has no unique interior maximiser; the fail-point statement is set-valued here");

  std::uintmax_t max_iter = 200;
  const auto [r0, r1] = boost::math::tools::toms748_solve(
      [&](double x) { return slope(x); }, lo, hi,
      [](double u, double v) { return std::abs(u - v) <= 1e-14; }, max_iter);
  double z0 = 0.5 * (r0 + r1);
  if (std::abs(slope(z0)) > 1e-12) z0 = std::abs(slope(r0)) < std::abs(slope(r1)) ? r0 : r1;

  const double width = gap(z0);
  const double curv = f1.derivative(z0, 2) + f2.derivative(z0, 2);
  return {z0, curv * width * width * width / 12.0};
}

Poly2 Poly2::constant(double c) {
  Poly2 p;
  if (c != 0.0) p.terms_[{0, 0}] = c;
  return p;
}

Poly2 Poly2::x() {
  Poly2 p;
  p.terms_[{1, 0}] = 1.0;
  return p;
}

Poly2 Poly2::y() {
  Poly2 p;
  p.terms_[{0, 1}] = 1.0;
  return p;
}

double Poly2::operator()(double x, double y) const {
  double v = 0.0;
  for (const auto &[e, c] : terms_) v += c * std::pow(x, e.first) * std::pow(y, e.second);
  return v;
}

Poly2 Poly2::dx() const {
  Poly2 p;
  for (const auto &[e, c] : terms_)
    if (e.first > 0) p.terms_[{e.first - 1, e.second}] += c * e.first;
  return p;
}

Poly2 Poly2::dy() const {
  Poly2 p;
  for (const auto &[e, c] : terms_)
    if (e.second > 0) p.terms_[{e.first, e.second - 1}] += c * e.second;
  return p;
}

double Poly2::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

Poly2 &Poly2::operator+=(const Poly2 &o) {
  for (const auto &[e, c] : o.terms_) terms_[e] += c;
  return *this;
}

Poly2 &Poly2::operator*=(double s) {
  for (auto &[e, c] : terms_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2 &a, const Poly2 &b) {
  Poly2 p;
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) p.terms_[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return p;
}

Poly2 barrier_polynomial() {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 one_minus_y = Poly2::constant(1.0) - y;
  const double s3 = std::sqrt(3.0);
  const Poly2 bracket = 1.5 * (one_minus_y * one_minus_y) - 4.5 * (x * x) +
                        one_minus_y * one_minus_y * one_minus_y - 3.0 * s3 * (x * x * x);
  return 0.125 * (x * y * bracket);
}

BarrierValue barrier_g(double x, double y) {
  static const Poly2 g = barrier_polynomial();
  static const Poly2 lap = g.laplacian();
  const double s3 = std::sqrt(3.0);
  const double target = 1.5 * x + 1.5 * x * y * y + 4.5 * s3 * x * x * y;
  return {g(x, y), -lap(x, y) - target, g.coefficient(1, 1)};
}

double v1_rhs(Family family, double x, double y) {
  if (family == Family::stretch) return 1.5 * std::sqrt(3.0) * y - 1.5 * x;
  return 3.0 * x;
}

}  // namespace torsionlab::exact
