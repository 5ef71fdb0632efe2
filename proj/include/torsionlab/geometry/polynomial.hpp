#pragma once

#include <span>
#include <vector>

namespace torsionlab::geometry {

/// Dense univariate polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  const std::vector<double> &coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double x) const;
  Polynomial derivative(int order = 1) const;
  /// Value of the `order`-th derivative at x.
  double derivative_at(double x, int order) const;

  Polynomial &operator+=(const Polynomial &o);
  Polynomial &operator-=(const Polynomial &o);
  Polynomial &operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);

 private:
  std::vector<double> coeffs_;
};

/// Boundary profile f in y = eps * f(x); polynomial of degree at most 8.
class PolyBoundaryFn {
 public:
  static constexpr int kMaxDegree = 8;

  PolyBoundaryFn() = default;
  /// Throws DomainError for an empty coefficient list or degree > 8.
  explicit PolyBoundaryFn(std::vector<double> coefficients);

  double operator()(double x) const { return poly_(x); }
  double derivative(double x, int order) const { return poly_.derivative_at(x, order); }
  const Polynomial &polynomial() const { return poly_; }
  const std::vector<double> &coefficients() const { return poly_.coefficients(); }

  PolyBoundaryFn operator-() const;

 private:
  Polynomial poly_;
};

}  // namespace torsionlab::geometry
