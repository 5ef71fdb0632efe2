#include "torsionlab/geometry/polynomial.hpp"

#include <algorithm>

#include "torsionlab/errors.hpp"

namespace torsionlab::geometry {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<double> c = coeffs_;
  for (int k = 0; k < order; ++k) {
    if (c.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    c = std::move(d);
  }
  return Polynomial(std::move(c));
}

double Polynomial::derivative_at(double x, int order) const {
  // Horner on falling-factorial-weighted coefficients.
  const int n = static_cast<int>(coeffs_.size());
  double acc = 0.0;
  for (int i = n - 1; i >= order; --i) {
    double w = 1.0;
    for (int j = 0; j < order; ++j) w *= static_cast<double>(i - j);
    acc = acc * x + w * coeffs_[i];
  }
  return acc;
}

Polynomial &Polynomial::operator+=(const Polynomial &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Polynomial &Polynomial::operator*=(double s) {
  for (auto &c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

PolyBoundaryFn::PolyBoundaryFn(std::vector<double> coefficients) {
  if (coefficients.empty()) throw DomainError("boundary polynomial needs at least one coefficient");
  // Trailing zeros do not count towards the degree.
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (static_cast<int>(coefficients.size()) - 1 > kMaxDegree)
    throw DomainError("boundary polynomial degree exceeds 8");
  poly_ = Polynomial(std::move(coefficients));
}

PolyBoundaryFn PolyBoundaryFn::operator-() const {
  std::vector<double> c = poly_.coefficients();
  std::ranges::transform(c, c.begin(), [](double v) { return -v; });
  return PolyBoundaryFn(std::move(c));
}

}  // namespace torsionlab::geometry
