#include "torsionlab/geometry/domain.hpp"

#include <cmath>
#include <numbers>

#include "torsionlab/errors.hpp"

namespace torsionlab::geometry {

namespace {

constexpr int kGridPoints = 1000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_narrow(const NarrowSpec &s) {
  if (!(s.b > s.a)) throw DomainError("narrow domain needs a < b");
  if (!(s.eps > 0.0)) throw DomainError("narrow domain needs eps > 0");
  for (const auto *f : {&s.f1, &s.f2}) {
    if (std::abs((*f)(s.a)) > 1e-12 || std::abs((*f)(s.b)) > 1e-12)
      throw DomainError("boundary functions must vanish at both endpoints");
  }
  for (int i = 0; i <= kGridPoints; ++i) {
    const double x = s.a + (s.b - s.a) * i / kGridPoints;
    if ((i > 0 && i < kGridPoints) && !(s.f2(x) > s.f1(x)))
      throw DomainError("narrow domain needs f2 > f1 inside (a, b)");
    if (s.f1.derivative(x, 2) < -1e-10) throw DomainError("f1 must be convex");
    if (s.f2.derivative(x, 2) > 1e-10) throw DomainError("f2 must be concave");
  }
}

}  // namespace

void validate(const DomainSpec &spec) {
  std::visit(overloaded{
                 [](const TriangleSpec &t) {
                   const double scale = std::max({distance(t.A, t.B), distance(t.B, t.C),
                                                  distance(t.C, t.A)});
                   if (!(scale > 0.0) ||
                       std::abs(cross(t.B - t.A, t.C - t.A)) <= 1e-12 * scale * scale)
                     throw DomainError("triangle vertices are collinear");
                 },
                 [](const NarrowSpec &s) { check_narrow(s); },
                 [](const RectangleSpec &r) {
                   if (!(r.eps > 0.0 && r.eps < 1.0))
                     throw DomainError("rectangle eps must lie in (0, 1)");
                 },
                 [](const EllipseSpec &e) {
                   if (!(e.a_semi > 0.0 && e.b_semi > 0.0))
                     throw DomainError("ellipse semi-axes must be positive");
                 },
                 [](const AnnulusSpec &a) {
                   if (!(a.rho2 > 0.0)) throw DomainError("annulus inner radius must be positive");
                   if (!(a.rho2 + std::abs(a.offset) < a.rho1))
                     throw DomainError("annulus inner disk must lie strictly inside the outer one");
                 },
             },
             spec);
}

std::string type_name(const DomainSpec &spec) {
  static const char *names[] = {"triangle", "narrow", "rectangle", "ellipse", "annulus"};
  return names[spec.index()];
}

double diameter(const DomainSpec &spec) {
  return std::visit(
      overloaded{
          [](const TriangleSpec &t) {
            return std::max({distance(t.A, t.B), distance(t.B, t.C), distance(t.C, t.A)});
          },
          [](const NarrowSpec &s) {
            double hmax = 0.0;
            for (int i = 0; i <= kGridPoints; ++i) {
              const double x = s.a + (s.b - s.a) * i / kGridPoints;
              hmax = std::max(hmax, s.eps * (s.f2(x) - s.f1(x)));
            }
            return std::hypot(s.b - s.a, hmax);
          },
          [](const RectangleSpec &r) { return std::hypot(1.0, 2.0 * r.eps); },
          [](const EllipseSpec &e) { return 2.0 * std::max(e.a_semi, e.b_semi); },
          [](const AnnulusSpec &a) { return 2.0 * a.rho1; },
      },
      spec);
}

double area(const DomainSpec &spec) {
  using std::numbers::pi;
  return std::visit(
      overloaded{
          [](const TriangleSpec &t) { return 0.5 * std::abs(cross(t.B - t.A, t.C - t.A)); },
          [](const NarrowSpec &s) {
            // Exact antiderivative of f2 - f1.
            const auto c = (s.f2.polynomial() - s.f1.polynomial()).coefficients();
            double ia = 0.0, ib = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
              ia += c[k] * std::pow(s.a, k + 1) / static_cast<double>(k + 1);
              ib += c[k] * std::pow(s.b, k + 1) / static_cast<double>(k + 1);
            }
            return s.eps * (ib - ia);
          },
          [](const RectangleSpec &r) { return 2.0 * r.eps; },
          [](const EllipseSpec &e) { return pi * e.a_semi * e.b_semi; },
          [](const AnnulusSpec &a) { return pi * (a.rho1 * a.rho1 - a.rho2 * a.rho2); },
      },
      spec);
}

int side_count(const DomainSpec &spec) {
  static const int counts[] = {3, 2, 4, 1, 2};
  return counts[spec.index()];
}

namespace {

nlohmann::json point_json(const Vec2 &p) { return nlohmann::json::array({p.x, p.y}); }

Vec2 point_from(const nlohmann::json &j, const char *key) {
  const auto &v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw DomainError(std::string("field ") + key + " must be [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const DomainSpec &spec) {
  return std::visit(
      overloaded{
          [](const TriangleSpec &t) {
            return nlohmann::json{{"type", "triangle"},
                                  {"A", point_json(t.A)},
                                  {"B", point_json(t.B)},
                                  {"C", point_json(t.C)}};
          },
          [](const NarrowSpec &s) {
            return nlohmann::json{{"type", "narrow"},           {"a", s.a}, {"b", s.b},
                                  {"f1", s.f1.coefficients()}, {"f2", s.f2.coefficients()},
                                  {"eps", s.eps}};
          },
          [](const RectangleSpec &r) { return nlohmann::json{{"type", "rectangle"}, {"eps", r.eps}}; },
          [](const EllipseSpec &e) {
            return nlohmann::json{{"type", "ellipse"}, {"a_semi", e.a_semi}, {"b_semi", e.b_semi}};
          },
          [](const AnnulusSpec &a) {
            return nlohmann::json{
                {"type", "annulus"}, {"rho1", a.rho1}, {"rho2", a.rho2}, {"offset", a.offset}};
          },
      },
      spec);
}

DomainSpec spec_from_json(const nlohmann::json &j) {
  DomainSpec spec;
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "triangle") {
      spec = TriangleSpec{point_from(j, "A"), point_from(j, "B"), point_from(j, "C")};
    } else if (type == "narrow") {
      spec = NarrowSpec{j.at("a").get<double>(), j.at("b").get<double>(),
                        PolyBoundaryFn(j.at("f1").get<std::vector<double>>()),
                        PolyBoundaryFn(j.at("f2").get<std::vector<double>>()),
                        j.at("eps").get<double>()};
    } else if (type == "rectangle") {
      spec = RectangleSpec{j.at("eps").get<double>()};
    } else if (type == "ellipse") {
      spec = EllipseSpec{j.at("a_semi").get<double>(), j.at("b_semi").get<double>()};
    } else if (type == "annulus") {
      spec = AnnulusSpec{j.at("rho1").get<double>(), j.at("rho2").get<double>(),
                         j.value("offset", 0.0)};
    } else {
      throw DomainError("unknown domain type '" + type + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw DomainError(std::string("malformed domain spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

double curvature_graph(const PolyBoundaryFn &f, double x, double eps, int orientation) {
  const double fp = eps * f.derivative(x, 1);
  const double fpp = eps * f.derivative(x, 2);
  return -static_cast<double>(orientation) * fpp / std::pow(1.0 + fp * fp, 1.5);
}

}  // namespace torsionlab::geometry
