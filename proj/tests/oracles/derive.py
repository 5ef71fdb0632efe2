"""Independent reference values for the test suite.

Regenerate with `python3 tests/oracles/derive.py > tests/oracle_values.hpp`.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 30
x, y, Y, eps, r = sp.symbols("x y Y eps r", real=True)


def narrow(f1, f2, x0):
    """|grad u|^2 = eps^2 l1 + eps^4 l2 on each graph, from the hierarchy in Y = y/eps."""
    phi0 = (Y - f1) * (f2 - Y) / 2
    c1, c2 = sp.symbols("c1 c2")
    phi1 = -sp.integrate(sp.integrate(sp.diff(phi0, x, 2), Y), Y) + c1 * Y + c2
    sol = sp.solve([phi1.subs(Y, f1), phi1.subs(Y, f2)], [c1, c2])
    phi1 = phi1.subs(sol)
    out = {}
    for name, f in (("lower", f1), ("upper", f2)):
        py0 = sp.diff(phi0, Y).subs(Y, f)
        py1 = sp.diff(phi1, Y).subs(Y, f)
        px0 = sp.diff(phi0, x).subs(Y, f)
        l1 = sp.simplify(py0**2)
        l2 = sp.simplify(2 * py0 * py1 + px0**2)
        out[name] = (sp.N(l1.subs(x, x0), 20), sp.N(l2.subs(x, x0), 20))
    return out


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(mp.mpf(str(value)), 20)};")


print("#pragma once\n")
print("// Generated by tests/oracles/derive.py; do not edit.\n")
print("namespace oracle {\n")

sym_f1, sym_f2 = -(1 - x**2), 1 - x**2
res = narrow(sym_f1, sym_f2, 0)
emit("kSymLambda1", res["lower"][0])
emit("kSymLambda2Lower", res["lower"][1])
emit("kSymLambda2Upper", res["upper"][1])

tie_f1, tie_f2 = -(1 - x**2) / 2, 1 - x**2
res = narrow(tie_f1, tie_f2, 0)
emit("kTieLambda2Lower", res["lower"][1])
emit("kTieLambda2Upper", res["upper"][1])
emit("kTieGap", res["upper"][1] - res["lower"][1])

asym_f1, asym_f2 = -(1 - x**2), (1 - x**2) * (1 + sp.Rational(3, 10) * x)
z0 = sp.nsolve(sp.diff(asym_f2 - asym_f1, x), x, 0.07, prec=25)
emit("kAsymZ0", z0)
res = narrow(asym_f1, asym_f2, z0)
emit("kAsymLambda1", res["lower"][0])
emit("kAsymLambda2Lower", res["lower"][1])
emit("kAsymLambda2Upper", res["upper"][1])
emit("kAsymGap", res["upper"][1] - res["lower"][1])
res = narrow(asym_f1, asym_f2, sp.Rational(3, 10))
emit("kAsymLambda2LowerAt03", res["lower"][1])
emit("kAsymLambda2UpperAt03", res["upper"][1])

# ellipse: u = C (1 - x^2/a^2 - y^2/b^2)
a, b, C = sp.symbols("a b C", positive=True)
u = C * (1 - x**2 / a**2 - y**2 / b**2)
Cval = sp.solve(sp.Eq(-(sp.diff(u, x, 2) + sp.diff(u, y, 2)), 1), C)[0]
u = u.subs(C, Cval)
for e, tag in ((sp.Rational(1, 10), "01"), (sp.Rational(1, 20), "005")):
    ue = u.subs({a: 1, b: e})
    emit(f"kEllipseEndpoint{tag}", sp.N(-sp.diff(ue, x).subs({x: 1, y: 0}), 25))
    emit(f"kEllipseFlat{tag}", sp.N(-sp.diff(ue, y).subs({x: 0, y: e}), 25))

# concentric annulus, radial ODE
A, B = sp.symbols("A B")
ur = -r**2 / 4 + A * sp.log(r) + B
sol = sp.solve([ur.subs(r, 1), ur.subs(r, sp.Rational(3, 10))], [A, B])
ur = ur.subs(sol)
emit("kAnnulusInnerFlux", sp.N(sp.diff(ur, r).subs(r, sp.Rational(3, 10)), 25))
emit("kAnnulusOuterFlux", sp.N(-sp.diff(ur, r).subs(r, 1), 25))

# equilateral (+-sqrt(3)/3, 0), (0, 1): product of the three side lines
K = sp.symbols("K")
s3 = sp.sqrt(3)
v = K * y * (1 - y - s3 * x) * (1 - y + s3 * x)
Kval = sp.solve(sp.Eq(sp.simplify(-(sp.diff(v, x, 2) + sp.diff(v, y, 2))), 1), K)[0]
v = v.subs(K, Kval)
emit("kEquilateralFluxOrigin", sp.N(sp.diff(v, y).subs({x: 0, y: 0}), 25))
emit("kEquilateralFlux03", sp.N(sp.diff(v, y).subs({x: sp.Rational(3, 10), y: 0}), 25))
emit("kEquilateralCentre", sp.N(v.subs({x: 0, y: sp.Rational(1, 3)}), 25))


# rectangle [0,1] x [-e, e] by cosine modes across the gap
def rect_short_side(e):
    e = mp.mpf(e)

    def term(m):
        k = (2 * m + 1) * mp.pi / (2 * e)
        bm = 4 * (-1) ** int(m) / ((2 * m + 1) * mp.pi)
        return bm / k * mp.tanh(k / 2)

    return mp.nsum(term, [0, mp.inf])


def rect_value(e, px, py):
    e = mp.mpf(e)

    def term(m):
        k = (2 * m + 1) * mp.pi / (2 * e)
        bm = 4 * (-1) ** int(m) / ((2 * m + 1) * mp.pi)
        return bm / k**2 * (1 - mp.cosh(k * (px - mp.mpf(1) / 2)) / mp.cosh(k / 2)) * mp.cos(k * py)

    return mp.nsum(term, [0, mp.inf])


emit("kRectangleShortSide02", rect_short_side("0.2"))
emit("kRectangleShortSide01", rect_short_side("0.1"))
emit("kRectangleShortSide005", rect_short_side("0.05"))
emit("kRectangleCentre02", rect_value("0.2", mp.mpf("0.5"), 0))
emit("kRectangleValue02", rect_value("0.2", mp.mpf("0.3"), mp.mpf("0.1")))

# barrier for the half-triangle problem
g = sp.Rational(1, 8) * x * y * (sp.Rational(3, 2) * (1 - y) ** 2 - sp.Rational(9, 2) * x**2 + (1 - y) ** 3 - 3 * s3 * x**3)
emit("kBarrierXY", sp.N(sp.diff(g, x, y).subs({x: 0, y: 0}), 25))
residual = sp.expand(-(sp.diff(g, x, 2) + sp.diff(g, y, 2)) - (sp.Rational(3, 2) * x + sp.Rational(3, 2) * x * y**2 + sp.Rational(9, 2) * s3 * x**2 * y))
emit("kBarrierResidualNorm", sp.N(sum(abs(c) for c in sp.Poly(residual, x, y).coeffs()) if residual != 0 else 0, 25))

print("\n}  // namespace oracle")
