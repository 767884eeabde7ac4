import sympy

from snfy.polyzx import PolyZx

X = sympy.Symbol("x")


def to_sympy(p):
    return sum(c * X**i for i, c in enumerate(p.coeffs))


def from_sympy(expr):
    poly = sympy.Poly(sympy.expand(expr), X)
    return PolyZx(tuple(int(c) for c in reversed(poly.all_coeffs())))


def lin(c):
    return PolyZx((c, 1))


def prod(polys):
    out = PolyZx((1,))
    for p in polys:
        out = out * p
    return out
