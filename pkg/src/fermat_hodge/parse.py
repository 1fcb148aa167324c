"""Parsing of user-supplied scalars (in z = zeta_m) and polynomials (in x0, x1, ...)."""

from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .cyclotomic import CycloNum
from .polyring import Poly

_ALLOWED = re.compile(r"^[\sxz0-9+\-*/^().]*$")


class ParseError(ValueError):
    pass


def _sympify(text: str, names: dict[str, sympy.Symbol]) -> sympy.Expr:
    if not _ALLOWED.match(text):
        raise ParseError(f"unexpected characters in {text!r}")
    try:
        return sympy.sympify(text.replace("^", "**"), locals=names, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from None


def _cyclo_from_poly(p: sympy.Poly, z: sympy.Symbol, m: int) -> CycloNum:
    out = CycloNum.rational(0, m)
    for (k,), c in p.terms():
        out = out + CycloNum.zeta(m, k) * Fraction(int(c.p), int(c.q))
    return out


def parse_scalar(text: str, m: int) -> CycloNum:
    """A rational function of z, read with z = zeta_m."""
    z = sympy.Symbol("z")
    expr = sympy.together(_sympify(text, {"z": z}))
    if expr.free_symbols - {z}:
        raise ParseError(f"only the symbol z may appear in {text!r}")
    num, den = sympy.fraction(expr)
    try:
        pn = sympy.Poly(num, z, domain="QQ")
        pd = sympy.Poly(den, z, domain="QQ")
    except sympy.PolynomialError as exc:
        raise ParseError(f"{text!r} is not a rational function of z: {exc}") from None
    if any(e < 0 for (e,) in pn.monoms() + pd.monoms()):
        raise ParseError(f"negative powers of z in {text!r}")
    den_value = _cyclo_from_poly(pd, z, m)
    if den_value.is_zero():
        raise ParseError(f"denominator of {text!r} vanishes at zeta_{m}")
    return _cyclo_from_poly(pn, z, m) / den_value


def parse_poly(text: str, nvars: int, m: int) -> Poly:
    """A polynomial in x0..x{nvars-1} whose coefficients are polynomials in z = zeta_m."""
    xs = sympy.symbols(f"x0:{nvars}")
    z = sympy.Symbol("z")
    names = {str(x): x for x in xs}
    names["z"] = z
    expr = _sympify(text, names)
    extra = expr.free_symbols - set(xs) - {z}
    if extra:
        raise ParseError(f"unknown symbols {sorted(map(str, extra))}; variables are x0..x{nvars - 1}")
    try:
        p = sympy.Poly(sympy.expand(expr), *xs, z, domain="QQ")
    except sympy.PolynomialError as exc:
        raise ParseError(f"{text!r} is not a polynomial: {exc}") from None
    out = Poly(nvars)
    for monom, c in p.terms():
        *exps, k = monom
        out = out + Poly.monomial(exps, CycloNum.zeta(m, k) * Fraction(int(c.p), int(c.q)))
    return out
