"""Sparse polynomials in x_0..x_{n+1} over cyclotomic coefficients, and the Fermat Jacobian ring.

For F = sum x_i^d the Jacobian ideal is the monomial ideal <x_i^{d-1}>, so reduction
to R^F just drops monomials and colon computations become linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .characters import FermatContext
from .cyclotomic import CycloNum

Exps = tuple[int, ...]
Scalar = Union[int, Fraction, CycloNum]


def _as_cyclo(c: Scalar) -> CycloNum:
    return c if isinstance(c, CycloNum) else CycloNum.rational(c)


def grlex_key(exps: Exps) -> tuple:
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Scalar] | Iterable[tuple[Exps, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exps, CycloNum] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {nvars} variables")
            c = _as_cyclo(c)
            acc[exps] = acc[exps] + c if exps in acc else c
        self.nvars = nvars
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def var(cls, nvars: int, i: int, coeff: Scalar = 1) -> Poly:
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1) -> Poly:
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous polynomial."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def coeff(self, exps: Sequence[int]) -> CycloNum:
        return self.terms.get(tuple(exps), CycloNum.rational(0))

    def sorted_terms(self) -> list[tuple[Exps, CycloNum]]:
        """Terms in graded-lex order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # arithmetic

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Poly(self.nvars, terms)

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if isinstance(other, Poly):
            acc: dict[Exps, CycloNum] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    acc[e] = acc[e] + c if e in acc else c
            return Poly(self.nvars, acc)
        if isinstance(other, (int, Fraction, CycloNum)):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and (self - other).is_zero()

    __hash__ = None

    def diff(self, i: int) -> Poly:
        """Formal partial derivative with respect to x_i."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def shift(self, exps: Sequence[int]) -> Poly:
        """Multiply by the monomial x^exps."""
        return Poly(self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def map_coeffs(self, fn) -> Poly:
        return Poly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            coeff = str(c)
            if not mono:
                parts.append(f"({coeff})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def monomials(nvars: int, deg: int, max_exp: int | None = None) -> tuple[Exps, ...]:
    """Exponent vectors of total degree deg, graded-lex descending; optional per-variable cap."""
    if deg < 0:
        return ()
    cap = deg if max_exp is None else min(deg, max_exp)
    out: list[Exps] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            if left <= cap:
                out.append(tuple(prefix + [left]))
            return
        for k in range(min(left, cap), -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    if nvars == 0:
        return ((),) if deg == 0 else ()
    rec([], deg, nvars)
    return tuple(out)


def jacobian_basis(ctx: FermatContext, deg: int) -> tuple[Exps, ...]:
    """Monomial basis of R^F in degree deg (all exponents at most d-2)."""
    return monomials(ctx.nvars, deg, ctx.d - 2)


def fermat(ctx: FermatContext) -> Poly:
    terms = {}
    for i in range(ctx.nvars):
        e = [0] * ctx.nvars
        e[i] = ctx.d
        terms[tuple(e)] = 1
    return Poly(ctx.nvars, terms)


def in_jacobian(exps: Exps, d: int) -> bool:
    return any(k >= d - 1 for k in exps)


def reduce_mod_jacobian(p: Poly, ctx: FermatContext) -> Poly:
    """Canonical representative in R^F: drop every monomial with an exponent >= d-1."""
    return Poly(p.nvars, {e: c for e, c in p.terms.items() if not in_jacobian(e, ctx.d)})


def jacobian_decompose(w: Poly, ctx: FermatContext) -> list[Poly]:
    """Q_0..Q_{n+1} with w = sum Q_i * d * x_i^{d-1}, each monomial charged to its smallest eligible index."""
    d = ctx.d
    parts: list[dict[Exps, CycloNum]] = [{} for _ in range(ctx.nvars)]
    for e, c in w.terms.items():
        for i, k in enumerate(e):
            if k >= d - 1:
                f = list(e)
                f[i] -= d - 1
                parts[i][tuple(f)] = c / d
                break
        else:
            raise ValueError(f"monomial {e} is not in the Jacobian ideal")
    return [Poly(ctx.nvars, q) for q in parts]


def recombine(qs: Sequence[Poly], ctx: FermatContext) -> Poly:
    """sum Q_i * dF/dx_i."""
    out = Poly(ctx.nvars)
    for i, q in enumerate(qs):
        e = [0] * ctx.nvars
        e[i] = ctx.d - 1
        out = out + q.shift(e) * ctx.d
    return out


def linear_form(ctx: FermatContext, j: int, c: CycloNum) -> Poly:
    """x_{2j-2} - c * x_{2j-1} for pair index j in 1..n/2+1."""
    a, b = 2 * j - 2, 2 * j - 1
    return Poly.var(ctx.nvars, a) - Poly.var(ctx.nvars, b, c)


def pair_factor(ctx: FermatContext, j: int, c: CycloNum) -> Poly:
    """(x_a^{d-1} - (c x_b)^{d-1}) / (x_a - c x_b) = sum_k x_a^{d-2-k} (c x_b)^k."""
    a, b = 2 * j - 2, 2 * j - 1
    d = ctx.d
    terms = {}
    power = CycloNum.rational(1)
    for k in range(d - 1):
        e = [0] * ctx.nvars
        e[a] = d - 2 - k
        e[b] = k
        terms[tuple(e)] = power
        power = power * c
    return Poly(ctx.nvars, terms)


def divide_linear(g: Poly, ctx: FermatContext, j: int, c: CycloNum) -> Poly | None:
    """Exact quotient g / (x_a - c x_b), or None if the linear form does not divide g."""
    a, b = 2 * j - 2, 2 * j - 1
    remaining = dict(g.terms)
    quotient: dict[Exps, CycloNum] = {}
    # peel off the term with the highest x_a power each time
    while remaining:
        e = max(remaining, key=lambda x: (x[a], grlex_key(x)))
        coeff = remaining.pop(e)
        if e[a] == 0:
            return None
        f = list(e)
        f[a] -= 1
        f = tuple(f)
        quotient[f] = quotient.get(f, CycloNum.rational(0)) + coeff
        h = list(f)
        h[b] += 1
        h = tuple(h)
        nxt = remaining.get(h, CycloNum.rational(0)) + coeff * c
        if nxt:
            remaining[h] = nxt
        else:
            remaining.pop(h, None)
    return Poly(g.nvars, quotient)


def hilbert_series_coeff(nvars: int, cap: int, deg: int) -> int:
    """Coefficient of t^deg in ((1 - t^(cap+1)) / (1 - t))^nvars."""
    coeffs = [1]
    for _ in range(nvars):
        nxt = [0] * (len(coeffs) + cap)
        for i, c in enumerate(coeffs):
            for k in range(cap + 1):
                nxt[i + k] += c
        coeffs = nxt
    return coeffs[deg] if 0 <= deg < len(coeffs) else 0


def build_P_lambda(spec) -> Poly:
    """c_lambda * prod_j pair_factor(j); spec carries ctx, c and c_lambda."""
    if spec.c_lambda is None or spec.c_lambda.is_zero():
        raise ValueError("c_lambda must be set and nonzero")
    ctx = spec.ctx
    out = Poly.constant(ctx.nvars, spec.c_lambda)
    for j, cj in enumerate(spec.c, start=1):
        out = out * pair_factor(ctx, j, cj)
    return out
