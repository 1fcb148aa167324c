"""Degree-r piece of the quadratic fundamental form of the Hodge locus at the Fermat point.

Classes live in R^F_r modulo the image of multiplication by P_lambda from S_d; reducing
modulo J^F first is equivalent to working in S_r / (J^F + <P_lambda>)_r and much smaller.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .candidate import FakeCycleSpec
from .cyclotomic import CycloNum
from .fake_cycles import is_true_linear
from .linalg import Echelon, Row, rref
from .polyring import (
    Exps,
    Poly,
    build_P_lambda,
    divide_linear,
    jacobian_basis,
    jacobian_decompose,
    linear_form,
    monomials,
    pair_factor,
    reduce_mod_jacobian,
)

STRATEGIES = ("smallest", "paired")


class QuotientSpace:
    """R^F_r / (P_lambda * S_{r - deg P}) with a fixed complement basis of monomials."""

    def __init__(self, spec: FakeCycleSpec):
        self.spec = spec
        ctx = spec.ctx
        self.degree = ctx.critical_degree
        self.P = build_P_lambda(spec)
        self.basis = list(jacobian_basis(ctx, self.degree))
        self.index = {m: i for i, m in enumerate(self.basis)}
        rows = []
        for mono in monomials(ctx.nvars, self.degree - self.P.degree()):
            rows.append(self.vector(self.P.shift(mono)))
        self.echelon: Echelon = rref(rows, len(self.basis))
        pivots = set(self.echelon.pivots)
        self.complement = [m for i, m in enumerate(self.basis) if i not in pivots]

    def vector(self, p: Poly) -> Row:
        red = reduce_mod_jacobian(p, self.spec.ctx)
        return {self.index[e]: c for e, c in red.terms.items()}

    def coordinates(self, p: Poly) -> list[CycloNum]:
        rem = self.echelon.reduce(self.vector(p))
        zero = CycloNum.rational(0, self.spec.conductor)
        return [rem.get(self.index[m], zero) for m in self.complement]

    def is_zero(self, p: Poly) -> bool:
        return not self.echelon.reduce(self.vector(p))


@dataclass
class QFormResult:
    raw: Poly
    coordinates: list[CycloNum]
    complement: list[Exps]

    @property
    def vanishes(self) -> bool:
        return not any(self.coordinates)


def in_tangent_space(G: Poly, spec: FakeCycleSpec, P: Poly | None = None) -> bool:
    P = build_P_lambda(spec) if P is None else P
    return reduce_mod_jacobian(G * P, spec.ctx).is_zero()


def decompose_product(G: Poly, spec: FakeCycleSpec, strategy: str = "smallest", P: Poly | None = None) -> list[Poly]:
    """Q_i with G * P_lambda = sum Q_i dF/dx_i.

    'paired' looks for a linear form x_{2i-2} - c x_{2i-1} dividing G and splits the
    telescoped product inside that pair; otherwise it falls back to 'smallest'.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    ctx = spec.ctx
    P = build_P_lambda(spec) if P is None else P
    if strategy == "paired":
        for i, ci in enumerate(spec.c, start=1):
            D = divide_linear(G, ctx, i, ci)
            if D is None:
                continue
            rest = Poly.constant(ctx.nvars, spec.c_lambda)
            for j, cj in enumerate(spec.c, start=1):
                if j != i:
                    rest = rest * pair_factor(ctx, j, cj)
            U = rest * D * Fraction(1, ctx.d)
            qs = [Poly(ctx.nvars) for _ in range(ctx.nvars)]
            qs[2 * i - 2] = U
            qs[2 * i - 1] = U * (-(ci ** (ctx.d - 1)))
            return qs
    return jacobian_decompose(G * P, ctx)


def qr_raw(G: Poly, H: Poly, spec: FakeCycleSpec, strategy: str = "smallest") -> Poly:
    ctx = spec.ctx
    P = build_P_lambda(spec)
    for name, X in (("G", G), ("H", H)):
        if not in_tangent_space(X, spec, P):
            raise ValueError(f"{name} is not in the tangent space (J^F : P_lambda)_d")
        if X and X.degree() != ctx.d:
            raise ValueError(f"{name} must be homogeneous of degree d={ctx.d}")
    Q = decompose_product(G, spec, strategy, P)
    R = decompose_product(H, spec, strategy, P)
    out = Poly(ctx.nvars)
    for i in range(ctx.nvars):
        out = out + H * Q[i].diff(i) - R[i] * G.diff(i)
    return out


def qr(G: Poly, H: Poly, spec: FakeCycleSpec, strategy: str = "smallest", space: QuotientSpace | None = None) -> QFormResult:
    raw = qr_raw(G, H, spec, strategy)
    space = QuotientSpace(spec) if space is None else space
    return QFormResult(raw, space.coordinates(raw), space.complement)


def qr_closed_form(i: int, D: Poly, spec: FakeCycleSpec) -> Poly:
    """(-c_lambda / d) prod_{j != i} pair_factor(j) * D^2 * (c_{2i-2}^d + 1)."""
    ctx = spec.ctx
    if not 1 <= i <= ctx.half:
        raise ValueError(f"pair index must lie in 1..{ctx.half}")
    ci = spec.c[i - 1]
    scalar = -spec.c_lambda / ctx.d * (ci**ctx.d + 1)
    out = Poly.constant(ctx.nvars, scalar)
    for j, cj in enumerate(spec.c, start=1):
        if j != i:
            out = out * pair_factor(ctx, j, cj)
    return out * D * D


def tangent_vector(spec: FakeCycleSpec, i: int, D: Poly) -> Poly:
    return linear_form(spec.ctx, i, spec.c[i - 1]) * D


def candidate_multipliers(spec: FakeCycleSpec) -> Iterator[Poly]:
    """Degree d-1 polynomials, small witnesses first.

    Order: monomials whose square avoids J^F, then two-monomial sums whose cross term
    avoids J^F, then every remaining two-monomial sum.
    """
    ctx = spec.ctx
    cap = ctx.d - 2
    monos = monomials(ctx.nvars, ctx.d - 1)
    for m in monos:
        if 2 * max(m) <= cap:
            yield Poly.monomial(m)
    late = []
    for a, b in itertools.combinations(monos, 2):
        if max(x + y for x, y in zip(a, b)) <= cap:
            yield Poly.monomial(a) + Poly.monomial(b)
        else:
            late.append((a, b))
    for a, b in late:
        yield Poly.monomial(a) + Poly.monomial(b)


@dataclass
class NonReducedWitness:
    pair: int
    D: Poly
    result: QFormResult
    tried: int


class WitnessNotFound(RuntimeError):
    def __init__(self, message: str, candidates: Sequence[str] = ()):
        super().__init__(message)
        self.candidates = list(candidates)


def nonreduced_witness(spec: FakeCycleSpec, limit: int | None = None) -> NonReducedWitness:
    """First (i, D) in candidate order with q_r(l_i D, l_i D) nonzero in the quotient."""
    ctx = spec.ctx
    if spec.c_lambda is None:
        raise ValueError("c_lambda must be set")
    if is_true_linear(spec):
        raise WitnessNotFound("every c_{2i-2}^d = -1, so the closed form vanishes for all i and D")
    space = QuotientSpace(spec)
    pairs = [i for i, ci in enumerate(spec.c, start=1) if ci**ctx.d != -1]
    tried: list[str] = []
    for D in candidate_multipliers(spec):
        for i in pairs:
            G = tangent_vector(spec, i, D)
            res = qr(G, G, spec, "paired", space)
            tried.append(f"pair {i}: {D}")
            if not res.vanishes:
                return NonReducedWitness(i, D, res, len(tried))
            if limit is not None and len(tried) >= limit:
                raise WitnessNotFound(f"no witness among the first {limit} candidates", tried)
    raise WitnessNotFound("candidate list exhausted", tried)
