"""The colon ideal (J^F : P) and the tangent space of the Hodge locus it describes."""

from __future__ import annotations

from math import comb

from .candidate import FakeCycleSpec
from .characters import FermatContext
from .cyclotomic import CycloNum
from .linalg import Row, nullspace, rank, same_row_space
from .polyring import (
    Exps,
    Poly,
    build_P_lambda,
    in_jacobian,
    jacobian_basis,
    linear_form,
    monomials,
)


def multiplication_rows(P: Poly, e: int, ctx: FermatContext) -> tuple[list[Exps], list[Exps], list[Row]]:
    """Matrix of G -> reduce(G * P) from S_e to R^F_{e + deg P}, one row per target monomial."""
    source = list(monomials(ctx.nvars, e))
    target = list(jacobian_basis(ctx, e + P.degree()))
    t_index = {m: i for i, m in enumerate(target)}
    rows: list[Row] = [{} for _ in target]
    d = ctx.d
    for j, mono in enumerate(source):
        if in_jacobian(mono, d):
            continue
        for exps, c in P.terms.items():
            prod = tuple(a + b for a, b in zip(mono, exps))
            i = t_index.get(prod)
            if i is None:
                continue
            cur = rows[i].get(j)
            val = c if cur is None else cur + c
            if val:
                rows[i][j] = val
            else:
                rows[i].pop(j, None)
    return source, target, rows


def colon_dim(P: Poly, e: int, ctx: FermatContext) -> int:
    """dim {G in S_e : G * P in J^F}."""
    if e < 0:
        return 0
    source, _, rows = multiplication_rows(P, e, ctx)
    return len(source) - rank(rows)


def colon_basis(P: Poly, e: int, ctx: FermatContext) -> tuple[list[Exps], list[Row]]:
    """Basis of (J^F : P)_e as sparse coordinate vectors over the monomials of S_e."""
    source, _, rows = multiplication_rows(P, e, ctx)
    return source, nullspace(rows, len(source))


def hilbert_function(P: Poly, ctx: FermatContext, top: int | None = None) -> list[int]:
    """dim (S / (J^F : P))_e for e = 0..top (default: one past the socle)."""
    top = ctx.socle + 1 if top is None else top
    return [len(monomials(ctx.nvars, e)) - colon_dim(P, e, ctx) for e in range(top + 1)]


def expected_codim(ctx: FermatContext) -> int:
    h = ctx.half
    return comb(h - 1 + ctx.d, ctx.d) - h * h


def tangent_codim(spec: FakeCycleSpec) -> int:
    ctx = spec.ctx
    P = build_P_lambda(spec)
    return len(monomials(ctx.nvars, ctx.d)) - colon_dim(P, ctx.d, ctx)


def generator_rows(spec: FakeCycleSpec, e: int) -> tuple[list[Exps], list[Row]]:
    """Degree-e piece of <x_{2j-2} - c_{2j-2} x_{2j-1}, x_i^{d-1}> spanned by monomial multiples."""
    ctx = spec.ctx
    source = list(monomials(ctx.nvars, e))
    index = {m: i for i, m in enumerate(source)}
    rows: list[Row] = []
    for j, cj in enumerate(spec.c, start=1):
        ell = linear_form(ctx, j, cj)
        for mono in monomials(ctx.nvars, e - 1):
            rows.append({index[ex]: c for ex, c in ell.shift(mono).terms.items()})
    for i in range(ctx.nvars):
        for mono in monomials(ctx.nvars, e - ctx.d + 1):
            ex = list(mono)
            ex[i] += ctx.d - 1
            rows.append({index[tuple(ex)]: CycloNum.rational(1)})
    return source, rows


def idealfake_compare(spec: FakeCycleSpec, e: int) -> bool:
    """Does the explicit generator ideal agree with (J^F : P_lambda) in degree e?"""
    ctx = spec.ctx
    if e > ctx.socle:
        raise ValueError(f"degree {e} exceeds the socle {ctx.socle}")
    P = build_P_lambda(spec)
    _, gens = generator_rows(spec, e)
    _, colon = colon_basis(P, e, ctx)
    return same_row_space(gens, colon)


def pairing_rank(P: Poly, ctx: FermatContext, i: int) -> int:
    """Rank of (G, H) -> socle coefficient of G H P on S_i x S_{soc-i}."""
    soc_mono = tuple([ctx.d - 2] * ctx.nvars)
    left = monomials(ctx.nvars, i)
    right = monomials(ctx.nvars, ctx.socle - i)
    r_index = {m: k for k, m in enumerate(right)}
    rows: list[Row] = []
    for g in left:
        row: Row = {}
        for exps, c in P.terms.items():
            # h = soc_mono - g - exps must be a valid exponent vector
            h = tuple(s - a - b for s, a, b in zip(soc_mono, g, exps))
            if min(h) < 0:
                continue
            k = r_index[h]
            val = row[k] + c if k in row else c
            if val:
                row[k] = val
            else:
                row.pop(k)
        rows.append(row)
    return rank(rows)


def gorenstein_check(spec: FakeCycleSpec) -> bool:
    """One-dimensional socle at (d-2)(n/2+1) with a perfect degree-1 pairing."""
    ctx = spec.ctx
    P = build_P_lambda(spec)
    hf = hilbert_function(P, ctx)
    soc = ctx.socle
    if hf[soc] != 1 or hf[soc + 1] != 0:
        return False
    return pairing_rank(P, ctx, 1) == hf[1] == hf[soc - 1]
