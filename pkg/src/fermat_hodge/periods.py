"""Exact periods of residue forms over the vanishing-cycle basis of the affine Fermat variety.

A period is kept as (cyclotomic coefficient) * (2 pi i)^k * prod Gamma(a/d). Only the
reflection formula Gamma(z) Gamma(1-z) = 2 pi i / (zeta_{2d}^a - zeta_{2d}^-a) is applied,
which is enough to clear every Gamma symbol for totally decomposable monomials.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .characters import FermatContext
from .cyclotomic import CycloNum, GaloisElement

Exps = tuple[int, ...]


@dataclass(frozen=True)
class PeriodValue:
    coeff: CycloNum
    gamma_word: tuple[int, ...]  # sorted numerators a of Gamma(a/d)
    pi_power: int
    d: int

    def is_pure(self) -> bool:
        return not self.gamma_word and self.pi_power == 0

    def value(self) -> CycloNum:
        if not self.is_pure():
            raise ValueError("period still carries Gamma or 2*pi*i factors")
        return self.coeff

    def divide_by_two_pi_i(self, k: int) -> PeriodValue:
        return PeriodValue(self.coeff, self.gamma_word, self.pi_power - k, self.d)


def reflection_reduce(coeff: CycloNum, gammas: Sequence[int], pi_power: int, d: int) -> PeriodValue:
    """Cancel every pair Gamma(a/d) Gamma(1 - a/d) into cyclotomic numbers and a 2 pi i."""
    counts = Counter(a % d for a in gammas)
    if counts.get(0):
        raise ValueError("Gamma(0) is not defined")
    m = 2 * d
    for a in range(1, d):
        b = d - a
        while counts[a] and counts[b] and (a != b or counts[a] >= 2):
            counts[a] -= 1
            counts[b] -= 1
            coeff = coeff / (CycloNum.zeta(m, a) - CycloNum.zeta(m, -a))
            pi_power += 1
    word = tuple(sorted(counts.elements()))
    return PeriodValue(coeff.lift(math.lcm(coeff.m, m)), word, pi_power, d)


def vanishing_cycle_indices(ctx: FermatContext) -> list[Exps]:
    """All beta' in {0..d-2}^{n+1}, by total degree then lexicographically with x_1 dominant."""
    idx = itertools.product(range(ctx.d - 1), repeat=ctx.n + 1)
    return sorted(idx, key=lambda b: (sum(b), tuple(-x for x in b)))


def _check_beta(beta: Sequence[int], ctx: FermatContext) -> None:
    if len(beta) != ctx.nvars:
        raise ValueError(f"beta needs {ctx.nvars} entries")
    if any(not 0 <= b <= ctx.d - 2 for b in beta):
        raise ValueError(f"beta entries must lie in 0..{ctx.d - 2}: {tuple(beta)}")
    if (sum(beta) + ctx.nvars) % ctx.d:
        raise ValueError(f"beta={tuple(beta)} fails the degree condition")


def cycle_factor(beta: Sequence[int], beta_prime: Sequence[int], ctx: FermatContext) -> CycloNum:
    """prod_i (zeta_d^{(b_i+1)(b'_i+1)} - zeta_d^{(b_i+1) b'_i}) with b'_0 = 0 prepended."""
    d = ctx.d
    full = (0,) + tuple(beta_prime)
    out = CycloNum.rational(1, d)
    for b, bp in zip(beta, full):
        a = b + 1
        out = out * (CycloNum.zeta(d, a * (bp + 1)) - CycloNum.zeta(d, a * bp))
        if out.is_zero():
            break
    return out


def period_prefactor(ctx: FermatContext) -> Fraction:
    """1 / (d^{n+1} (n/2)!); the remaining 1/(2 pi i) is tracked in pi_power."""
    return Fraction(1, ctx.d ** (ctx.n + 1) * math.factorial(ctx.n // 2))


def period_omega_beta(beta: Sequence[int], beta_prime: Sequence[int], ctx: FermatContext) -> PeriodValue:
    """Integral of res(x^beta Omega / F^{n/2+1}) over the vanishing cycle delta_{beta'}."""
    _check_beta(beta, ctx)
    if len(beta_prime) != ctx.n + 1 or any(not 0 <= b <= ctx.d - 2 for b in beta_prime):
        raise ValueError(f"beta' must have {ctx.n + 1} entries in 0..{ctx.d - 2}")
    coeff = cycle_factor(beta, beta_prime, ctx) * period_prefactor(ctx)
    return reflection_reduce(coeff, [b + 1 for b in beta], -1, ctx.d)


def normalized_period_omega(beta: Sequence[int], beta_prime: Sequence[int], ctx: FermatContext) -> CycloNum:
    """(2 pi i)^{-n/2} times the period; a pure cyclotomic number for totally decomposable beta."""
    return period_omega_beta(beta, beta_prime, ctx).divide_by_two_pi_i(ctx.n // 2).value()


def is_totally_decomposable(beta: Sequence[int], d: int) -> bool:
    return len(beta) % 2 == 0 and all(beta[2 * j] + beta[2 * j + 1] == d - 2 for j in range(len(beta) // 2))


def c_beta(beta: Sequence[int], ctx: FermatContext) -> CycloNum:
    """prod over pairs of 1 / (zeta_{2d}^{a} - zeta_{2d}^{-a}), a = beta_{2j-2} + 1."""
    if not is_totally_decomposable(beta, ctx.d):
        raise ValueError(f"beta={tuple(beta)} is not totally decomposable")
    m = 2 * ctx.d
    out = CycloNum.rational(1, m)
    for j in range(ctx.half):
        a = beta[2 * j] + 1
        out = out / (CycloNum.zeta(m, a) - CycloNum.zeta(m, -a))
    return out


def galois_on_omega(beta: Sequence[int], sigma: GaloisElement, ctx: FermatContext) -> tuple[int, Exps]:
    """sigma_t(omega_beta) = sign * omega_gamma for totally decomposable beta."""
    d = ctx.d
    if sigma.m != 2 * d:
        raise ValueError(f"Galois element must act on Q(zeta_{2 * d})")
    if not is_totally_decomposable(beta, d):
        raise ValueError(f"beta={tuple(beta)} is not totally decomposable")
    t = sigma.t  # representative in 1..2d-1
    exponent = 0
    for j in range(ctx.half):
        a = beta[2 * j] + 1
        exponent += (t * a - (t * a) % d) // d
    gamma = tuple((t * (b + 1)) % d - 1 for b in beta)
    return (-1) ** exponent, gamma


def pair_differences(beta_prime: Sequence[int], ctx: FermatContext) -> list[int]:
    full = (0,) + tuple(beta_prime)
    return [full[2 * j + 1] - full[2 * j] for j in range(ctx.half)]


def e_factor(c: CycloNum, delta: int, d: int) -> CycloNum:
    """sum_{l=1}^{d-1} (c zeta_{2d}^{2 delta - 1})^l - (c zeta_{2d}^{2 delta + 1})^l."""
    m = 2 * d
    u = c * CycloNum.zeta(m, 2 * delta - 1)
    v = c * CycloNum.zeta(m, 2 * delta + 1)
    out = CycloNum.rational(0, m)
    pu, pv = u, v
    for _ in range(d - 1):
        out = out + pu - pv
        pu, pv = pu * u, pv * v
    return out


def normalized_period(spec, beta_prime: Sequence[int]) -> CycloNum:
    """(2 pi i)^{-n/2} times the period of the candidate class over delta_{beta'}, via the pair product."""
    ctx = spec.ctx
    pre = spec.c_lambda / spec.c_product()
    pre = pre * Fraction(1, ctx.d ** ctx.half * math.factorial(ctx.n // 2))
    out = pre
    for cj, delta in zip(spec.c, pair_differences(beta_prime, ctx)):
        out = out * e_factor(cj, delta, ctx.d)
        if out.is_zero():
            break
    return out


def normalized_periods(spec) -> Iterator[tuple[Exps, CycloNum]]:
    for bp in vanishing_cycle_indices(spec.ctx):
        yield bp, normalized_period(spec, bp)
