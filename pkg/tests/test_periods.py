from __future__ import annotations

import itertools
import math
from fractions import Fraction
from types import SimpleNamespace

import pytest

from fermat_hodge.characters import FermatContext
from fermat_hodge.cyclotomic import CycloNum, GaloisElement, galois_group
from fermat_hodge.periods import (
    c_beta,
    cycle_factor,
    e_factor,
    galois_on_omega,
    is_totally_decomposable,
    normalized_period,
    normalized_period_omega,
    pair_differences,
    period_omega_beta,
    reflection_reduce,
    vanishing_cycle_indices,
)
from fermat_hodge.polyring import build_P_lambda
from conftest import CASES, solved_preset, FAKE_PRESETS, LINEAR_PRESETS
from oracles import close, zeta_float


def decomposable(ctx, limit=None):
    out = [b for b in itertools.product(range(ctx.d - 1), repeat=ctx.nvars) if is_totally_decomposable(b, ctx.d)]
    return out[:limit] if limit else out


def float_period(beta, bp, ctx):
    """Direct float evaluation of the product formula with math.gamma."""
    d = ctx.d
    full = (0,) + tuple(bp)
    val = 1 / (d ** (ctx.n + 1) * math.factorial(ctx.n // 2) * 2j * math.pi)
    for b, p in zip(beta, full):
        a = b + 1
        val *= (zeta_float(d, a * (p + 1)) - zeta_float(d, a * p)) * math.gamma(a / d)
    return val


def float_value(pv):
    val = pv.coeff.approx() * (2j * math.pi) ** pv.pi_power
    for a in pv.gamma_word:
        val *= math.gamma(a / pv.d)
    return val


def test_e_factor_linear_constant_gives_d():
    for d in (3, 4, 6):
        assert e_factor(CycloNum.zeta(2 * d), 0, d) == d


def test_e_factor_cubic_example():
    assert e_factor(CycloNum.rational(1, 6), 0, 3) == 2 - 4 * CycloNum.zeta(6)


def test_galois_sign_examples():
    ctx = FermatContext(4, 4)
    beta = (0, 2, 0, 2, 0, 2)
    assert galois_on_omega(beta, GaloisElement(8, 7), ctx)[0] == -1
    assert galois_on_omega(beta, GaloisElement(8, 1), ctx) == (1, beta)
    ctx3 = FermatContext(6, 3)
    beta3 = (0, 1) * 4
    # each pair contributes (5*1 - 2)/3 = 1, four pairs
    assert galois_on_omega(beta3, GaloisElement(6, 5), ctx3)[0] == 1


def test_galois_rejects_bad_input():
    ctx = FermatContext(4, 4)
    with pytest.raises(ValueError):
        galois_on_omega((1, 0, 0, 2, 0, 2), GaloisElement(8, 3), ctx)
    with pytest.raises(ValueError):
        galois_on_omega((0, 2) * 3, GaloisElement(12, 5), ctx)


def test_c_beta_examples():
    ctx4 = FermatContext(4, 4)
    z8 = CycloNum.zeta(8)
    expected = (1 / (z8 + z8**3)) ** 3
    assert c_beta((0, 2) * 3, ctx4) == expected
    ctx3 = FermatContext(6, 3)
    z6 = CycloNum.zeta(6)
    assert c_beta((0, 1) * 4, ctx3) == (1 / (2 * z6 - 1)) ** 4
    for beta in decomposable(ctx4):
        assert c_beta(beta, ctx4)
    with pytest.raises(ValueError):
        c_beta((1, 0, 0, 2, 0, 2), ctx4)


def test_vanishing_cycle_indices_count_and_order():
    for d, n in CASES:
        ctx = FermatContext(n, d)
        idx = vanishing_cycle_indices(ctx)
        assert len(idx) == (d - 1) ** (n + 1) == len(set(idx))
        assert idx[0] == (0,) * (n + 1)
        assert [sum(b) for b in idx] == sorted(sum(b) for b in idx)
    ctx = FermatContext(2, 3)
    assert vanishing_cycle_indices(ctx)[:4] == [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.mark.parametrize("d,n", [(3, 2), (4, 2), (5, 2), (3, 4)])
def test_period_matches_float_product(d, n):
    ctx = FermatContext(n, d)
    betas = [b for b in itertools.product(range(d - 1), repeat=n + 2) if (sum(b) + n + 2) % d == 0]
    for beta in betas[:12]:
        for bp in vanishing_cycle_indices(ctx)[:10]:
            pv = period_omega_beta(beta, bp, ctx)
            assert close(float_value(pv), float_period(beta, bp, ctx))


def test_decomposable_periods_are_pure():
    for d, n in CASES:
        ctx = FermatContext(n, d)
        for beta in decomposable(ctx, 5):
            pv = period_omega_beta(beta, vanishing_cycle_indices(ctx)[3], ctx)
            assert pv.gamma_word == ()
            assert pv.divide_by_two_pi_i(n // 2).is_pure()


def test_non_decomposable_keeps_gamma():
    ctx = FermatContext(2, 5)
    pv = period_omega_beta((0, 0, 0, 1), (0, 0, 0), ctx)
    assert pv.gamma_word == (1, 1, 1, 2)
    with pytest.raises(ValueError):
        pv.value()


def test_cycle_factor_never_vanishes_in_range():
    # a zero factor needs d | (beta_i + 1), impossible for beta_i <= d-2
    ctx = FermatContext(2, 4)
    betas = [b for b in itertools.product(range(3), repeat=4) if (sum(b) + 4) % 4 == 0]
    for beta in betas:
        for bp in vanishing_cycle_indices(ctx):
            assert cycle_factor(beta, bp, ctx)


def test_reflection_reduce_zero_coefficient():
    pv = reflection_reduce(CycloNum.rational(0, 8), [1, 3], 0, 4)
    assert pv.coeff == 0 and pv.pi_power == 1 and pv.gamma_word == ()


def test_period_input_validation():
    ctx = FermatContext(2, 3)
    with pytest.raises(ValueError):
        period_omega_beta((0, 0, 0, 0), (0, 0, 0), ctx)
    with pytest.raises(ValueError):
        period_omega_beta((0, 1, 0, 1), (0, 0), ctx)
    with pytest.raises(ValueError):
        period_omega_beta((0, 2, 0, 1), (0, 0, 0), ctx)


def pathway_ratio_holds(spec, bps):
    ctx = spec.ctx
    P = build_P_lambda(spec)
    for bp in bps:
        direct = normalized_period(spec, bp)
        summed = CycloNum.rational(0, 2 * ctx.d)
        for beta, coeff in P.terms.items():
            summed = summed + coeff * normalized_period_omega(beta, bp, ctx)
        # the candidate-class formula carries 1/d^{n/2+1}, the monomial formula 1/d^{n+1}
        if direct != summed * ctx.d ** (ctx.n // 2):
            return False
    return True


def test_pathway_equality_smallest_case():
    ctx = FermatContext(2, 3)
    spec = SimpleNamespace(ctx=ctx, c=(CycloNum.rational(1, 6),) * 2, c_lambda=CycloNum.rational(1, 6))
    spec.c_product = lambda: CycloNum.rational(1, 6)
    assert pathway_ratio_holds(spec, vanishing_cycle_indices(ctx))


@pytest.mark.parametrize("name", [p for ps in FAKE_PRESETS.values() for p in ps] + list(LINEAR_PRESETS.values()))
def test_pathway_equality_presets(name):
    spec = solved_preset(name)
    bps = vanishing_cycle_indices(spec.ctx)
    assert pathway_ratio_holds(spec, bps[:: max(1, len(bps) // 25)])


def test_pair_differences():
    ctx = FermatContext(4, 4)
    assert pair_differences((1, 2, 0, 1, 2), ctx) == [1, -2, 1]


@pytest.mark.parametrize("d,n", CASES)
def test_galois_period_compatibility(d, n):
    ctx = FermatContext(n, d)
    for beta in decomposable(ctx, 2):
        for s in galois_group(2 * d):
            sign, gamma = galois_on_omega(beta, s, ctx)
            for bp in vanishing_cycle_indices(ctx):
                lhs = s(normalized_period_omega(beta, bp, ctx).lift(2 * d))
                assert lhs == normalized_period_omega(gamma, bp, ctx) * sign


def test_true_linear_periods_are_rational():
    for name in LINEAR_PRESETS.values():
        spec = solved_preset(name)
        for bp in vanishing_cycle_indices(spec.ctx)[:40]:
            assert normalized_period(spec, bp).is_rational()


def test_period_prefactor_rational_scaling():
    spec = solved_preset("quartic-pythagorean")
    scaled = spec.with_c_lambda(spec.c_lambda * Fraction(-7, 3))
    bp = vanishing_cycle_indices(spec.ctx)[5]
    assert normalized_period(scaled, bp) == normalized_period(spec, bp) * Fraction(-7, 3)
