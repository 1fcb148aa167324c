"""Galois cocycles solved by Hilbert 90, plus the period and polynomial Hodge certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .candidate import FakeCycleSpec
from .characters import bracket_k, min_nondividing_prime, villasmall_identity
from .cyclotomic import CycloNum, GaloisElement, degree, galois_group
from .periods import galois_on_omega, normalized_period, vanishing_cycle_indices
from .polyring import build_P_lambda

Cocycle = dict[GaloisElement, CycloNum]


class CocycleError(RuntimeError):
    pass


def check_cocycle(phi: Cocycle) -> None:
    """Raise unless phi(st) = phi(s) * s(phi(t)) and phi(id) = 1."""
    for s, ps in phi.items():
        if s.t == 1 and ps != 1:
            raise CocycleError(f"phi(id) = {ps}, expected 1")
        for t, pt in phi.items():
            if phi[s * t] != ps * s(pt):
                raise CocycleError(f"cocycle law fails at ({s.t}, {t.t})")


def cocycle_phi(spec: FakeCycleSpec) -> Cocycle:
    """The cocycle sigma -> sigma(c_lambda)/c_lambda forced by Galois invariance of the class."""
    d, m = spec.d, spec.conductor
    sign = CycloNum.rational((-1) ** spec.ctx.half, m)
    p = spec.c_product()
    one = CycloNum.rational(1, m)
    g = {s.t: s for s in galois_group(m)}
    if d == 3:
        phi = {g[1]: one, g[5]: sign * p}
    elif d == 4:
        p2 = p * p
        phi = {g[1]: one, g[3]: p2, g[5]: sign, g[7]: sign * p2}
    elif d == 6:
        p4 = p**4
        phi = {g[1]: one, g[5]: p4, g[7]: sign, g[11]: sign * p4}
    else:
        raise ValueError(f"cocycle is only defined for d in (3, 4, 6), got {d}")
    check_cocycle(phi)
    return phi


def solve_c_lambda(phi: Cocycle) -> CycloNum:
    """c with sigma(c) = phi(sigma) c for all sigma, as 1 / sum_tau phi(tau) tau(theta)."""
    check_cocycle(phi)
    m = next(iter(phi)).m
    for k in range(1, degree(m) + 1):
        theta = CycloNum.zeta(m, k)
        b = CycloNum.rational(0, m)
        for tau, p in phi.items():
            b = b + p * tau(theta)
        if b:
            c = b.inverse()
            for s, ps in phi.items():
                if s(c) != ps * c:
                    raise CocycleError(f"Hilbert 90 solution fails at sigma_{s.t}")
            return c
    raise CocycleError("every theta in the power basis gave a zero trace; phi is not a cocycle")


@dataclass
class Certificate:
    spec: FakeCycleSpec
    success: bool
    periods: list[tuple[tuple[int, ...], CycloNum]] = field(default_factory=list)
    failure: tuple[tuple[int, ...], CycloNum] | None = None

    @property
    def checks(self) -> int:
        return len(self.periods)

    def rational_periods(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(bp, v.rational_value()) for bp, v in self.periods]


def certify_hodge(spec: FakeCycleSpec, stop_on_failure: bool = True) -> Certificate:
    """Every normalized period over the vanishing cycles must be rational."""
    if spec.c_lambda is None:
        raise ValueError("c_lambda must be set before certification")
    periods = []
    failure = None
    for bp in vanishing_cycle_indices(spec.ctx):
        v = normalized_period(spec, bp)
        periods.append((bp, v))
        if not v.is_rational() and failure is None:
            failure = (bp, v)
            if stop_on_failure:
                break
    return Certificate(spec, failure is None, periods, failure)


def galois_invariance(spec: FakeCycleSpec) -> bool:
    """Polynomial-level certificate: sigma maps sum_beta coeff_beta omega_beta onto itself."""
    if spec.c_lambda is None:
        raise ValueError("c_lambda must be set")
    ctx = spec.ctx
    P = build_P_lambda(spec)
    for sigma in galois_group(spec.conductor):
        image: dict[tuple[int, ...], CycloNum] = {}
        for beta, coeff in P.terms.items():
            sign, gamma = galois_on_omega(beta, sigma, ctx)
            image[gamma] = sigma(coeff) * sign
        if set(image) != set(P.terms):
            return False
        if any(image[g] != P.terms[g] for g in image):
            return False
    return True


def is_true_linear(spec: FakeCycleSpec) -> bool:
    return all(ci**spec.d == -1 for ci in spec.c)


def solve_and_certify(spec: FakeCycleSpec) -> tuple[FakeCycleSpec, Certificate]:
    solved = spec.with_c_lambda(solve_c_lambda(cocycle_phi(spec)))
    return solved, certify_hodge(solved)


def sample_circle_element(d: int) -> CycloNum:
    """A unit-circle element of Q(zeta_{2d}) that is not a d-th root of -1."""
    m = 2 * d
    for a in range(2, 50):
        z = CycloNum.rational(a, m) + CycloNum.zeta(m)
        c = z / z.conj()
        if c**d != -1:
            return c
    raise ArithmeticError(f"no sample unit found for d={d}")


def id3_holds(c: CycloNum, t: int, a: int, b: int, d: int) -> bool:
    """t(zeta^{a-b} c^{b-a}) == zeta^{r(ta)-r(tb)} c^{r(tb)-r(ta)} in Q(zeta_{2d}), r = residue mod d."""
    m = 2 * d
    lhs = (CycloNum.zeta(m, a - b) * c ** (b - a)).galois(t % m)
    ta, tb = (t * a) % d, (t * b) % d
    rhs = CycloNum.zeta(m, ta - tb) * c ** (tb - ta)
    return lhs == rhs


@dataclass
class ExclusionWitness:
    d: int
    q: int
    k: int
    t: int
    c: CycloNum
    failing: list[tuple[int, int]]


def no_fake_cycles_witness(d: int) -> ExclusionWitness:
    """Check the residue identity and exhibit a failing invariance relation for a sample c."""
    villasmall_identity(d)
    q, case = min_nondividing_prime(d)
    k = bracket_k(d, q) if case == "small" else 2
    t = 2 * d - q
    c = sample_circle_element(d)
    pairs = [(1, k + 1), (1, 2)]
    failing = [(a, b) for a, b in pairs if not id3_holds(c, t, a, b, d)]
    if not failing:
        raise ArithmeticError(f"d={d}: both invariance relations hold for c={c} although c^d != -1")
    return ExclusionWitness(d, q, k, t, c, failing)


def certify_batch(specs: Sequence[FakeCycleSpec]) -> list[Certificate]:
    return [solve_and_certify(s)[1] for s in specs]
