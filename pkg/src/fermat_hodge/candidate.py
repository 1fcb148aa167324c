"""Candidate fake linear cycles as (d, n, c, c_lambda) records, with named presets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .characters import FermatContext
from .cyclotomic import CycloNum, subfield_and_circle_test

SUPPORTED_DEGREES = (3, 4, 6)


def in_circle_of_conductor(z: CycloNum, m: int) -> bool:
    """z lies in Q(zeta_m) and has absolute value 1."""
    if m % z.m:
        return False
    z = z.lift(m)
    return z * z.galois(m - 1) == 1


@dataclass(frozen=True)
class FakeCycleSpec:
    """A candidate class given by c_lambda * prod_j (x_{2j-2}^{d-1} - (c x_{2j-1})^{d-1}) / (x_{2j-2} - c x_{2j-1})."""

    d: int
    n: int
    c: tuple[CycloNum, ...]
    c_lambda: CycloNum | None = None
    ctx: FermatContext = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.d not in SUPPORTED_DEGREES:
            raise ValueError(f"fake linear cycles need d in {SUPPORTED_DEGREES}, got {self.d}")
        ctx = FermatContext(self.n, self.d)
        ctx.require_fake_range()
        object.__setattr__(self, "ctx", ctx)
        m = 2 * self.d
        if len(self.c) != ctx.half:
            raise ValueError(f"need {ctx.half} constants c_0, c_2, ..., c_n, got {len(self.c)}")
        lifted = []
        for i, ci in enumerate(self.c):
            ci = ci if isinstance(ci, CycloNum) else CycloNum.rational(ci)
            if m % ci.m:
                raise ValueError(f"c_{2 * i} has conductor {ci.m}, not dividing {m}")
            ci = ci.lift(m)
            ok = subfield_and_circle_test(ci, self.d)
            if self.d == 3:
                # zeta_6^{-3} S^1_{Q(zeta_3)} and S^1_{Q(zeta_6)} are the same set
                if ok != in_circle_of_conductor(ci, 6):
                    raise AssertionError(f"cubic membership tests disagree on {ci}")
            if not ok:
                raise ValueError(f"c_{2 * i} = {ci} is not in zeta_{m}^-3 * S^1_Q(zeta_{self.d})")
            lifted.append(ci)
        object.__setattr__(self, "c", tuple(lifted))
        if self.c_lambda is not None:
            cl = self.c_lambda if isinstance(self.c_lambda, CycloNum) else CycloNum.rational(self.c_lambda)
            if cl.is_zero():
                raise ValueError("c_lambda must be nonzero")
            if m % cl.m:
                raise ValueError(f"c_lambda has conductor {cl.m}, not dividing {m}")
            object.__setattr__(self, "c_lambda", cl.lift(m))

    @property
    def conductor(self) -> int:
        return 2 * self.d

    def with_c_lambda(self, c_lambda: CycloNum) -> FakeCycleSpec:
        return replace(self, c_lambda=c_lambda)

    def c_product(self) -> CycloNum:
        out = CycloNum.rational(1, self.conductor)
        for ci in self.c:
            out = out * ci
        return out


def unit_from_ratio(z: CycloNum, d: int) -> CycloNum:
    """zeta_{2d}^{-3} * z / conj(z) for z in Q(zeta_d): always a valid c."""
    z = z.lift(d)
    m = 2 * d
    return CycloNum.zeta(m, -3) * (z / z.galois(d - 1 if d > 2 else 1))


def random_c_vector(d: int, n: int, rng: random.Random, spread: int = 6) -> tuple[CycloNum, ...]:
    """Random valid c-vector with at least one entry that is not a d-th root of -1."""
    half = n // 2 + 1
    while True:
        out = []
        for _ in range(half):
            coeffs = [rng.randint(-spread, spread) for _ in range(2)]
            if not any(coeffs):
                coeffs[0] = 1
            z = CycloNum.rational(coeffs[0], d) + CycloNum.zeta(d) * coeffs[1]
            out.append(unit_from_ratio(z, d))
        if any(ci**d != -1 for ci in out):
            return tuple(out)


def _q(x: str) -> Fraction:
    return Fraction(x)


def _presets() -> dict[str, tuple[int, int, tuple[CycloNum, ...]]]:
    z = CycloNum.zeta
    pyth4 = z(8) * (CycloNum.rational(_q("3/5"), 4) + z(4) * _q("4/5"))
    eis6 = z(12, 3) * (CycloNum.rational(3, 6) + z(6) * 5) / 7
    eis3 = (CycloNum.rational(3, 6) + z(6) * 5) / 7
    return {
        "cubic-all-ones": (3, 6, tuple(CycloNum.rational(1, 6) for _ in range(4))),
        "cubic-eisenstein": (3, 6, (eis3, CycloNum.rational(1, 6), eis3.conj(), z(6))),
        "cubic-linear": (3, 6, tuple(z(6) for _ in range(4))),
        "quartic-pythagorean": (4, 4, (pyth4, z(8), z(8))),
        "quartic-all-pythagorean": (4, 4, (pyth4, pyth4, pyth4.conj() * z(8, 2))),
        "quartic-linear": (4, 4, tuple(z(8) for _ in range(3))),
        "sextic-eisenstein": (6, 2, (eis6, z(12))),
        "sextic-all-eisenstein": (6, 2, (eis6, eis6)),
        "sextic-linear": (6, 2, (z(12), z(12))),
    }


PRESETS = _presets()


def preset(name: str) -> FakeCycleSpec:
    try:
        d, n, c = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return FakeCycleSpec(d, n, c)


def true_linear_spec(d: int, n: int) -> FakeCycleSpec:
    return FakeCycleSpec(d, n, tuple(CycloNum.zeta(2 * d) for _ in range(n // 2 + 1)))
