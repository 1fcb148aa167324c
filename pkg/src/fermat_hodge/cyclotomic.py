"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) reduced
modulo the m-th cyclotomic polynomial, so equality is syntactic once both
operands sit at the same conductor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first (monic)."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    # x^m - 1 divided by Phi_k for every proper divisor k of m
    num = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            num = _exact_divide(num, list(cyclotomic_polynomial(k)))
    return tuple(num)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k is zeta_m^k in the power basis, for 0 <= k < 2*m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(2 * m):
        rows.append(tuple(cur))
        # multiply by x and reduce with x^deg = -sum(phi[i] x^i)
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def canonicalize(m: int, raw: Sequence[Rational]) -> "CycloNum":
    """Reduce sum(raw[k] * zeta_m^k) to the power basis modulo Phi_m.

    Indices are read modulo m, so raw may be longer than m.
    """
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    table = _power_table(m)
    deg = degree(m)
    acc = [Fraction(0)] * deg
    for k, c in enumerate(raw):
        if not c:
            continue
        row = table[k % m]
        for i in range(deg):
            if row[i]:
                acc[i] += c * row[i]
    return CycloNum(m, tuple(acc))


class CycloNum:
    """An element of Q(zeta_m) in canonical power-basis form."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[Rational]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if m < 1:
            raise ValueError(f"conductor must be positive, got {m}")
        if len(coeffs) != degree(m):
            raise ValueError(f"Q(zeta_{m}) needs {degree(m)} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # constructors

    @classmethod
    def rational(cls, value: Rational, m: int = 1) -> CycloNum:
        return cls(m, (Fraction(value),) + (Fraction(0),) * (degree(m) - 1))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycloNum:
        raw = [0] * m
        raw[k % m] = 1
        return canonicalize(m, raw)

    # structure

    def lift(self, m: int) -> CycloNum:
        """The same number written at conductor m (a multiple of self.m)."""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"cannot lift conductor {self.m} to {m}")
        step = m // self.m
        raw = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            raw[k * step] = c
        return canonicalize(m, raw)

    def _common(self, other) -> tuple[CycloNum, CycloNum]:
        if not isinstance(other, CycloNum):
            other = CycloNum.rational(other, self.m)
        if other.m == self.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # arithmetic

    def __add__(self, other) -> CycloNum:
        if not isinstance(other, (CycloNum, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycloNum(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> CycloNum:
        if not isinstance(other, (CycloNum, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloNum:
        return (-self) + other

    def __mul__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.m, tuple(x * other for x in self.coeffs))
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._common(other)
        deg = len(a.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return canonicalize(a.m, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycloNum:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.rational(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> CycloNum:
        return invert(self)

    def __truediv__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycloNum(self.m, tuple(x / other for x in self.coeffs))
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self * invert(other)

    def __rtruediv__(self, other) -> CycloNum:
        return invert(self) * other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    # equal numbers at different conductors must hash alike; only rationals are cheap to pin down
    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash("cyclo")

    # Galois

    def galois(self, t: int) -> CycloNum:
        """Image under zeta_m -> zeta_m^t."""
        if math.gcd(t, self.m) != 1:
            raise ValueError(f"t={t} is not a unit mod {self.m}")
        raw = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            raw[(k * t) % self.m] += c
        return canonicalize(self.m, raw)

    def conj(self) -> CycloNum:
        return self.galois(-1 % self.m) if self.m > 2 else self

    def norm_squared(self) -> CycloNum:
        return self * self.conj()

    # presentation

    def approx(self) -> complex:
        """Floating-point value at zeta_m = exp(2 pi i / m); never used for decisions."""
        z = cmath.exp(2j * math.pi / self.m)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def complexity(self) -> tuple[int, int]:
        """(nonzero coefficient count, total bit size); used for pivot choice."""
        nnz = 0
        bits = 0
        for c in self.coeffs:
            if c:
                nnz += 1
                bits += c.numerator.bit_length() + c.denominator.bit_length()
        return nnz, bits

    def __repr__(self) -> str:
        return f"CycloNum({self.m}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.m}" if k == 1 else f"z{self.m}^{k}"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def invert(z: CycloNum) -> CycloNum:
    """Inverse via the extended Euclidean algorithm against Phi_m."""
    if z.is_zero():
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    phi = [Fraction(c) for c in cyclotomic_polynomial(z.m)]
    a = _trim(list(z.coeffs))
    # invariant: s * a == r (mod phi)
    r0, r1 = phi, a
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, rem = _divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _trim(_sub_poly(s0, _mul_poly(q, s1)))
    const = r1[0]
    inv = [c / const for c in s1]
    return canonicalize(z.m, inv)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _mul_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _sub_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _divmod_poly(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    if len(num) < len(den):
        return [Fraction(0)], _trim(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(den):
                num[i + j] -= c * y
    return q, _trim(num[: len(den) - 1] or [Fraction(0)])


@dataclass(frozen=True)
class GaloisElement:
    """sigma_t : zeta_m -> zeta_m^t in Gal(Q(zeta_m)/Q)."""

    m: int
    t: int

    def __post_init__(self):
        t = self.t % self.m if self.m > 1 else 0
        if self.m > 1 and (t == 0 or math.gcd(t, self.m) != 1):
            raise ValueError(f"t={self.t} is not a unit mod {self.m}")
        object.__setattr__(self, "t", t if self.m > 1 else 1)

    def __mul__(self, other: GaloisElement) -> GaloisElement:
        if other.m != self.m:
            raise ValueError("conductor mismatch")
        return GaloisElement(self.m, self.t * other.t)

    def __call__(self, z: CycloNum) -> CycloNum:
        return galois_apply(self, z)


def galois_group(m: int) -> list[GaloisElement]:
    return [GaloisElement(m, t) for t in range(1, max(m, 2)) if math.gcd(t, m) == 1]


def galois_apply(sigma: GaloisElement, z: CycloNum) -> CycloNum:
    if sigma.m != z.m:
        raise ValueError(f"conductor mismatch: sigma at {sigma.m}, element at {z.m}")
    return z.galois(sigma.t)


def is_rational(z: CycloNum) -> tuple[bool, Fraction | None]:
    if z.is_rational():
        return True, z.coeffs[0]
    return False, None


def subfield_and_circle_test(z: CycloNum, d: int) -> bool:
    """True iff zeta_{2d}^3 * z lies in Q(zeta_d) and |z| = 1."""
    m = 2 * d
    if m % z.m:
        raise ValueError(f"conductor {z.m} does not divide {m}")
    z = z.lift(m)
    w = CycloNum.zeta(m, 3) * z
    fixing = [t for t in range(1, m) if math.gcd(t, m) == 1 and t % d == 1]
    if any(w.galois(t) != w for t in fixing):
        return False
    return z * z.galois(m - 1) == 1
