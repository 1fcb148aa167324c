"""Character combinatorics of the Fermat group and the number-theoretic lemmas."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence


@dataclass(frozen=True)
class FermatContext:
    """Dimension n (even) and degree d of the Fermat hypersurface x_0^d + ... + x_{n+1}^d."""

    n: int
    d: int
    nvars: int = field(init=False)
    socle: int = field(init=False)
    critical_degree: int = field(init=False)

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be at least 2, got {self.d}")
        object.__setattr__(self, "nvars", self.n + 2)
        object.__setattr__(self, "socle", (self.d - 2) * (self.n // 2 + 1))
        object.__setattr__(self, "critical_degree", self.d * (self.n // 2 + 2) - self.n - 2)

    @property
    def half(self) -> int:
        """n/2 + 1, the number of coordinate pairs."""
        return self.n // 2 + 1

    def require_fake_range(self) -> None:
        # d >= 2 + 6/n, kept in integers
        if (self.d - 2) * self.n < 6:
            raise ValueError(f"d={self.d}, n={self.n} violates d >= 2 + 6/n")


def weight(alpha: Sequence[int], d: int) -> int:
    total = sum(a % d for a in alpha)
    if total % d:
        raise ValueError(f"{tuple(alpha)} does not sum to 0 mod {d}")
    return total // d


def scale(alpha: Sequence[int], t: int, d: int) -> tuple[int, ...]:
    return tuple((t * a) % d for a in alpha)


def units(d: int) -> list[int]:
    return [t for t in range(1, d) if math.gcd(t, d) == 1] or [1]


def is_hodge_character(alpha: Sequence[int], d: int) -> bool:
    n = len(alpha) - 2
    if any(a % d == 0 for a in alpha):
        return False
    return all(weight(scale(alpha, t, d), d) == n // 2 + 1 for t in units(d))


def zero_free_characters(ctx: FermatContext) -> Iterator[tuple[int, ...]]:
    """All characters with entries in 1..d-1; a_0 is solved from the others."""
    d = ctx.d
    for rest in itertools.product(range(1, d), repeat=ctx.nvars - 1):
        a0 = (-sum(rest)) % d
        if a0:
            yield (a0,) + rest


def hodge_number(ctx: FermatContext, p: int, q: int) -> int:
    """Primitive h^{p,q} of the Fermat hypersurface."""
    if p + q != ctx.n:
        raise ValueError(f"p + q must equal n={ctx.n}")
    return sum(1 for a in zero_free_characters(ctx) if weight(a, ctx.d) == q + 1)


def hodge_characters(ctx: FermatContext) -> list[tuple[int, ...]]:
    return [a for a in zero_free_characters(ctx) if is_hodge_character(a, ctx.d)]


def picmax_check(ctx: FermatContext) -> bool:
    """True iff every middle-weight character is a Hodge character."""
    middle = ctx.n // 2 + 1
    n_middle = 0
    n_hodge = 0
    for a in zero_free_characters(ctx):
        if weight(a, ctx.d) == middle:
            n_middle += 1
            n_hodge += is_hodge_character(a, ctx.d)
    result = n_hodge == n_middle
    expected = euler_phi(ctx.d) <= 2
    if result != expected:
        raise AssertionError(f"maximal rank test disagrees with phi(d) <= 2 at d={ctx.d}, n={ctx.n}")
    return result


def euler_phi(d: int) -> int:
    return sum(1 for t in range(1, d + 1) if math.gcd(t, d) == 1)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))


def min_nondividing_prime(d: int) -> tuple[int, str]:
    """Least prime q with q not dividing 2d, and whether q < d/2 ('small') or q = (d+1)/2."""
    if d < 5 or d == 6:
        raise ValueError(f"d must satisfy d >= 5 and d != 6, got {d}")
    q = 2
    while (2 * d) % q == 0 or not _is_prime(q):
        q += 1
    if 2 * q < d:
        return q, "small"
    if 2 * q == d + 1:
        return q, "exceptional"
    raise ArithmeticError(f"d={d}: q={q} is neither below d/2 nor equal to (d+1)/2")


def residue_identity(d: int, q: int, k: int) -> int:
    """(1-k) r(2d-q) - r((k+1)(2d-q)) + k r(2(2d-q)) with r the residue mod d."""
    t = 2 * d - q
    return (1 - k) * (t % d) - ((k + 1) * t) % d + k * ((2 * t) % d)


def bracket_k(d: int, q: int) -> int:
    """The k in 2..d-2 with d/(k+1) < q < d/k."""
    for k in range(2, d - 1):
        if k * q < d < (k + 1) * q:
            return k
    raise ArithmeticError(f"no k with d/(k+1) < {q} < d/k for d={d}")


def villasmall_identity(d: int) -> bool:
    q, case = min_nondividing_prime(d)
    if case == "small":
        k, target = bracket_k(d, q), -d
    else:
        k, target = 2, d
    value = residue_identity(d, q, k)
    if value != target:
        raise ArithmeticError(f"residue identity fails for (d, q, k) = ({d}, {q}, {k}): {value} != {target}")
    return True
