from __future__ import annotations

import pytest

from fermat_hodge import characters as ch
from oracles import brute_picmax, hodge_generating


@pytest.mark.parametrize(
    "d,n,p,expected",
    [(3, 2, 1, 6), (4, 2, 1, 19), (3, 4, 2, 20)],
)
def test_primitive_hodge_numbers(d, n, p, expected):
    ctx = ch.FermatContext(n, d)
    assert ch.hodge_number(ctx, p, n - p) == expected
    assert hodge_generating(d, n, n - p) == expected


@pytest.mark.parametrize("d,n", [(3, 2), (4, 2), (5, 2), (3, 4), (4, 4), (6, 2)])
def test_hodge_numbers_match_generating_function(d, n):
    ctx = ch.FermatContext(n, d)
    for p in range(n + 1):
        assert ch.hodge_number(ctx, p, n - p) == hodge_generating(d, n, n - p)


@pytest.mark.parametrize("d,n", [(5, 2), (3, 4), (4, 4), (3, 6)])
def test_hodge_numbers_sum_to_primitive_betti(d, n):
    ctx = ch.FermatContext(n, d)
    betti = ((d - 1) ** (n + 2) + (-1) ** n * (d - 1)) // d
    assert sum(ch.hodge_number(ctx, p, n - p) for p in range(n + 1)) == betti


def test_weight_and_scale():
    assert ch.weight((1, 2, 1, 2), 3) == 2
    assert ch.scale((1, 2, 1, 2), 2, 3) == (2, 1, 2, 1)
    with pytest.raises(ValueError):
        ch.weight((1, 1, 1, 1), 3)


def test_hodge_character_examples():
    assert ch.is_hodge_character((1, 2, 1, 2), 3)
    # (1,1,1,3) mod 6 has weight 1 but its multiple by 5 has weight 3
    assert not ch.is_hodge_character((1, 1, 1, 3), 6)


@pytest.mark.parametrize("d", range(3, 11))
def test_picmax(d):
    ctx = ch.FermatContext(2, d)
    expected = d in (3, 4, 6)
    assert ch.picmax_check(ctx) is expected
    assert brute_picmax(d, 2) is expected


def test_euler_phi():
    assert [ch.euler_phi(d) for d in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_min_nondividing_prime_examples():
    assert ch.min_nondividing_prime(5) == (3, "exceptional")
    assert ch.min_nondividing_prime(9) == (5, "exceptional")
    assert ch.min_nondividing_prime(7) == (3, "small")
    assert ch.min_nondividing_prime(15) == (7, "small")
    with pytest.raises(ValueError):
        ch.min_nondividing_prime(6)


def test_exceptional_degrees_up_to_ten_thousand():
    exc = [d for d in range(5, 10001) if d != 6 and ch.min_nondividing_prime(d)[1] == "exceptional"]
    assert exc == [5, 9]


def test_bracket_k():
    q, _ = ch.min_nondividing_prime(10)
    k = ch.bracket_k(10, q)
    assert 10 / (k + 1) < q < 10 / k


@pytest.mark.parametrize("d", [d for d in range(5, 101) if d != 6])
def test_residue_identity(d):
    assert ch.villasmall_identity(d)


def test_fake_range():
    ch.FermatContext(6, 3).require_fake_range()
    with pytest.raises(ValueError):
        ch.FermatContext(4, 3).require_fake_range()
    with pytest.raises(ValueError):
        ch.FermatContext(3, 3)
