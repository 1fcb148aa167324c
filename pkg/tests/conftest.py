from __future__ import annotations

import random

import pytest

from fermat_hodge.candidate import PRESETS, FakeCycleSpec, preset, random_c_vector
from fermat_hodge.fake_cycles import solve_and_certify

CASES = [(3, 6), (4, 4), (6, 2)]
FAKE_PRESETS = {
    (3, 6): ["cubic-all-ones", "cubic-eisenstein"],
    (4, 4): ["quartic-pythagorean", "quartic-all-pythagorean"],
    (6, 2): ["sextic-eisenstein", "sextic-all-eisenstein"],
}
LINEAR_PRESETS = {(3, 6): "cubic-linear", (4, 4): "quartic-linear", (6, 2): "sextic-linear"}

_solved: dict[str, FakeCycleSpec] = {}


def solved_preset(name: str) -> FakeCycleSpec:
    if name not in _solved:
        spec, cert = solve_and_certify(preset(name))
        assert cert.success, name
        _solved[name] = spec
    return _solved[name]


def random_specs(d: int, n: int, count: int, seed: int) -> list[FakeCycleSpec]:
    rng = random.Random(seed)
    out: list[FakeCycleSpec] = []
    seen = set()
    while len(out) < count:
        c = random_c_vector(d, n, rng)
        key = tuple(tuple(x.coeffs) for x in c)
        if key not in seen:
            seen.add(key)
            out.append(FakeCycleSpec(d, n, c))
    return out


@pytest.fixture(params=CASES, ids=lambda c: f"d{c[0]}n{c[1]}")
def case(request):
    return request.param


@pytest.fixture
def fake_spec(case):
    return solved_preset(FAKE_PRESETS[case][0])


@pytest.fixture
def linear_spec(case):
    return solved_preset(LINEAR_PRESETS[case])


def all_preset_names():
    return sorted(PRESETS)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
