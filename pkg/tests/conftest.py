import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dicegroups.config import DiceConfig, LevelSpec
from dicegroups.fpalgebra import CubeShape
from dicegroups.presets import get_preset

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def tet():
    return get_preset("tetrahedron")


@pytest.fixture(scope="session")
def G(tet):
    return tet.group()


def random_config(rng: random.Random, primes=(2, 3), max_rank=3, max_prefix=1, max_period=2) -> DiceConfig:
    """A valid eventually periodic configuration; ranks are chained through |Y|."""
    n = rng.randint(0, max_prefix) + rng.randint(1, max_period)
    k = rng.randint(0, min(max_prefix, n - 1))
    shapes = []
    for _ in range(n):
        shapes.append(CubeShape(rng.choice(primes), rng.randint(1, max_rank)))
    # the last level feeds the first level of the cycle
    levels = []
    for idx, shape in enumerate(shapes):
        nxt = shapes[idx + 1] if idx + 1 < n else shapes[k]
        want = nxt.rank
        if want > shape.size - 1:
            return random_config(rng, primes, max_rank, max_prefix, max_period)
        codes = rng.sample(range(1, shape.size), want)
        levels.append(LevelSpec(shape, tuple(shape.decode(c) for c in codes)))
    return DiceConfig(tuple(levels[:k]), tuple(levels[k:]))


@st.composite
def configs(draw, primes=(2, 3), max_rank=3):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_config(random.Random(seed), primes, max_rank)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(criterion: int, ok: bool, detail: str = "") -> bool:
        """Print this part's verdict; a criterion split over tests passes only if every part does."""
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
        prev = ACCEPTANCE.get(criterion)
        if prev is not None:
            ACCEPTANCE[criterion] = (ok and prev[0], "; ".join(d for d in (prev[1], detail) if d))
        else:
            ACCEPTANCE[criterion] = (ok, detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
