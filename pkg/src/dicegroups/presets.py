"""Built-in configurations with named elements and documented expectations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import DiceConfig, parse_config
from .elements import DiceGroup, ReducedWord
from .errors import DiceError
from .lucky import check_ddmin


@dataclass(frozen=True)
class Expectation:
    claim: str
    value: object
    provenance: str  # "stated" (a known result) or "computed" (derived here)


@dataclass(frozen=True)
class Preset:
    name: str
    config: DiceConfig
    words: dict[str, str]
    expectations: tuple[Expectation, ...] = ()
    notes: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def config_text(self) -> str:
        return self.config.serialize()

    def group(self) -> DiceGroup:
        return DiceGroup(self.config)

    def element(self, group: DiceGroup, name: str) -> ReducedWord:
        return group.from_word(self.words.get(name, name))


TETRAHEDRON_TEXT = """\
dice v1
prefix 0 cycle 1
level p=2 rank=3
points 110 101 011
"""

RED = frozenset({0, 3, 5, 6})
BLACK = frozenset({1, 2, 4, 7})


def h_word(k: int) -> str:
    """Rooted word for the translation moving vertex 0 to vertex ``k``."""
    return " ".join(f"a{j + 1}" for j in range(3) if k >> j & 1)


def w_k_word(k: int) -> str:
    """``w`` conjugated by ``h_k``; over F_2 the translation is its own inverse."""
    h = h_word(k)
    return f"{h} w {h}".strip()


def tetrahedron() -> Preset:
    words = {"a": "a1", "b": "a2", "c": "a3", "w": "w"}
    words.update({f"w{k}": w_k_word(k) for k in range(8)})
    words.update({f"h{k}": h_word(k) for k in range(8)})
    exp = (
        Expectation("generators w, a, b, c are involutions", 2, "stated"),
        Expectation("|<a,b,c>| (elementary abelian of rank 3)", 8, "stated"),
        Expectation("|<a,w>| (dihedral of order 8)", 8, "stated"),
        Expectation("order of w*a", 4, "stated"),
        Expectation("|<a,b,w>| = |C2^2 x| D8^2|", 256, "stated"),
        Expectation("w_k and w_s commute for k red, s black", True, "stated"),
        Expectation("g^4 = 1 on <w_k, w_s>, k and s in one tetrahedron", True, "stated"),
        Expectation("<a,b,w> quotient order is already 256 at depth 3", 3, "computed"),
    )
    return Preset("tetrahedron", parse_config(TETRAHEDRON_TEXT), words, exp,
                  notes="red tetrahedron = vertices {0,3,5,6}, black = {1,2,4,7}",
                  extra={"red": RED, "black": BLACK})


C3_SQUARE_TEXT = """\
dice v1
prefix 0 cycle 1
level p=3 rank=2
points 11 12
"""


def _require_ddmin(config: DiceConfig, steps) -> None:
    for i in steps:
        v = check_ddmin(config, i)
        if not v.lucky:
            raise DiceError(f"preset expected DDmin at step {i}: {v.describe()}")


def c3_square_ddmin() -> Preset:
    """C_3^2 at every level with Y = {11, 12}.

    The defining points are our choice: they sit on the distinct lines
    {0,11,22} and {0,12,21} and both have full support, so DDmin holds.
    """
    config = parse_config(C3_SQUARE_TEXT)
    _require_ddmin(config, [1])
    exp = (
        Expectation("DDmin lucky at every step", True, "computed"),
        Expectation("order of w", 3, "computed"),
        Expectation("element orders are powers of 3", True, "stated"),
    )
    return Preset("c3-square", config, {"a": "a1", "b": "a2", "w": "w"}, exp)


C3_MIXED_TEXT = """\
dice v1
prefix 1 cycle 1
level p=3 rank=1
points 1 2
level p=3 rank=2
points 11 12
"""


def c3_mixed_start() -> Preset:
    """C_3 first, then C_3^2 forever.

    The first level puts both nonzero points of C_3 on its only line, so
    DDmin fails at step 1; every later step is lucky.
    """
    config = parse_config(C3_MIXED_TEXT)
    _require_ddmin(config, [2])
    exp = (
        Expectation("sections of w1 at 0, 1, 2 are w2, a21, a22", True, "stated"),
        Expectation("|pi_1(G_1)|", 3, "computed"),
        Expectation("order of a11*w1 is a power of 3", True, "computed"),
        Expectation("DDmin fails at step 1", True, "computed"),
    )
    return Preset("c3-mixed", config, {"a": "a1", "w": "w"}, exp)


ALT_2_3_TEXT = """\
dice v1
prefix 0 cycle 2
level p=2 rank=3
points 111 110
level p=3 rank=2
points 11 12 21
"""


def alternating_2_3() -> Preset:
    """Levels alternate between F_2^3 and F_3^2.

    The three defining points of F_3^2 either touch an axis (DDmin fails at
    the p=2 step before) or, since only the lines {11,22} and {12,21} avoid
    the axes, two of them share a line (DDmin fails at the p=3 step). This
    choice takes the second branch: DDmin-lucky at every p=2 step and
    DD-lucky everywhere.
    """
    config = parse_config(ALT_2_3_TEXT)
    _require_ddmin(config, [1])
    exp = (
        Expectation("order of w", 6, "computed"),
        Expectation("element orders are {2,3}-smooth", True, "stated"),
    )
    return Preset("alt-2-3", config, {"a": "a1", "b": "a2", "c": "a3", "w": "w"}, exp)


PRESETS = {
    "tetrahedron": tetrahedron,
    "c3-square": c3_square_ddmin,
    "c3-mixed": c3_mixed_start,
    "alt-2-3": alternating_2_3,
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]()
    except KeyError:
        raise DiceError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
