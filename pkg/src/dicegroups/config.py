"""Dice configurations: the per-level data (prime, rank, defining points).

Only eventually periodic configurations are representable: a finite prefix
followed by a cycle that repeats forever. Level numbering is 1-based.

File format::

    dice v1
    prefix 0 cycle 1
    level p=2 rank=3
    points 110 101 011
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (ChainError, ConfigSyntaxError, DiceError, DuplicatePointError,
                     IdentityPointError, NonPrimeError, ShapeError)
from .fpalgebra import CubePoint, CubeShape, is_prime


@dataclass(frozen=True)
class LevelSpec:
    shape: CubeShape
    defining_points: tuple[CubePoint, ...]

    def __post_init__(self):
        pts = tuple(self.defining_points)
        object.__setattr__(self, "defining_points", pts)
        for y in pts:
            self.shape.validate(y)
            if y.is_zero():
                raise IdentityPointError(f"defining point {y} is the identity of {self.shape}")
        if len(set(pts)) != len(pts):
            raise DuplicatePointError(f"repeated defining point in {' '.join(map(str, pts))}")

    @property
    def p(self) -> int:
        return self.shape.p

    @property
    def rank(self) -> int:
        return self.shape.rank

    @cached_property
    def codes(self) -> tuple[int, ...]:
        return tuple(self.shape.encode(y) for y in self.defining_points)

    @cached_property
    def code_to_index(self) -> dict[int, int]:
        """Defining point code -> 1-based index of the next level's basis vector."""
        return {c: j + 1 for j, c in enumerate(self.codes)}


@dataclass(frozen=True)
class DiceConfig:
    prefix: tuple[LevelSpec, ...]
    cycle: tuple[LevelSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise DiceError("the cycle needs at least one level")
        for i in range(1, self.num_classes + 1):
            here, nxt = self.level(i), self.level(i + 1)
            if len(here.defining_points) != nxt.rank:
                raise ChainError(f"level {i} has {len(here.defining_points)} defining points "
                                 f"but level {i + 1} has rank {nxt.rank}")

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def num_classes(self) -> int:
        """Number of distinct levels: prefix length plus period."""
        return len(self.prefix) + len(self.cycle)

    def level_class(self, i: int) -> int:
        """Smallest level index that behaves exactly like level ``i``."""
        if i < 1:
            raise ValueError(f"levels start at 1, got {i}")
        k = len(self.prefix)
        if i <= k:
            return i
        return k + (i - k - 1) % self.period + 1

    def level(self, i: int) -> LevelSpec:
        c = self.level_class(i)
        k = len(self.prefix)
        return self.prefix[c - 1] if c <= k else self.cycle[c - k - 1]

    def shape(self, i: int) -> CubeShape:
        return self.level(i).shape

    def levels(self) -> tuple[LevelSpec, ...]:
        return self.prefix + self.cycle

    @cached_property
    def primes(self) -> frozenset[int]:
        return frozenset(lv.p for lv in self.levels())

    @cached_property
    def q(self) -> int:
        return math.prod(self.primes)

    @cached_property
    def max_rank(self) -> int:
        return max(lv.rank for lv in self.levels())

    def serialize(self) -> str:
        lines = ["dice v1", f"prefix {len(self.prefix)} cycle {len(self.cycle)}"]
        for lv in self.levels():
            lines.append(f"level p={lv.p} rank={lv.rank}")
            lines.append("points " + " ".join(str(y) for y in lv.defining_points))
        return "\n".join(lines) + "\n"


_LEVEL_RE = re.compile(r"level\s+p=(\d+)\s+rank=(\d+)$")
_HEADER_RE = re.compile(r"prefix\s+(\d+)\s+cycle\s+(\d+)$")


def parse_config(text: str) -> DiceConfig:
    """Parse and validate the ``dice v1`` text format."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows or rows[0][1] != "dice v1":
        raise ConfigSyntaxError(rows[0][0] if rows else 1, "expected 'dice v1' header")
    if len(rows) < 2:
        raise ConfigSyntaxError(rows[0][0], "missing 'prefix <k> cycle <M>' line")
    lineno, line = rows[1]
    m = _HEADER_RE.match(line)
    if not m:
        raise ConfigSyntaxError(lineno, f"expected 'prefix <k> cycle <M>', got {line!r}")
    k, period = int(m.group(1)), int(m.group(2))
    if period < 1:
        raise ConfigSyntaxError(lineno, "cycle length must be at least 1")

    body = rows[2:]
    if len(body) != 2 * (k + period):
        last = rows[-1][0]
        raise ConfigSyntaxError(last, f"expected {k + period} level blocks, found {len(body) / 2:g}")
    raw_levels = []
    for b in range(k + period):
        (ln1, head), (ln2, pts) = body[2 * b], body[2 * b + 1]
        m = _LEVEL_RE.match(head)
        if not m:
            raise ConfigSyntaxError(ln1, f"expected 'level p=<prime> rank=<N>', got {head!r}")
        p, rank = int(m.group(1)), int(m.group(2))
        if not is_prime(p):
            raise NonPrimeError(f"line {ln1}: p={p} is not a prime")
        if rank < 1:
            raise ConfigSyntaxError(ln1, "rank must be positive")
        toks = pts.split()
        if not toks or toks[0] != "points":
            raise ConfigSyntaxError(ln2, f"expected 'points ...', got {pts!r}")
        shape = CubeShape(p, rank)
        try:
            ys = tuple(shape.parse_point(t) for t in toks[1:])
        except ShapeError as e:
            raise ConfigSyntaxError(ln2, str(e)) from None
        raw_levels.append(LevelSpec(shape, ys))
    return DiceConfig(tuple(raw_levels[:k]), tuple(raw_levels[k:]))


def spine_order(config: DiceConfig, i: int) -> int:
    """Exact order of the directed element w_i.

    w_i carries w_{i+1} and rooted generators of level i+1 as sections, so its
    order is the lcm (here: product, the primes being distinct) of every prime
    occurring strictly below level i.
    """
    c = config.level_class(i)
    primes = {lv.p for lv in config.cycle}
    primes.update(lv.p for lv in config.prefix[c:])
    return math.prod(primes)
