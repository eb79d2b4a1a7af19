"""Checkers for the lucky-roll conditions D, DD, DDmax, DDmax-1 and DDmin.

Faces through the identity are index sets of axes; a point lies in the face
spanned by axes ``J`` exactly when its support is contained in ``J``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .config import DiceConfig
from .fpalgebra import CubePoint, Line, line_of, support


class Status(enum.Enum):
    LUCKY = "lucky"
    NOT_LUCKY = "not-lucky"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class LuckyVerdict:
    status: Status
    step: int
    line: Line | None = None
    point: CubePoint | None = None
    cycle: tuple[tuple[int, frozenset[int]], ...] | None = None
    horizon: int | None = None

    @property
    def lucky(self) -> bool:
        return self.status is Status.LUCKY

    def describe(self) -> str:
        if self.status is Status.LUCKY:
            return "lucky"
        if self.status is Status.UNDETERMINED:
            return f"undetermined (horizon {self.horizon} reached)"
        parts = ["not lucky"]
        if self.line is not None:
            parts.append(f"line {self.line}")
        if self.point is not None:
            parts.append(f"point {self.point}")
        if self.cycle is not None:
            states = " -> ".join(f"(level {c}, J={{{','.join(map(str, sorted(J)))}}})" for c, J in self.cycle)
            parts.append(f"cycle {states}")
        return ": ".join([parts[0], ", ".join(parts[1:])]) if len(parts) > 1 else parts[0]


def _lucky(i: int) -> LuckyVerdict:
    return LuckyVerdict(Status.LUCKY, i)


def _lines_with_points(config: DiceConfig, i: int) -> list[tuple[Line, frozenset[int]]]:
    """Lines of level i meeting Y_i, with the 1-based indices of the points on them.

    Lines missing Y_i are omitted: their index set is empty and constrains nothing.
    """
    groups: dict[Line, set[int]] = {}
    for j, y in enumerate(config.level(i).defining_points, 1):
        groups.setdefault(line_of(y), set()).add(j)
    return sorted(((l, frozenset(J)) for l, J in groups.items()),
                  key=lambda t: t[0].direction.index)


def _point_in_face(config: DiceConfig, i: int, J: frozenset[int]) -> CubePoint | None:
    """First point of Y_i lying in the coordinate face spanned by axes J."""
    for y in config.level(i).defining_points:
        if support(y).indices <= J:
            return y
    return None


def check_ddmin(config: DiceConfig, i: int) -> LuckyVerdict:
    for l, J in _lines_with_points(config, i):
        if len(J) > 1:
            pts = config.level(i).defining_points
            return LuckyVerdict(Status.NOT_LUCKY, i, line=l, point=pts[sorted(J)[1] - 1])
    for y in config.level(i + 1).defining_points:
        if len(support(y)) < 2:
            return LuckyVerdict(Status.NOT_LUCKY, i, line=line_of(y), point=y)
    return _lucky(i)


def max_points_on_line(config: DiceConfig, i: int) -> int:
    """d_i: the largest number of defining points of level i on one line."""
    return max((len(J) for _, J in _lines_with_points(config, i)), default=0)


def _check_support_above(config: DiceConfig, i: int, d: int) -> LuckyVerdict:
    for y in config.level(i + 1).defining_points:
        if len(support(y)) <= d:
            return LuckyVerdict(Status.NOT_LUCKY, i, line=line_of(y), point=y)
    return _lucky(i)


def check_ddmax(config: DiceConfig, i: int) -> LuckyVerdict:
    return _check_support_above(config, i, max_points_on_line(config, i))


def check_ddmax1(config: DiceConfig, i: int) -> LuckyVerdict:
    return _check_support_above(config, i, config.level(i).p - 1)


def check_dd(config: DiceConfig, i: int) -> LuckyVerdict:
    for l, J in _lines_with_points(config, i):
        y = _point_in_face(config, i + 1, J)
        if y is not None:
            return LuckyVerdict(Status.NOT_LUCKY, i, line=l, point=y)
    return _lucky(i)


def default_horizon(config: DiceConfig) -> int:
    return len(config.prefix) + 2 * config.period * 2 ** config.max_rank


def check_d(config: DiceConfig, i: int, horizon: int | None = None) -> LuckyVerdict:
    """Run the face-descent process from every line of level ``i``.

    The state after each step is (level class, index set J); a repeated state
    means the process never stops for that line.
    """
    if horizon is None:
        horizon = default_horizon(config)
    for l, J in _lines_with_points(config, i):
        m = i
        seen: dict[tuple[int, frozenset[int]], int] = {}
        trail: list[tuple[int, frozenset[int]]] = []
        steps = 0
        while True:
            nxt = config.level(m + 1)
            Z = frozenset(j for j, y in enumerate(nxt.defining_points, 1) if support(y).indices <= J)
            if not Z:
                break
            m += 1
            state = (config.level_class(m), Z)
            if state in seen:
                cyc = tuple(trail[seen[state]:])
                return LuckyVerdict(Status.NOT_LUCKY, i, line=l,
                                    point=config.level(i).defining_points[min(J) - 1], cycle=cyc)
            seen[state] = len(trail)
            trail.append(state)
            J = Z
            steps += 1
            if steps >= horizon:
                return LuckyVerdict(Status.UNDETERMINED, i, line=l, horizon=horizon)
    return _lucky(i)


CONDITIONS: dict[str, Callable[[DiceConfig, int], LuckyVerdict]] = {
    "d": check_d,
    "dd": check_dd,
    "ddmax": check_ddmax,
    "ddmax-1": check_ddmax1,
    "ddmin": check_ddmin,
}


def _checker(condition: str) -> Callable[[DiceConfig, int], LuckyVerdict]:
    try:
        return CONDITIONS[condition.lower()]
    except KeyError:
        raise ValueError(f"unknown condition {condition!r}; choose from {', '.join(CONDITIONS)}") from None


def lucky_steps(config: DiceConfig, i_max: int, condition: str) -> list[LuckyVerdict]:
    check = _checker(condition)
    return [check(config, i) for i in range(1, i_max + 1)]


def lucky_infinitely_often(config: DiceConfig, condition: str) -> bool:
    """Verdicts repeat with the period past the prefix, so one cycle decides."""
    check = _checker(condition)
    k = len(config.prefix)
    return any(check(config, i).lucky for i in range(k + 1, k + config.period + 1))
