"""Elementary abelian groups F_p^N ("cubes"): points, lines through zero, faces.

A point doubles as a tree letter, a rooted generator exponent tuple and a
translation. Coordinates are little-endian: coordinate ``j`` (1-based) is the
coefficient of the basis vector ``a_j``. The integer index of a point is
``sum(coord_c * p**(c-1))``, so over F_2^3 the point ``110`` is vertex 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import CapacityError, DegenerateLine, NonPrimeError, ShapeError

ENUMERATION_CAP = 2 ** 20
_TABLE_CAP = 729


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrimeError(f"{p!r} is not a prime")


@dataclass(frozen=True)
class CubePoint:
    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ShapeError("a point needs at least one coordinate")
        for c in coords:
            if not 0 <= c < self.p:
                raise ShapeError(f"coordinate {c} outside [0, {self.p})")

    @classmethod
    def parse(cls, text: str, p: int, rank: int | None = None) -> CubePoint:
        """Read a point literal such as ``"110"`` (coordinate 1 first)."""
        text = text.strip()
        if rank is not None and len(text) != rank:
            raise ShapeError(f"point {text!r} should have {rank} digits")
        try:
            coords = tuple(int(ch, p) if p <= 36 else int(ch) for ch in text)
        except ValueError:
            raise ShapeError(f"point {text!r} is not a base-{p} digit string") from None
        return cls(p, coords)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def shape(self) -> CubeShape:
        return CubeShape(self.p, self.rank)

    @property
    def index(self) -> int:
        return self.shape.encode(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check_same(self, other: CubePoint) -> None:
        if not isinstance(other, CubePoint):
            raise TypeError(f"expected CubePoint, got {type(other).__name__}")
        if other.p != self.p or other.rank != self.rank:
            raise ShapeError(f"shape mismatch: F_{self.p}^{self.rank} vs F_{other.p}^{other.rank}")

    def __add__(self, other: CubePoint) -> CubePoint:
        self._check_same(other)
        return CubePoint(self.p, tuple((a + b) % self.p for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> CubePoint:
        return CubePoint(self.p, tuple(-a % self.p for a in self.coords))

    def __sub__(self, other: CubePoint) -> CubePoint:
        return self + (-other)

    def __rmul__(self, c: int) -> CubePoint:
        return CubePoint(self.p, tuple(c * a % self.p for a in self.coords))

    def __str__(self) -> str:
        return "".join(_digit(c) for c in self.coords)


def _digit(c: int) -> str:
    return "0123456789abcdefghijklmnopqrstuvwxyz"[c]


@dataclass(frozen=True)
class CubeShape:
    """The cube F_p^rank. Besides validation it carries fast arithmetic on
    integer-encoded points, which the element algebra uses internally."""

    p: int
    rank: int

    def __post_init__(self):
        _check_prime(self.p)
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ShapeError(f"rank must be a positive integer, got {self.rank!r}")

    @property
    def size(self) -> int:
        return self.p ** self.rank

    def check_capacity(self) -> None:
        if self.size > ENUMERATION_CAP:
            raise CapacityError(f"F_{self.p}^{self.rank} has {self.size} points, cap is {ENUMERATION_CAP}")

    @property
    def zero(self) -> CubePoint:
        return CubePoint(self.p, (0,) * self.rank)

    def basis(self, j: int) -> CubePoint:
        """Basis vector a_j, 1-based."""
        if not 1 <= j <= self.rank:
            raise ShapeError(f"basis index {j} outside 1..{self.rank}")
        return CubePoint(self.p, tuple(int(c == j - 1) for c in range(self.rank)))

    def points(self) -> Iterator[CubePoint]:
        self.check_capacity()
        return (self.decode(i) for i in range(self.size))

    def parse_point(self, text: str) -> CubePoint:
        return CubePoint.parse(text, self.p, self.rank)

    def validate(self, point: CubePoint) -> CubePoint:
        if not isinstance(point, CubePoint) or point.p != self.p or point.rank != self.rank:
            raise ShapeError(f"{point} is not a point of F_{self.p}^{self.rank}")
        return point

    # integer-encoded arithmetic

    def encode(self, point: CubePoint) -> int:
        self.validate(point)
        n = 0
        for c in reversed(point.coords):
            n = n * self.p + c
        return n

    def decode(self, n: int) -> CubePoint:
        return CubePoint(self.p, self.digits(n))

    def digits(self, n: int) -> tuple[int, ...]:
        if not 0 <= n < self.size:
            raise ShapeError(f"index {n} outside F_{self.p}^{self.rank}")
        out = []
        for _ in range(self.rank):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def _from_digits(self, ds: Iterable[int]) -> int:
        n = 0
        for c in reversed(tuple(ds)):
            n = n * self.p + c
        return n

    @cached_property
    def _add_table(self):
        if self.p == 2 or self.size > _TABLE_CAP:
            return None
        dig = [self.digits(i) for i in range(self.size)]
        return [[self._from_digits((a + b) % self.p for a, b in zip(dig[u], dig[v])) for v in range(self.size)]
                for u in range(self.size)]

    def add(self, u: int, v: int) -> int:
        if self.p == 2:
            return u ^ v
        table = self._add_table
        if table is not None:
            return table[u][v]
        return self._from_digits((a + b) % self.p for a, b in zip(self.digits(u), self.digits(v)))

    def scale(self, c: int, u: int) -> int:
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return u
        return self._from_digits(c * a % self.p for a in self.digits(u))

    def neg(self, u: int) -> int:
        return u if self.p == 2 else self.scale(-1, u)

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def basis_index(self, j: int) -> int:
        """Integer code of a_j (1-based)."""
        return self.p ** (j - 1)

    def support_of(self, u: int) -> frozenset[int]:
        return frozenset(c + 1 for c, d in enumerate(self.digits(u)) if d)

    def __str__(self) -> str:
        return f"F_{self.p}^{self.rank}"


@dataclass(frozen=True)
class Line:
    """A line through the identity: the p multiples of a canonical direction."""

    direction: CubePoint
    points: frozenset[CubePoint] = field(compare=False)

    def __contains__(self, v: CubePoint) -> bool:
        return v in self.points

    def ordered_points(self) -> list[CubePoint]:
        return [c * self.direction for c in range(self.direction.p)]

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.ordered_points()) + "}"


@dataclass(frozen=True)
class FaceIndexSet:
    """Coordinate face through the identity spanned by the listed axes (1-based)."""

    indices: frozenset[int]

    def __init__(self, indices: Iterable[int] = ()):
        object.__setattr__(self, "indices", frozenset(indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __le__(self, other: FaceIndexSet) -> bool:
        return self.indices <= other.indices

    def __str__(self) -> str:
        return "{" + ",".join(map(str, sorted(self.indices))) + "}"


def add(u: CubePoint, v: CubePoint) -> CubePoint:
    return u + v


def _canonical_direction(v: CubePoint) -> CubePoint:
    lead = next(c for c in v.coords if c)
    return pow(lead, -1, v.p) * v


def _make_line(direction: CubePoint) -> Line:
    return Line(direction, frozenset(c * direction for c in range(direction.p)))


def line_of(v: CubePoint) -> Line:
    """The unique line through the identity containing the nonzero point ``v``."""
    if v.is_zero():
        raise DegenerateLine(f"{v} is the identity")
    return _make_line(_canonical_direction(v))


@lru_cache(maxsize=64)
def _lines(shape: CubeShape) -> tuple[Line, ...]:
    shape.check_capacity()
    out = []
    for v in shape.points():
        if not v.is_zero() and _canonical_direction(v) == v:
            out.append(_make_line(v))
    return tuple(out)


def lines_through_identity(shape: CubeShape) -> tuple[Line, ...]:
    """All (p^N - 1)/(p - 1) lines through the identity, ordered by direction index."""
    return _lines(shape)


def support(v: CubePoint) -> FaceIndexSet:
    return FaceIndexSet(j + 1 for j, c in enumerate(v.coords) if c)


def face_contains(face: FaceIndexSet, v: CubePoint) -> bool:
    if any(not 1 <= j <= v.rank for j in face.indices):
        raise ShapeError(f"face {face} does not fit rank {v.rank}")
    return support(v).indices <= face.indices
