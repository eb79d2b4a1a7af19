"""Finite level quotients: elements as permutations of the level-n vertices.

Vertices are numbered big-endian in mixed radix: the first letter is the most
significant digit, so the subtree under a vertex is a contiguous index range.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .elements import DiceGroup, ReducedWord
from .errors import LevelMismatch, PathShapeError
from .fpalgebra import CubePoint, CubeShape


def level_shapes(group: DiceGroup, n: int, level: int = 1) -> tuple[CubeShape, ...]:
    return tuple(group.config.shape(level + d) for d in range(n))


def vertex_index(group: DiceGroup, path: Sequence[CubePoint], level: int = 1) -> int:
    idx = 0
    for d, letter in enumerate(path):
        shape = group.config.shape(level + d)
        if not isinstance(letter, CubePoint) or letter.p != shape.p or letter.rank != shape.rank:
            raise PathShapeError(d, f"expected a point of {shape}, got {letter}")
        idx = idx * shape.size + shape.encode(letter)
    return idx


def vertex_path(group: DiceGroup, index: int, n: int, level: int = 1) -> list[CubePoint]:
    shapes = level_shapes(group, n, level)
    if not 0 <= index < math.prod(s.size for s in shapes):
        raise ValueError(f"vertex index {index} out of range for level {n}")
    out = []
    for shape in reversed(shapes):
        index, r = divmod(index, shape.size)
        out.append(shape.decode(r))
    return out[::-1]


@dataclass(frozen=True, eq=False)
class LevelPermutation:
    """Action of an element on the ``len(shapes)``-th level of the tree."""

    shapes: tuple[CubeShape, ...]
    images: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.images, dtype=np.int64)
        arr.flags.writeable = False
        object.__setattr__(self, "images", arr)

    @property
    def n(self) -> int:
        return len(self.shapes)

    @property
    def degree(self) -> int:
        return len(self.images)

    def _check(self, other: LevelPermutation) -> None:
        if self.shapes != other.shapes:
            raise LevelMismatch("permutations act on different levels")

    def __mul__(self, other: LevelPermutation) -> LevelPermutation:
        """Composition ``self o other`` (``other`` acts first)."""
        self._check(other)
        return LevelPermutation(self.shapes, self.images[other.images])

    def inverse(self) -> LevelPermutation:
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return LevelPermutation(self.shapes, inv)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LevelPermutation) and self.shapes == other.shapes
                and np.array_equal(self.images, other.images))

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def __call__(self, i: int) -> int:
        return int(self.images[i])

    def truncate(self, j: int) -> LevelPermutation:
        """Induced permutation of level ``j <= n``."""
        below = math.prod(s.size for s in self.shapes[j:])
        top = math.prod(s.size for s in self.shapes[:j])
        return LevelPermutation(self.shapes[:j], self.images[np.arange(top) * below] // below)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self.images[i])
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = int(self.images[j])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "()"

    def one_line(self) -> str:
        return " ".join(map(str, self.images.tolist()))

    def __str__(self) -> str:
        return self.cycle_notation()


def identity_permutation(shapes: tuple[CubeShape, ...]) -> LevelPermutation:
    return LevelPermutation(shapes, np.arange(math.prod(s.size for s in shapes)))


def _project_images(group: DiceGroup, x: ReducedWord, n: int, cache: dict) -> np.ndarray:
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    key = (x.key, n)
    hit = cache.get(key)
    if hit is not None:
        return hit
    shape = x.shape
    below = math.prod(s.size for s in level_shapes(group, n - 1, x.level + 1))
    out = np.empty(shape.size * below, dtype=np.int64)
    ident = np.arange(below)
    for b in range(shape.size):
        top = shape.add(x.head, b) * below
        if x.syllables:
            sec = group.section(x, b)
            sub = ident if sec.is_identity_form() else _project_images(group, sec, n - 1, cache)
        else:
            sub = ident
        out[b * below:(b + 1) * below] = top + sub
    out.flags.writeable = False
    cache[key] = out
    return out


def project(x: ReducedWord, n: int) -> LevelPermutation:
    """The permutation induced by ``x`` on the level-``n`` vertices."""
    if n < 1:
        raise ValueError("n must be at least 1")
    group = x.group
    cache = group.__dict__.setdefault("_projections", {})
    images = _project_images(group, x, n, cache)
    return LevelPermutation(level_shapes(group, n, x.level), images)


# Schreier-Sims


@dataclass
class _Level:
    point: int
    gens: list[np.ndarray]
    # transversal: orbit point -> (u, u^-1) with u(point) = orbit point
    trans: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a))
    return out


class PermGroupBSGS:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Permutations are image arrays composed as functions: ``(f o g)[i] = f[g[i]]``.
    """

    def __init__(self, gens: Iterable[LevelPermutation]):
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        self.shapes = gens[0].shapes
        for g in gens:
            if g.shapes != self.shapes:
                raise LevelMismatch("generators act on different levels")
        self.degree = gens[0].degree
        self._id = np.arange(self.degree)
        self.levels: list[_Level] = []
        for g in gens:
            self._insert(np.asarray(g.images))

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[LevelPermutation]:
        seen = {}
        for lv in self.levels:
            for g in lv.gens:
                seen.setdefault(g.tobytes(), g)
        return [LevelPermutation(self.shapes, g) for g in seen.values()]

    def orbit_lengths(self) -> list[int]:
        return [len(lv.trans) for lv in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_lengths())

    def _orbit(self, lv: _Level) -> list[int]:
        """Extend the transversal of ``lv`` to the full orbit; returns new points."""
        if not lv.trans:
            lv.trans[lv.point] = (self._id, self._id)
        queue = deque(lv.trans)
        new = []
        while queue:
            beta = queue.popleft()
            u, _ = lv.trans[beta]
            for s in lv.gens:
                gamma = int(s[beta])
                if gamma not in lv.trans:
                    su = s[u]
                    lv.trans[gamma] = (su, _inv(su))
                    queue.append(gamma)
                    new.append(gamma)
        return new

    def _sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = int(g[lv.point])
            t = lv.trans.get(beta)
            if t is None:
                return g, i
            g = t[1][g]
        return g, len(self.levels)

    def contains(self, perm: LevelPermutation) -> bool:
        g, i = self._sift(np.asarray(perm.images))
        return i == len(self.levels) and np.array_equal(g, self._id)

    def _insert(self, g: np.ndarray, start: int = 0) -> None:
        """Add ``g`` (fixing the first ``start`` base points) and restore the BSGS property."""
        g, i = self._sift(g, start)
        if i == len(self.levels) and np.array_equal(g, self._id):
            return
        if i == len(self.levels):
            moved = int(np.flatnonzero(g != self._id)[0])
            self.levels.append(_Level(moved, []))
        for j in range(start, i + 1):
            self.levels[j].gens.append(g)
        # new Schreier generators, deepest affected level first
        for j in range(i, start - 1, -1):
            self._close(j)

    def _close(self, j: int) -> None:
        lv = self.levels[j]
        dirty = True
        while dirty:
            dirty = False
            self._orbit(lv)
            for u, _ in list(lv.trans.values()):
                for s in list(lv.gens):
                    su = s[u]
                    _, winv = lv.trans[int(su[lv.point])]
                    h = winv[su]
                    res, k = self._sift(h, j + 1)
                    if k < len(self.levels) or not np.array_equal(res, self._id):
                        self._insert(h, j + 1)
                        dirty = True
                        break
                if dirty:
                    break


def schreier_sims(gens: Iterable[LevelPermutation]) -> PermGroupBSGS:
    return PermGroupBSGS(gens)


def group_order(gens: Sequence[LevelPermutation]) -> int:
    return PermGroupBSGS(gens).order()


# BFS oracle


@dataclass(frozen=True)
class Overflow:
    cap: int


def enumerate_group(gens: Sequence[LevelPermutation], cap: int) -> frozenset[LevelPermutation] | Overflow:
    """All elements of the generated group by breadth-first closure."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = list(gens)
    shapes = gens[0].shapes
    ident = identity_permutation(shapes)
    seen = {ident.images.tobytes(): ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s * g
            key = h.images.tobytes()
            if key not in seen:
                if len(seen) >= cap:
                    return Overflow(cap)
                seen[key] = h
                queue.append(h)
    return frozenset(seen.values())


# layered sifting along the level stabilizer series


class TreeLayers:
    """Polycyclic generating sequence along the level stabilizers.

    Layer ``k`` holds elements fixing level ``k-1``; on level ``k`` such an
    element translates the children of each level-(k-1) vertex, which gives
    a label vector over F_{p_k}. Each layer keeps an echelon basis of labels.
    The group order is the product of ``p_k ** dim_k``.
    """

    def __init__(self, gens: Sequence[LevelPermutation], stop_when_all_nonzero: bool = False):
        gens = list(gens)
        self.shapes = gens[0].shapes
        self.gens = [np.asarray(g.images) for g in gens]
        self.gen_inv = [_inv(g) for g in self.gens]
        n = len(self.shapes)
        self._below = [math.prod(s.size for s in self.shapes[k:]) for k in range(1, n + 1)]
        self._above = [math.prod(s.size for s in self.shapes[:k - 1]) for k in range(1, n + 1)]
        # per layer: list of (pivot, label, perm, inverse)
        self.basis: list[list[tuple[int, np.ndarray, np.ndarray, np.ndarray]]] = [[] for _ in range(n)]
        self.complete = self._close(stop_when_all_nonzero)

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def order(self) -> int:
        if not self.complete:
            raise RuntimeError("closure was stopped early; the order is not known")
        return math.prod(s.p ** d for s, d in zip(self.shapes, self.dims))

    def orders_by_level(self) -> list[int]:
        out, acc = [], 1
        for s, d in zip(self.shapes, self.dims):
            acc *= s.p ** d
            out.append(acc)
        return out

    def _label(self, g: np.ndarray, k: int) -> np.ndarray:
        shape = self.shapes[k]
        below = self._below[k]
        us = np.arange(self._above[k]) * shape.size * below
        codes = (g[us] // below) % shape.size
        digits = (codes[:, None] // shape.p ** np.arange(shape.rank)) % shape.p
        return digits.reshape(-1)

    def _sift(self, g: np.ndarray) -> tuple[int, np.ndarray, np.ndarray] | None:
        for k, shape in enumerate(self.shapes):
            p = shape.p
            v = self._label(g, k)
            for piv, b, _, binv in self.basis[k]:
                c = int(v[piv])
                if c:
                    v = (v - c * b) % p
                    for _ in range(c):
                        g = g[binv]
            if v.any():
                return k, v, g
        return None

    def _close(self, stop_early: bool) -> bool:
        queue = deque(self.gens)
        while queue:
            res = self._sift(queue.popleft())
            if res is None:
                continue
            k, v, g = res
            p = self.shapes[k].p
            piv = int(np.flatnonzero(v)[0])
            c = int(v[piv])
            if c != 1:
                e = pow(c, -1, p)
                g0 = g
                for _ in range(e - 1):
                    g = g[g0]
                v = v * e % p
            ginv = _inv(g)
            for _, _, b, binv in self.basis[k]:
                queue.append(ginv[binv[g[b]]])
            self.basis[k].append((piv, v, g, ginv))
            if stop_early and all(self.basis):
                return False
            gp = g
            for _ in range(p - 1):
                gp = gp[g]
            queue.append(gp)
            for s, sinv in zip(self.gens, self.gen_inv):
                queue.append(sinv[g[s]])
        return True


@dataclass(frozen=True)
class Stabilized:
    order: int
    depth: int


@dataclass(frozen=True)
class NotStabilized:
    n_max: int
    dims: tuple[int, ...]


def stabilized_order(group: DiceGroup, words: Sequence[ReducedWord | str], n_max: int,
                     level: int = 1) -> Stabilized | NotStabilized:
    """First quotient order that repeats at two consecutive depths.

    Orders never decrease with depth, so a repeat at depth ``d`` and ``d+1``
    means layer ``d+1`` is trivial. Growth at every depth up to ``n_max`` is
    certified by one layer element per depth, without finishing the closure.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    elems = [group.from_word(w, level) if isinstance(w, str) else w for w in words]
    for n in range(2, n_max + 1):
        layers = TreeLayers([project(x, n) for x in elems], stop_when_all_nonzero=True)
        dims = layers.dims
        if layers.complete and 0 in dims[1:]:
            d = dims.index(0, 1)
            return Stabilized(layers.orders_by_level()[d - 1], d)
    return NotStabilized(n_max, tuple(dims))
