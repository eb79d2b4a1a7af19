"""Elements of dice groups in reduced form, and their wreath recursion.

An element of G_i is stored as ``h * v_{g1}^{n1} * ... * v_{gm}^{nm}`` where
``h`` is a translation of the level-i cube and ``v_g = g^-1 w_i g`` is a
conjugate of the directed generator. Products compose as functions acting on
the left: ``x * y`` applies ``y`` first.

Points are handled internally as integer codes (see ``CubeShape.encode``);
the public accessors convert back to ``CubePoint``.

Levels past the prefix are folded into the cycle: an element of G_i and the
same word in G_{i+M} are the same object, so ``ReducedWord.level`` is always a
level class.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import DiceConfig, spine_order
from .errors import LevelMismatch, PathShapeError, ShapeError, WordSyntaxError
from .fpalgebra import CubePoint, CubeShape

Syllables = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GeneratorLetter:
    """``a_j^exp`` (rooted, ``index=j``) or ``w^exp`` (directed, ``index=0``)."""

    kind: str
    index: int = 0
    exp: int = 1

    def __post_init__(self):
        if self.kind not in ("a", "w"):
            raise WordSyntaxError(f"unknown generator kind {self.kind!r}")
        if self.kind == "a" and self.index < 1:
            raise WordSyntaxError("rooted generator indices start at 1")

    @classmethod
    def rooted(cls, j: int, exp: int = 1) -> GeneratorLetter:
        return cls("a", j, exp)

    @classmethod
    def directed(cls, exp: int = 1) -> GeneratorLetter:
        return cls("w", 0, exp)

    def __str__(self) -> str:
        base = "w" if self.kind == "w" else f"a{self.index}"
        return base if self.exp == 1 else f"{base}^{self.exp}"


_TOKEN = re.compile(r"(w|a(\d+))(?:\^(-?\d+))?$")


def parse_word(text: str) -> list[GeneratorLetter]:
    """Parse ``"a1 w^2 a3^-1 w"``; the empty string and ``1`` are the identity."""
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r} in word {text!r}")
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if m.group(1) == "w":
            letters.append(GeneratorLetter.directed(exp))
        else:
            letters.append(GeneratorLetter.rooted(int(m.group(2)), exp))
    return letters


@dataclass(frozen=True)
class ReducedWord:
    group: DiceGroup = field(compare=False, repr=False)
    level: int
    head: int
    syllables: Syllables

    @property
    def shape(self) -> CubeShape:
        return self.group.config.shape(self.level)

    @property
    def head_point(self) -> CubePoint:
        return self.shape.decode(self.head)

    @property
    def syllable_points(self) -> list[tuple[CubePoint, int]]:
        return [(self.shape.decode(g), n) for g, n in self.syllables]

    @property
    def key(self) -> tuple[int, int, Syllables]:
        return (self.level, self.head, self.syllables)

    def w_length(self) -> int:
        return len(self.syllables)

    def is_identity_form(self) -> bool:
        return self.head == 0 and not self.syllables

    def __mul__(self, other: ReducedWord) -> ReducedWord:
        return self.group.multiply(self, other)

    def __pow__(self, k: int) -> ReducedWord:
        return self.group.power(self, k)

    def inverse(self) -> ReducedWord:
        return self.group.inverse(self)

    def to_letters(self) -> list[GeneratorLetter]:
        """A generator word evaluating to this element (v_g written as g^-1 w g)."""
        shape = self.shape
        out: list[GeneratorLetter] = []
        pending = self.head
        for g, n in self.syllables:
            pending = shape.sub(pending, g)
            out.extend(_rooted_letters(shape, pending))
            out.append(GeneratorLetter.directed(n))
            pending = g
        out.extend(_rooted_letters(shape, pending))
        return out

    def __str__(self) -> str:
        return " ".join(map(str, self.to_letters())) or "1"

    def describe(self) -> str:
        """Reduced form as ``h | v[g]^n ...`` with point literals."""
        parts = [str(self.head_point)]
        parts += [f"v[{g}]^{n}" for g, n in self.syllable_points]
        return " | ".join(parts)


def _rooted_letters(shape: CubeShape, code: int) -> list[GeneratorLetter]:
    return [GeneratorLetter.rooted(j + 1, d) for j, d in enumerate(shape.digits(code)) if d]


@dataclass(frozen=True)
class WreathDecomposition:
    top: CubePoint
    sections: dict[CubePoint, ReducedWord]

    def section(self, beta: CubePoint) -> ReducedWord | None:
        """Section at ``beta``; ``None`` stands for the identity."""
        return self.sections.get(beta)


@dataclass
class Portrait:
    """Top-action labels of an element on every vertex of depth <= ``depth``.

    Vertices are tuples of integer point codes; the root is ``()``.
    """

    config: DiceConfig
    level: int
    depth: int
    labels: dict[tuple[int, ...], CubePoint]

    def label(self, vertex: Sequence[int]) -> CubePoint:
        return self.labels[tuple(vertex)]

    def act(self, vertex: Sequence[int]) -> tuple[int, ...]:
        """Image of a vertex of length <= depth + 1, read off the labels."""
        if len(vertex) > self.depth + 1:
            raise ValueError(f"portrait of depth {self.depth} cannot move vertices of length {len(vertex)}")
        out = []
        for d, letter in enumerate(vertex):
            shape = self.config.shape(self.level + d)
            lab = self.labels[tuple(vertex[:d])]
            out.append(shape.add(shape.encode(lab), letter))
        return tuple(out)

    def is_trivial(self) -> bool:
        return all(lab.is_zero() for lab in self.labels.values())

    def to_dot(self, name: str = "portrait") -> str:
        """DOT digraph; node ids are dot-joined vertex indices, the root is ``""``."""
        lines = [f"digraph {name} {{"]
        for v in sorted(self.labels, key=lambda t: (len(t), t)):
            nid = ".".join(map(str, v))
            lines.append(f'  "{nid}" [label="{self.labels[v]}"];')
        for v in sorted(self.labels, key=lambda t: (len(t), t)):
            if v:
                lines.append(f'  "{".".join(map(str, v[:-1]))}" -> "{".".join(map(str, v))}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class DiceGroup:
    """A dice group together with its evaluation caches.

    Caches (sections, triviality verdicts) live here, so one instance is meant
    to be used from one thread at a time; results never depend on cache state.
    """

    def __init__(self, config: DiceConfig):
        self.config = config
        self._q = {c: spine_order(config, c) for c in range(1, config.num_classes + 1)}
        self._sections: dict[tuple[int, Syllables, int], ReducedWord] = {}
        self._trivial: dict[tuple[int, int, Syllables], bool] = {}

    # construction

    def _cls(self, level: int) -> int:
        return self.config.level_class(level)

    def w_order(self, level: int) -> int:
        return self._q[self._cls(level)]

    def _make(self, level: int, head: int, syllables: Iterable[tuple[int, int]]) -> ReducedWord:
        return ReducedWord(self, self._cls(level), head, tuple(syllables))

    def identity(self, level: int = 1) -> ReducedWord:
        return self._make(level, 0, ())

    def rooted(self, j: int, level: int = 1, exp: int = 1) -> ReducedWord:
        shape = self.config.shape(level)
        if not 1 <= j <= shape.rank:
            raise ShapeError(f"rooted generator a{j} does not exist at level {level} (rank {shape.rank})")
        return self._make(level, shape.scale(exp, shape.basis_index(j)), ())

    def translation(self, point: CubePoint, level: int = 1) -> ReducedWord:
        shape = self.config.shape(level)
        return self._make(level, shape.encode(point), ())

    def directed(self, level: int = 1, exp: int = 1) -> ReducedWord:
        n = exp % self.w_order(level)
        return self._make(level, 0, ((0, n),) if n else ())

    def v(self, gamma: CubePoint | int, level: int = 1, exp: int = 1) -> ReducedWord:
        """The conjugate ``gamma^-1 w gamma`` raised to ``exp``."""
        shape = self.config.shape(level)
        g = gamma if isinstance(gamma, int) else shape.encode(gamma)
        n = exp % self.w_order(level)
        return self._make(level, 0, ((g, n),) if n else ())

    def from_word(self, letters: Sequence[GeneratorLetter] | str, level: int = 1) -> ReducedWord:
        if isinstance(letters, str):
            letters = parse_word(letters)
        shape = self.config.shape(level)
        q = self.w_order(level)
        stack: list[tuple[int, int]] = []
        t = 0
        for letter in letters:
            if letter.kind == "a":
                if letter.index > shape.rank:
                    raise ShapeError(f"a{letter.index} does not exist at level {level} (rank {shape.rank})")
                t = shape.add(t, shape.scale(letter.exp, shape.basis_index(letter.index)))
            else:
                _push(stack, shape.neg(t), letter.exp % q, q)
        return self._make(level, t, _shift(shape, stack, t))

    # group law

    def _same_level(self, x: ReducedWord, y: ReducedWord) -> None:
        if x.level != y.level:
            raise LevelMismatch(f"elements live at levels {x.level} and {y.level}")

    def multiply(self, x: ReducedWord, y: ReducedWord) -> ReducedWord:
        self._same_level(x, y)
        shape = x.shape
        q = self.w_order(x.level)
        stack = _shift(shape, x.syllables, y.head)
        for g, n in y.syllables:
            _push(stack, g, n, q)
        return self._make(x.level, shape.add(x.head, y.head), stack)

    def inverse(self, x: ReducedWord) -> ReducedWord:
        shape = x.shape
        q = self.w_order(x.level)
        mh = shape.neg(x.head)
        syl = [(shape.add(g, mh), q - n) for g, n in reversed(x.syllables)]
        return self._make(x.level, mh, syl)

    def power(self, x: ReducedWord, k: int) -> ReducedWord:
        if k < 0:
            x, k = self.inverse(x), -k
        result = self.identity(x.level)
        base = x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return result

    def conjugate(self, x: ReducedWord, h: CubePoint | ReducedWord) -> ReducedWord:
        """``h^-1 x h`` for a translation ``h``."""
        if isinstance(h, ReducedWord):
            if h.syllables:
                return self.multiply(self.multiply(self.inverse(h), x), h)
            self._same_level(x, h)
            code = h.head
        else:
            code = x.shape.encode(h)
        return self._make(x.level, x.head, _shift(x.shape, x.syllables, code))

    def commutator(self, x: ReducedWord, y: ReducedWord) -> ReducedWord:
        """``x^-1 y^-1 x y``."""
        return self.multiply(self.multiply(self.inverse(x), self.inverse(y)), self.multiply(x, y))

    # wreath recursion

    def section(self, x: ReducedWord, beta: int) -> ReducedWord:
        """Section of ``x`` at the first-level vertex with code ``beta``."""
        key = (x.level, x.syllables, beta)
        hit = self._sections.get(key)
        if hit is not None:
            return hit
        lv = self.config.level(x.level)
        shape = lv.shape
        nxt = x.level + 1
        nshape = self.config.shape(nxt)
        q = self.w_order(nxt)
        where = lv.code_to_index
        stack: list[tuple[int, int]] = []
        t = 0
        for g, n in x.syllables:
            u = shape.add(beta, g)
            if u == 0:
                _push(stack, nshape.neg(t), n % q, q)
            else:
                j = where.get(u)
                if j is not None:
                    t = nshape.add(t, nshape.scale(n, nshape.basis_index(j)))
        res = self._make(nxt, t, _shift(nshape, stack, t))
        self._sections[key] = res
        return res

    def section_support(self, x: ReducedWord) -> list[int]:
        """Codes of first-level vertices where a syllable contributes a nontrivial letter."""
        lv = self.config.level(x.level)
        shape = lv.shape
        cands = set()
        for g, _ in x.syllables:
            ng = shape.neg(g)
            cands.add(ng)
            for y in lv.codes:
                cands.add(shape.add(y, ng))
        return sorted(cands)

    def nontrivial_sections(self, x: ReducedWord) -> dict[int, ReducedWord]:
        out = {}
        for beta in self.section_support(x):
            s = self.section(x, beta)
            if not s.is_identity_form():
                out[beta] = s
        return out

    def decompose(self, x: ReducedWord) -> WreathDecomposition:
        shape = x.shape
        secs = {shape.decode(b): s for b, s in self.nontrivial_sections(x).items()}
        return WreathDecomposition(x.head_point, secs)

    def act_codes(self, x: ReducedWord, vertex: Sequence[int]) -> tuple[int, ...]:
        out = []
        for letter in vertex:
            shape = x.shape
            out.append(shape.add(x.head, letter))
            if not x.syllables:
                out.extend(vertex[len(out):])
                break
            x = self.section(x, letter)
        return tuple(out)

    def act(self, x: ReducedWord, vertex: Sequence[CubePoint]) -> list[CubePoint]:
        codes = []
        for d, letter in enumerate(vertex):
            shape = self.config.shape(x.level + d)
            if not isinstance(letter, CubePoint) or letter.p != shape.p or letter.rank != shape.rank:
                raise PathShapeError(d, f"expected a point of {shape}, got {letter}")
            codes.append(shape.encode(letter))
        image = self.act_codes(x, codes)
        return [self.config.shape(x.level + d).decode(c) for d, c in enumerate(image)]

    def portrait(self, x: ReducedWord, depth: int) -> Portrait:
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        labels: dict[tuple[int, ...], CubePoint] = {}
        frontier = [((), x)]
        for d in range(depth + 1):
            shape = self.config.shape(x.level + d)
            nxt = []
            for v, el in frontier:
                labels[v] = shape.decode(el.head)
                if d < depth:
                    for b in range(shape.size):
                        nxt.append((v + (b,), self.section(el, b)))
            frontier = nxt
        return Portrait(self.config, x.level, depth, labels)

    # triviality

    def is_trivial(self, x: ReducedWord) -> bool:
        """Decide whether ``x`` acts trivially on the whole tree.

        Coinductive search: every reachable state must have zero head; states
        already on the worklist are assumed trivial. The reachable state space
        is finite (section w-lengths never exceed the parent's), so this halts.
        """
        known = self._trivial.get(x.key)
        if known is not None:
            return known
        seen = {x.key}
        stack = [x]
        while stack:
            el = stack.pop()
            verdict = self._trivial.get(el.key)
            if verdict:
                continue
            if verdict is False or el.head != 0:
                self._trivial[x.key] = False
                return False
            for s in self.nontrivial_sections(el).values():
                if s.key not in seen:
                    seen.add(s.key)
                    stack.append(s)
        for k in seen:
            self._trivial[k] = True
        return True

    def equals(self, x: ReducedWord, y: ReducedWord) -> bool:
        self._same_level(x, y)
        if x.key == y.key:
            return True
        return self.is_trivial(self.multiply(x, self.inverse(y)))

    # sampling

    def random_element(self, rng: random.Random, max_wlen: int, level: int = 1) -> ReducedWord:
        """Uniform w-length in [0, max_wlen], then uniform head and syllables."""
        shape = self.config.shape(level)
        q = self.w_order(level)
        m = rng.randint(0, max_wlen)
        syl: list[tuple[int, int]] = []
        while len(syl) < m:
            g = rng.randrange(shape.size)
            if syl and syl[-1][0] == g:
                continue
            syl.append((g, rng.randrange(1, q)))
        return self._make(level, rng.randrange(shape.size), syl)


def w_length(x: ReducedWord) -> int:
    return x.w_length()


def _push(stack: list[tuple[int, int]], g: int, n: int, q: int) -> None:
    """Append ``v_g^n`` to a reduced syllable list, merging equal neighbours."""
    n %= q
    if not n:
        return
    if stack and stack[-1][0] == g:
        m = (stack[-1][1] + n) % q
        if m:
            stack[-1] = (g, m)
        else:
            stack.pop()
    else:
        stack.append((g, n))


def _shift(shape: CubeShape, syllables: Iterable[tuple[int, int]], t: int) -> list[tuple[int, int]]:
    """Conjugate every syllable by the translation ``t``: v_g -> v_{g+t}."""
    if t == 0:
        return list(syllables)
    return [(shape.add(g, t), n) for g, n in syllables]
