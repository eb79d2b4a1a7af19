"""Exact element orders by descent through the wreath recursion.

For ``x = h * (stabilizer part)`` at a level with prime ``p``:

* no syllables: the order is 1 or ``p`` (the head lives in an elementary abelian group);
* ``h != 0``: ``x^p`` fixes the first level and ``order(x) = p * order(x^p)``;
* ``h == 0``: ``x`` fixes the first level and its order is the lcm of its section orders.

Self-similarity makes the recursion revisit states. A state met while it is
still being evaluated contributes 1 (least fixed point); any value that relied
on such a guess is checked with ``is_trivial(x^n)`` and then shrunk to the
least divisor that still kills ``x``.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

from .config import DiceConfig, spine_order
from .elements import DiceGroup, ReducedWord
from .errors import ConfigError

__all__ = ["Finite", "Exceeded", "OrderContext", "order", "brute_force_order", "power",
           "spine_order", "factorize", "is_smooth"]


@dataclass(frozen=True)
class Finite:
    order: int
    factorization: dict[int, int]

    finite = True

    def __str__(self) -> str:
        fac = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(self.factorization.items()))
        return f"{self.order} = {fac}" if fac else "1"


@dataclass(frozen=True)
class Exceeded:
    reason: str

    finite = False

    def __str__(self) -> str:
        return f"EXCEEDED ({self.reason})"


OrderResult = Finite | Exceeded


DEFAULT_MAX_WLEN = 2048


def default_limits(config: DiceConfig) -> tuple[int, int]:
    return 10 * config.num_classes * max(config.primes), 10 ** 6


@dataclass
class OrderContext:
    """Memo of finished orders plus the limits of one evaluation.

    ``max_wlen`` caps the w-length of every power the engine forms; without
    lucky rolls sections stop contracting and powers grow without bound.
    """

    max_depth: int | None = None
    max_memo: int | None = None
    max_wlen: int = DEFAULT_MAX_WLEN
    memo: dict = field(default_factory=dict)
    in_progress: set = field(default_factory=set)

    def __post_init__(self):
        for name in ("max_depth", "max_memo", "max_wlen"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")

    def bind(self, config: DiceConfig) -> None:
        d, m = default_limits(config)
        if self.max_depth is None:
            self.max_depth = d
        if self.max_memo is None:
            self.max_memo = m


class _Exceeded(Exception):
    pass


def factorize(n: int, primes) -> dict[int, int]:
    """Exponents of ``n`` over ``primes``; anything left over stays unfactored."""
    out = {}
    for p in sorted(primes):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out[p] = e
    if n != 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_smooth(n: int, primes) -> bool:
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def power(x: ReducedWord, k: int) -> ReducedWord:
    if k < 0:
        raise ValueError("power() takes k >= 0; use inverse() for negative exponents")
    return x.group.power(x, k)


def _minimize(group: DiceGroup, x: ReducedWord, n: int) -> int:
    for r in factorize(n, group.config.primes):
        while n % r == 0 and group.is_trivial(group.power(x, n // r)):
            n //= r
    return n


class _Engine:
    def __init__(self, group: DiceGroup, ctx: OrderContext):
        self.group = group
        self.ctx = ctx

    def power(self, x: ReducedWord, n: int) -> ReducedWord:
        if n * x.w_length() > 64 * self.ctx.max_wlen:
            raise _Exceeded(f"w-length {self.ctx.max_wlen}")
        y = self.group.power(x, n)
        if y.w_length() > self.ctx.max_wlen:
            raise _Exceeded(f"w-length {self.ctx.max_wlen}")
        return y

    def run(self, x: ReducedWord, depth: int) -> tuple[int, bool]:
        ctx, group = self.ctx, self.group
        key = x.key
        done = ctx.memo.get(key)
        if done is not None:
            return done, False
        if key in ctx.in_progress:
            return 1, True
        if depth > ctx.max_depth:
            raise _Exceeded(f"recursion depth {ctx.max_depth}")
        if len(ctx.memo) >= ctx.max_memo:
            raise _Exceeded(f"memo size {ctx.max_memo}")
        p = group.config.level(x.level).p
        if not x.syllables:
            n = 1 if x.head == 0 else p
            ctx.memo[key] = n
            return n, False

        ctx.in_progress.add(key)
        try:
            if x.head != 0:
                m, tainted = self.run(self.power(x, p), depth + 1)
                n = p * m
            else:
                n, tainted = 1, False
                for s in group.nontrivial_sections(x).values():
                    m, t = self.run(s, depth + 1)
                    n = math.lcm(n, m)
                    tainted |= t
            if tainted:
                n, tainted = self.settle(x, n, depth)
        finally:
            ctx.in_progress.discard(key)
        if not tainted:
            ctx.memo[key] = n
        return n, tainted

    def settle(self, x: ReducedWord, n: int, depth: int) -> tuple[int, bool]:
        """Turn a guessed order into an exact one where possible.

        Guesses only ever divide the true order, so when ``x^n`` is still
        nontrivial the true order is ``n * order(x^n)``.
        """
        group = self.group
        while True:
            y = self.power(x, n)
            if group.is_trivial(y):
                return _minimize(group, x, n), False
            m, tainted = self.run(y, depth + 1)
            if m == 1:
                # x^n nontrivial yet estimated as 1: it sits on a cycle through
                # a state still in progress; the caller verifies later.
                return n, True
            n *= m


def order(x: ReducedWord, ctx: OrderContext | None = None) -> OrderResult:
    """Exact order of ``x``, or ``Exceeded`` when a limit is hit."""
    group = x.group
    if ctx is None:
        ctx = OrderContext()
    ctx.bind(group.config)
    engine = _Engine(group, ctx)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 50 * ctx.max_depth + 1000))
    try:
        n, tainted = engine.run(x, 0)
        if tainted:
            return Exceeded("unresolved cycle")
    except _Exceeded as e:
        ctx.in_progress.clear()
        return Exceeded(str(e))
    finally:
        sys.setrecursionlimit(limit)
    fac = factorize(n, group.config.primes)
    assert is_smooth(n, group.config.primes), f"order {n} has a prime outside {sorted(group.config.primes)}"
    return Finite(n, fac)


def brute_force_order(x: ReducedWord, bound: int) -> OrderResult:
    """Least ``n <= bound`` with ``x^n`` trivial, by repeated multiplication."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    group = x.group
    y = x
    for n in range(1, bound + 1):
        if group.is_trivial(y):
            return Finite(n, factorize(n, group.config.primes))
        y = group.multiply(y, x)
    return Exceeded(f"no trivial power up to {bound}")
