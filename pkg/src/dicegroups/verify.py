"""Assertion suites behind ``dicegroups verify``: the concrete finite facts of each preset."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .elements import DiceGroup
from .lucky import check_ddmin
from .order import order
from .presets import Preset, get_preset
from .quotient import NotStabilized, Overflow, Stabilized, enumerate_group, group_order, project, stabilized_order


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{tail}"


def _order_value(x) -> int | None:
    r = order(x)
    return r.order if r.finite else None


def _tetrahedron(preset: Preset) -> list[Check]:
    G = preset.group()
    el = {name: G.from_word(word) for name, word in preset.words.items()}
    out = []

    orders = {n: _order_value(el[n]) for n in "wabc"}
    out.append(Check("w, a, b, c are involutions", all(v == 2 for v in orders.values()),
                     " ".join(f"{k}:{v}" for k, v in orders.items())))
    n_ab = _order_value(el["a"] * el["b"])
    out.append(Check("order(ab) = 2", n_ab == 2, str(n_ab)))

    abc = [project(el[n], 3) for n in "abc"]
    out.append(Check("|<a,b,c>| = 8 at depth 3", group_order(abc) == 8))

    sizes = [group_order([project(el["a"], n), project(el["w"], n)]) for n in (2, 3, 4)]
    out.append(Check("|<a,w>| = 8 at depths 2, 3, 4", sizes == [8, 8, 8], str(sizes)))
    elems = enumerate_group([project(el["a"], 3), project(el["w"], 3)], cap=64)
    hist = Counter(g.order() for g in elems) if not isinstance(elems, Overflow) else None
    out.append(Check("<a,w> has the order profile of D8", hist == Counter({1: 1, 2: 5, 4: 2}),
                     str(dict(sorted(hist.items())) if hist else "overflow")))
    n_wa = _order_value(el["w"] * el["a"])
    out.append(Check("order(wa) = 4", n_wa == 4, str(n_wa)))

    sizes = [group_order([project(el[n], d) for n in "abw"]) for d in (3, 4)]
    out.append(Check("|<a,b,w>| = 256 at depths 3 and 4", sizes == [256, 256], str(sizes)))

    red, black = sorted(preset.extra["red"]), sorted(preset.extra["black"])
    bad = [(k, s) for k in red for s in black
           if not G.is_trivial(G.commutator(el[f"w{k}"], el[f"w{s}"]))]
    out.append(Check("[w_k, w_s] = 1 for k red, s black", not bad, f"{16 - len(bad)}/16"))

    worst = 1
    ok = True
    for tet in (red, black):
        for k, s in combinations(tet, 2):
            grp = enumerate_group([project(el[f"w{k}"], 3), project(el[f"w{s}"], 3)], cap=4096)
            if isinstance(grp, Overflow):
                ok = False
                continue
            for g in grp:
                worst = max(worst, g.order())
    out.append(Check("g^4 = 1 on <w_k, w_s> at depth 3, k, s in one tetrahedron",
                     ok and 4 % worst == 0, f"max order {worst}"))

    gens = ["w", "a", "b", "c"]
    for sub in combinations(gens, 3):
        res = stabilized_order(G, [preset.words[n] for n in sub], n_max=5)
        out.append(Check(f"<{','.join(sub)}> is finite", isinstance(res, Stabilized),
                         f"order {res.order}" if isinstance(res, Stabilized) else "grows"))
    res = stabilized_order(G, [preset.words[n] for n in gens], n_max=5)
    out.append(Check("<w,a,b,c> does not stabilize by depth 5", isinstance(res, NotStabilized),
                     "new elements at every depth up to 5" if isinstance(res, NotStabilized) else ""))
    return out


def _sampled_smooth(G: DiceGroup, count: int, max_wlen: int, seed: int) -> Check:
    rng = random.Random(seed)
    primes = G.config.primes
    bad = 0
    for _ in range(count):
        r = order(G.random_element(rng, max_wlen))
        if not r.finite or any(p not in primes for p in r.factorization):
            bad += 1
    return Check(f"{count} sampled orders are {sorted(primes)}-smooth", bad == 0, f"{bad} failures")


def _c3_square(preset: Preset) -> list[Check]:
    G = preset.group()
    return [
        Check("DDmin lucky at every step", check_ddmin(preset.config, 1).lucky),
        Check("order(w) = 3", _order_value(G.from_word("w")) == 3),
        _sampled_smooth(G, 100, 4, 1),
    ]


def _c3_mixed(preset: Preset) -> list[Check]:
    G = preset.group()
    w1 = G.from_word("w")
    dec = G.decompose(w1)
    want = {0: G.directed(2), 1: G.rooted(1, 2), 2: G.rooted(2, 2)}
    got_ok = all(G.equals(G.section(w1, b), want[b]) for b in want)
    top = [project(G.from_word(t), 1) for t in ("a1", "w")]
    return [
        Check("sections of w1 are w2, a21, a22", got_ok and dec.top.is_zero()),
        Check("|pi_1(G_1)| = 3", group_order(top) == 3),
        Check("order(a11 w1) is a power of 3", set(order(G.from_word("a1 w")).factorization) <= {3}),
        Check("DDmin fails at step 1", not check_ddmin(preset.config, 1).lucky),
        Check("DDmin holds at step 2", check_ddmin(preset.config, 2).lucky),
    ]


def _alt_2_3(preset: Preset) -> list[Check]:
    G = preset.group()
    w = G.from_word("w")
    return [
        Check("order(w) = 6", _order_value(w) == 6),
        Check("w^6 trivial, w^2 and w^3 not",
              G.is_trivial(w ** 6) and not G.is_trivial(w ** 2) and not G.is_trivial(w ** 3)),
        Check("w permutes level 3 with order 6", project(w, 3).order() == 6),
        Check("DDmin lucky at the p=2 steps", check_ddmin(preset.config, 1).lucky),
        _sampled_smooth(G, 100, 4, 1),
    ]


SUITES: dict[str, Callable[[Preset], list[Check]]] = {
    "tetrahedron": _tetrahedron,
    "c3-square": _c3_square,
    "c3-mixed": _c3_mixed,
    "alt-2-3": _alt_2_3,
}


def run_suite(name: str) -> list[Check]:
    preset = get_preset(name)
    return SUITES[name](preset)
