"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""
import itertools
import random
import time
from collections import Counter

from dicegroups.config import DiceConfig, LevelSpec, parse_config, spine_order
from dicegroups.fpalgebra import CubeShape
from dicegroups.lucky import Status, check_d, check_dd, check_ddmax, check_ddmax1, check_ddmin, lucky_steps
from dicegroups.order import brute_force_order, is_smooth, order
from dicegroups.presets import BLACK, RED, get_preset
from dicegroups.quotient import NotStabilized, Overflow, Stabilized, enumerate_group, group_order, project, \
    stabilized_order

from conftest import random_config


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_generator_involutions(record):
    tet = get_preset("tetrahedron")
    G = tet.group()
    with Clock() as c:
        orders = {n: order(G.from_word(tet.words[n])) for n in "wabc"}
    ok = all(r.finite and r.order == 2 for r in orders.values()) and c.elapsed < 1
    assert record(1, ok, f"orders {[r.order for r in orders.values()]}, {c.elapsed:.2f}s")


def test_criterion_02_dihedral_subgroup(record):
    G = get_preset("tetrahedron").group()
    a, w = G.from_word("a1"), G.from_word("w")
    with Clock() as c:
        sizes = [group_order([project(a, n), project(w, n)]) for n in (2, 3, 4)]
        elems = enumerate_group([project(a, 4), project(w, 4)], cap=1000)
        profile = Counter(g.order() for g in elems) if not isinstance(elems, Overflow) else None
        wa = order(w * a)
    ok = (sizes == [8, 8, 8] and profile == Counter({1: 1, 2: 5, 4: 2})
          and wa.finite and wa.order == 4 and c.elapsed < 1)
    assert record(2, ok, f"|<a,w>| by level {sizes}, order profile {dict(sorted(profile.items()))}, "
                         f"order(wa)={wa.order}, {c.elapsed:.2f}s")


def test_criterion_03_subgroup_b(record):
    G = get_preset("tetrahedron").group()
    gens = [G.from_word(t) for t in ("a1", "a2", "w")]
    with Clock() as c:
        sizes = [group_order([project(x, n) for x in gens]) for n in (1, 2, 3, 4, 5)]
    ok = sizes[2:] == [256, 256, 256] and sizes[1] < 256 and c.elapsed < 5
    assert record(3, ok, f"|<a,b,w>| by level {sizes}, {c.elapsed:.2f}s")


def test_criterion_04_red_black_commute(record):
    tet = get_preset("tetrahedron")
    G = tet.group()
    with Clock() as c:
        results = [G.is_trivial(G.commutator(G.from_word(tet.words[f"w{k}"]), G.from_word(tet.words[f"w{s}"])))
                   for k in sorted(RED) for s in sorted(BLACK)]
    ok = len(results) == 16 and all(results) and c.elapsed < 2
    assert record(4, ok, f"{sum(results)}/16 trivial commutators, {c.elapsed:.2f}s")


def test_criterion_05_same_tetrahedron_exponent_4(record):
    tet = get_preset("tetrahedron")
    G = tet.group()
    with Clock() as c:
        worst, complete, pairs = 1, True, 0
        for colour in (RED, BLACK):
            for k, s in itertools.combinations(sorted(colour), 2):
                grp = enumerate_group([project(G.from_word(tet.words[f"w{k}"]), 3),
                                       project(G.from_word(tet.words[f"w{s}"]), 3)], cap=100000)
                pairs += 1
                if isinstance(grp, Overflow):
                    complete = False
                    continue
                worst = max([worst] + [g.order() for g in grp])
    ok = complete and pairs == 12 and 4 % worst == 0 and c.elapsed < 10
    assert record(5, ok, f"{pairs} pairs enumerated, max element order {worst}, {c.elapsed:.2f}s")


def test_criterion_06_finite_proper_subsets(record):
    G = get_preset("tetrahedron").group()
    with Clock() as c:
        subs = {sub: stabilized_order(G, list(sub), n_max=5)
                for sub in itertools.combinations(["w", "a1", "a2", "a3"], 3)}
        full = stabilized_order(G, ["w", "a1", "a2", "a3"], n_max=5)
    finite = all(isinstance(r, Stabilized) for r in subs.values())
    ok = finite and isinstance(full, NotStabilized) and c.elapsed < 30
    detail = ", ".join(f"<{','.join(s)}>={r.order}" if isinstance(r, Stabilized) else f"<{','.join(s)}> grows"
                       for s, r in subs.items())
    assert record(6, ok, f"{detail}; full set stabilized: {not isinstance(full, NotStabilized)}, "
                         f"{c.elapsed:.2f}s")


def test_criterion_07_sampled_periodicity(record):
    G = get_preset("tetrahedron").group()
    rng = random.Random(1)
    with Clock() as c:
        xs = [G.random_element(rng, 6) for _ in range(200)]
        res = [order(x) for x in xs]
        powers_of_2 = all(r.finite and r.order & (r.order - 1) == 0 for r in res)
        small = [(x, r.order) for x, r in zip(xs, res) if r.finite and r.order <= 64]
        agree = all(brute_force_order(x, 64).order == n for x, n in small)
    ok = powers_of_2 and agree and c.elapsed < 30
    hist = dict(sorted(Counter(r.order for r in res if r.finite).items()))
    assert record(7, ok, f"histogram {hist}, brute force checked {len(small)}, {c.elapsed:.2f}s")


def _alternating_configs():
    """Every cycle F_2^3 -> F_3^2 -> F_2^3 with the chained numbers of defining points."""
    A, B = CubeShape(2, 3), CubeShape(3, 2)
    for ya in itertools.combinations(range(1, A.size), B.rank):
        for yb in itertools.combinations(range(1, B.size), A.rank):
            yield DiceConfig((), (LevelSpec(A, tuple(map(A.decode, ya))),
                                  LevelSpec(B, tuple(map(B.decode, yb)))))


def test_criterion_08a_alternating_ddmin_config_exists(record):
    """An alternating F_2^3 / F_3^2 configuration that is DDmin-lucky at every step.

    The search is exhaustive over all defining points of one period.
    """
    with Clock() as c:
        total = 0
        found = []
        for config in _alternating_configs():
            total += 1
            if check_ddmin(config, 1).lucky and check_ddmin(config, 2).lucky:
                found.append(config)
    ok = bool(found) and c.elapsed < 30
    record(8, ok, f"{len(found)} of {total} alternating configurations are DDmin-lucky at every step")
    assert found, "no alternating F_2^3 / F_3^2 configuration satisfies DDmin at every step"


def test_criterion_08b_mixed_primes(record):
    preset = get_preset("alt-2-3")
    G = preset.group()
    config = preset.config
    rng = random.Random(8)
    with Clock() as c:
        res = [order(G.random_element(rng, 4)) for _ in range(100)]
        smooth = all(r.finite and is_smooth(r.order, {2, 3}) for r in res)
        w = G.from_word("w")
        # the level-3 permutation never sees exponent reduction
        perm_order = project(w, 3).order()
        oracle = (G.is_trivial(w ** 6) and not G.is_trivial(w ** 2) and not G.is_trivial(w ** 3)
                  and perm_order == 6)
        dd_all = all(v.lucky for v in lucky_steps(config, 4, "dd"))
        ddmin = [v.lucky for v in lucky_steps(config, 4, "ddmin")]
    ok = smooth and oracle and spine_order(config, 1) == 6 and dd_all and c.elapsed < 30
    hist = dict(sorted(Counter(r.order for r in res if r.finite).items()))
    assert record(8, ok, f"mixed preset: 100 orders {hist} all {{2,3}}-smooth={smooth}, "
                         f"spine order 6 by oracle={oracle}, DD at all steps={dd_all}, "
                         f"DDmin by step {ddmin}, {c.elapsed:.2f}s")


def test_criterion_09_condition_checkers(record):
    with Clock() as c:
        presets_ok = all(all(v.lucky for v in lucky_steps(get_preset(n).config, 4, "ddmin"))
                         for n in ("tetrahedron", "c3-square"))
        rng = random.Random(9)
        violations = 0
        for _ in range(500):
            config = random_config(rng, primes=(2, 3, 5), max_rank=4)
            for i in range(1, config.num_classes + 1):
                dd, d = check_dd(config, i).lucky, check_d(config, i).lucky
                ddmax = check_ddmax(config, i).lucky
                if (check_ddmin(config, i).lucky and not dd) or (dd and not d):
                    violations += 1
                if (ddmax and not dd) or (check_ddmax1(config, i).lucky and not ddmax):
                    violations += 1
        v = check_d(parse_config("dice v1\nprefix 0 cycle 1\nlevel p=3 rank=1\npoints 1\n"), 1)
        cycle_ok = v.status is Status.NOT_LUCKY and v.cycle is not None
    ok = presets_ok and violations == 0 and cycle_ok and c.elapsed < 10
    assert record(9, ok, f"presets DDmin={presets_ok}, chain violations {violations}/500 configs, "
                         f"self-feeding cycle detected={cycle_ok}, {c.elapsed:.2f}s")


def test_criterion_10_oracle_sweep(record):
    G = get_preset("tetrahedron").group()
    alphabet = ["a1", "a2", "a3", "w"]
    with Clock() as c:
        total = agree = 0
        for length in range(5):
            for letters in itertools.product(alphabet, repeat=length):
                x = G.from_word(" ".join(letters))
                r, b = order(x), brute_force_order(x, 256)
                total += 1
                agree += r.finite and b.finite and r.order == b.order
    ok = total == 341 and agree == total and c.elapsed < 30
    assert record(10, ok, f"{agree}/{total} words agree, {c.elapsed:.2f}s")


def test_criterion_11_wreath_identities(record):
    G = get_preset("tetrahedron").group()
    rng = random.Random(11)
    with Clock() as c:
        bad = 0
        for _ in range(1000):
            x, y = G.random_element(rng, 3), G.random_element(rng, 3)
            v = tuple(rng.randrange(8) for _ in range(3))
            xy = x * y
            if G.act_codes(xy, v) != G.act_codes(x, G.act_codes(y, v)):
                bad += 1
            beta = v[0]
            y_beta = G.act_codes(y, (beta,))[0]
            if not G.equals(G.section(xy, beta), G.section(x, y_beta) * G.section(y, beta)):
                bad += 1
    ok = bad == 0 and c.elapsed < 5
    assert record(11, ok, f"{1000 - bad if bad <= 1000 else 0}/1000 triples, {c.elapsed:.2f}s")
