import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dicegroups.config import parse_config
from dicegroups.elements import DiceGroup
from dicegroups.errors import ConfigError
from dicegroups.lucky import check_d
from dicegroups.order import (Exceeded, Finite, OrderContext, brute_force_order, factorize, is_smooth,
                              order, power)
from dicegroups.presets import get_preset
from dicegroups.quotient import project

from conftest import random_config


@pytest.mark.parametrize("word, n", [
    ("", 1), ("w", 2), ("a1", 2), ("a1 a2", 2), ("w a1", 4), ("w a1 w a2", 8),
])
def test_tetrahedron_orders(G, word, n):
    res = order(G.from_word(word))
    assert isinstance(res, Finite)
    assert res.order == n
    assert res.factorization == factorize(n, {2})


def test_str_forms(G):
    assert str(order(G.from_word("w a1"))) == "4 = 2^2"
    assert str(Exceeded("memo size 1")) == "EXCEEDED (memo size 1)"


def test_limits_exceeded(G):
    res = order(G.from_word("w a1 w a2 w a3"), OrderContext(max_depth=1))
    assert isinstance(res, Exceeded)
    res = order(G.from_word("w a1 w a2 w a3"), OrderContext(max_memo=1))
    assert isinstance(res, Exceeded)


def test_bad_limits():
    with pytest.raises(ConfigError):
        OrderContext(max_depth=0)
    with pytest.raises(ConfigError):
        OrderContext(max_memo=-3)


def test_power_and_helpers(G):
    x = G.from_word("w a1")
    assert power(x, 0).is_identity_form()
    assert G.is_trivial(power(x, 4))
    with pytest.raises(ValueError):
        power(x, -1)
    assert is_smooth(48, {2, 3}) and not is_smooth(10, {2, 3})
    assert factorize(12, {2, 3}) == {2: 2, 3: 1}


def test_brute_force_bound(G):
    assert isinstance(brute_force_order(G.from_word("w a1"), 3), Exceeded)
    assert brute_force_order(G.from_word("w a1"), 4).order == 4


def test_order_agrees_with_level_permutation(G):
    """The order kills x on every level, and the level-n orders approach it."""
    rng = random.Random(2)
    for _ in range(100):
        x = G.random_element(rng, 5)
        n = order(x).order
        assert n % project(x, 4).order() == 0


@given(st.integers(0, 2 ** 32 - 1))
def test_order_matches_brute_force_on_random_configs(seed):
    rng = random.Random(seed)
    config = random_config(rng, max_rank=2)
    G = DiceGroup(config)
    x = G.random_element(rng, 3)
    res = order(x)
    if all(check_d(config, i).lucky for i in range(1, config.num_classes + 1)):
        assert res.finite
    if not res.finite:
        return
    assert is_smooth(res.order, config.primes)
    if res.order <= 200:
        assert brute_force_order(x, 200).order == res.order
    assert G.is_trivial(G.power(x, res.order))


def test_infinite_order_is_reported_not_hung():
    # p=2, rank 1, Y={1}: the first level swaps and w carries a at 1 and w at 0,
    # so a*w acts like the binary odometer
    config = parse_config("dice v1\nprefix 0 cycle 1\nlevel p=2 rank=1\npoints 1\n")
    G = DiceGroup(config)
    x = G.from_word("a1 w")
    assert [project(x, n).order() for n in range(1, 7)] == [2 ** n for n in range(1, 7)]
    assert isinstance(order(x), Exceeded)
    assert isinstance(order(G.from_word("a1 w"), OrderContext(max_wlen=16)), Exceeded)


def test_smoothness_on_presets():
    for name in ("c3-square", "c3-mixed", "alt-2-3"):
        G = get_preset(name).group()
        rng = random.Random(11)
        for _ in range(50):
            res = order(G.random_element(rng, 4))
            assert res.finite and is_smooth(res.order, G.config.primes)


def test_c3_square_sweep_matches_oracle():
    import itertools
    G = get_preset("c3-square").group()
    for length in range(4):
        for letters in itertools.product(["a1", "a2", "w"], repeat=length):
            x = G.from_word(" ".join(letters))
            assert order(x).order == brute_force_order(x, 256).order


def test_head_recursion(G):
    rng = random.Random(14)
    for _ in range(100):
        x = G.random_element(rng, 5)
        if x.head:
            assert order(x).order == 2 * order(G.power(x, 2)).order


def test_warm_context_is_stable(G):
    rng = random.Random(15)
    xs = [G.random_element(rng, 5) for _ in range(50)]
    ctx = OrderContext()
    first = [order(x, ctx) for x in xs]
    again = [order(x, ctx) for x in xs]
    fresh = [order(x) for x in xs]
    assert first == again == fresh


def test_lww_example(G, tet):
    x = G.from_word(tet.words["w0"]) * G.from_word(tet.words["w3"])
    n = order(x).order
    assert 4 % n == 0
    assert brute_force_order(x, 8).order == n


def test_quotient_orders_divide(G):
    rng = random.Random(16)
    for _ in range(50):
        x = G.random_element(rng, 4)
        n = order(x).order
        for k in (1, 2, 3):
            assert n % project(x, k).order() == 0


def test_power_examples(G):
    w, a = G.from_word("w"), G.from_word("a1")
    assert power(w, 2).is_identity_form()
    sq = power(w * a, 2)
    assert sq.head == 0 and sq.w_length() == 2
