import pytest

from catcohom.fincat import (
    interval_category,
    monoid_category,
    poset_category,
    terminal_category,
)


@pytest.fixture(scope="session")
def one():
    return terminal_category()


@pytest.fixture(scope="session")
def i1():
    return interval_category(1)


@pytest.fixture(scope="session")
def i2():
    return interval_category(2)


@pytest.fixture(scope="session")
def circle():
    """Poset model of the circle: a, b both below c and d."""
    return poset_category(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )


@pytest.fixture(scope="session")
def fan():
    """Poset with a terminal object t."""
    return poset_category(["x", "y", "t"], [("x", "t"), ("y", "t")])


@pytest.fixture(scope="session")
def bz2():
    """The group Z/2 as a one-object category."""
    return monoid_category(
        ["1", "t"],
        {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "1"},
    )


@pytest.fixture(scope="session")
def bz3():
    els = ["e", "r", "s"]  # r = rotation, s = r^2
    mul = {}
    val = {"e": 0, "r": 1, "s": 2}
    name = {0: "e", 1: "r", 2: "s"}
    for a in els:
        for b in els:
            mul[(a, b)] = name[(val[a] + val[b]) % 3]
    return monoid_category(els, mul)


@pytest.fixture(scope="session")
def idem():
    """Monoid {1, e} with e idempotent; its nerve is contractible."""
    return monoid_category(
        ["1", "e"],
        {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"},
    )


@pytest.fixture(scope="session")
def two_circles():
    return poset_category(
        ["a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"],
        [("a1", "c1"), ("a1", "d1"), ("b1", "c1"), ("b1", "d1"),
         ("a2", "c2"), ("a2", "d2"), ("b2", "c2"), ("b2", "d2")],
    )
