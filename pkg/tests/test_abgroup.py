import itertools
from math import gcd

import pytest

from genuscalc.abgroup import (
    FinAbGroup,
    InfiniteExponentError,
    NonUnitError,
    dlog,
    exponent,
    normalize,
    quotient_by,
    quotient_with_map,
    units_group,
    units_mod_pm1,
)
from genuscalc.ntheory import factorize
from genuscalc.oracle import brute_exponent, brute_units_mod_pm1, group_from_element_orders


def G(*factors, free=0):
    return FinAbGroup(free, tuple(factors))


def test_exponent_examples():
    assert exponent(normalize([[6, 0], [0, 4]], 2)) == 12
    assert normalize([[6, 0], [0, 4]], 2) == G(2, 12)
    assert exponent(FinAbGroup.trivial()) == 1
    assert exponent(G(2, 2)) == 2
    with pytest.raises(InfiniteExponentError):
        exponent(G(free=1))


def test_invariant_factor_chain_enforced():
    with pytest.raises(ValueError):
        FinAbGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FinAbGroup(0, (1,))


def test_normalize_examples():
    assert normalize([], 2) == G(free=2)
    assert normalize([[2, 0], [0, 4]], 2) == G(2, 4)
    assert normalize([[2, 4], [6, 8]], 2) == G(2, 4)
    assert normalize([[1, 0]], 2) == G(free=1)


def test_from_cyclic_orders():
    assert FinAbGroup.from_cyclic_orders([6, 4]) == G(2, 12)
    assert FinAbGroup.from_cyclic_orders([1, 1]) == FinAbGroup.trivial()
    assert str(G(2, 4)) == "Z/2 + Z/4"
    assert str(FinAbGroup.trivial()) == "0"


def test_units_group_examples():
    assert units_group(1).group.is_trivial
    P = units_group(8)
    assert P.group == G(2, 2) and set(P.generators) == {3, 7}
    assert units_group(15).group == G(2, 4)


@pytest.mark.parametrize("t", [1, 2, 3, 4, 8, 9, 15, 16, 24, 27, 60, 97, 128, 210])
def test_units_generators_have_declared_orders(t):
    P = units_group(t)
    for g, d in zip(P.generators, P.group.invariant_factors):
        assert pow(g, d, t) == 1 % t
        assert all(pow(g, d // p, t) != 1 for p in factorize(d))


def test_units_mod_pm1_examples():
    assert units_mod_pm1(2)[0].is_trivial
    assert units_mod_pm1(8)[0] == G(2)
    assert units_mod_pm1(15)[0] == G(4)


@pytest.mark.parametrize("t", range(1, 121))
def test_units_mod_pm1_matches_enumeration(t):
    assert units_mod_pm1(t)[0] == brute_units_mod_pm1(t)


def test_dlog_examples():
    P = units_group(15)
    assert dlog(1, P) == (0, 0)
    i = P.generators.index(2) if 2 in P.generators else None
    coords = dlog(4, P)
    assert P.element(coords) == 4
    if i is not None:
        assert coords[i] == 2
    prod = 1
    for g in P.generators:
        prod = prod * g % 15
    assert dlog(prod, P) == (1,) * len(P.generators)
    with pytest.raises(NonUnitError):
        dlog(5, P)


@pytest.mark.parametrize("t", range(1, 201))
def test_dlog_inverts_element(t):
    P = units_group(t)
    for u in range(t):
        if gcd(u, t) == 1:
            assert P.element(dlog(u, P)) == u % t


def test_quotient_examples():
    assert quotient_by(G(4), [[2]]) == G(2)
    assert quotient_by(G(2, 4), []) == G(2, 4)
    # Z/4 + Z/2 by <(2,1)>, written in the normalized order Z/2 + Z/4 as <(1,2)>
    assert quotient_by(G(2, 4), [[1, 2]]) == G(4)


def test_quotient_by_enumeration():
    base = G(2, 4)
    for gens in ([[1, 0]], [[0, 2]], [[1, 1]], [[1, 2], [0, 2]]):
        span = {(0, 0)}
        while True:
            new = {tuple((a + b) % d for a, b, d in zip(x, g, (2, 4))) for x in span for g in gens} | span
            if new == span:
                break
            span = new
        cosets = {}
        for x in itertools.product(range(2), range(4)):
            cosets.setdefault(frozenset(tuple((a + b) % d for a, b, d in zip(x, s, (2, 4))) for s in span), x)
        reps = list(cosets)
        orders = []
        for c in reps:
            x = cosets[c]
            k, y = 1, x
            while tuple(y) not in span:
                y = tuple((a + b) % d for a, b, d in zip(y, x, (2, 4)))
                k += 1
            orders.append(k)
        assert quotient_by(base, gens) == group_from_element_orders(orders)


def test_quotient_map_is_homomorphism():
    Q = quotient_with_map(G(2, 12), [[1, 6]])
    for x, y in itertools.product(itertools.product(range(2), range(12)), repeat=2):
        s = (x[0] + y[0], x[1] + y[1])
        assert Q(s) == Q.target.reduce([a + b for a, b in zip(Q(x), Q(y))])
    assert Q([1, 6]) == Q.target.reduce([0] * Q.target.ngens)


def test_brute_exponent_agrees():
    for grp in (G(2, 12), G(2, 2), G(3, 9), FinAbGroup.trivial()):
        assert brute_exponent(grp) == exponent(grp)
