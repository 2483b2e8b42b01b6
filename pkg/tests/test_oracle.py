import pytest

from genuscalc.abgroup import FinAbGroup, units_group
from genuscalc.genus import in_t_prime
from genuscalc.intalg import IntMatrix
from genuscalc.ntheory import totient
from genuscalc.oracle import (
    OracleGuardError,
    brute_exponent,
    brute_units_exponent,
    enum_det_pairs,
    enum_units,
    group_from_element_orders,
)


def test_enum_units_examples():
    assert enum_units(8) == {1, 3, 5, 7}
    assert enum_units(1) == {0}
    with pytest.raises(OracleGuardError):
        enum_units(10**7)


def test_brute_exponent_examples():
    assert brute_exponent(FinAbGroup(0, (2, 12))) == 12
    with pytest.raises(OracleGuardError):
        brute_exponent(FinAbGroup(1))


def test_brute_units_exponent():
    assert brute_units_exponent(8) == 2
    assert brute_units_exponent(15) == 4
    assert brute_units_exponent(1) == 1
    assert len(enum_units(36)) == totient(36)


def test_group_from_element_orders():
    assert group_from_element_orders([1, 2, 2, 2]) == FinAbGroup(0, (2, 2))
    assert group_from_element_orders([1, 2, 4, 4]) == FinAbGroup.cyclic(4)
    assert group_from_element_orders([1]) == FinAbGroup.trivial()


def test_enum_det_pairs_examples():
    rep = enum_det_pairs([[1]], 1, 1, 5, box=6)
    assert rep.found_pairs == {(u, u) for u in (1, 2, 3, 4)}
    rep = enum_det_pairs([[0]], 1, 1, 3, box=4)
    assert rep.found_pairs == {(1, 1), (1, 2), (2, 1), (2, 2)}
    rep = enum_det_pairs(None, 2, 0, 7, box=7)
    assert rep.found_pairs == {(u,) for u in range(1, 7)}


def test_witnesses_are_admissible():
    C = IntMatrix.diag([2, 0])
    rep = enum_det_pairs(C, 2, 2, 5, box=3)
    for dets, pair in rep.witnesses.items():
        assert in_t_prime(pair, C, 5)
        assert tuple(d % 5 for d in pair.dets) == dets
    assert set(rep.witnesses) == set(rep.found_pairs)


@pytest.mark.parametrize("C,rx,ry", [([[1]], 1, 1), ([[2, 0]], 2, 1), ([[0]], 1, 1)])
def test_box_monotone(C, rx, ry):
    prev = frozenset()
    for box in range(0, 5):
        cur = enum_det_pairs(C, rx, ry, 7, box=box).found_pairs
        assert prev <= cur
        prev = cur


def test_guards():
    with pytest.raises(OracleGuardError):
        enum_det_pairs([[1]], 1, 1, 72)
    with pytest.raises(OracleGuardError):
        enum_det_pairs(IntMatrix.identity(4), 4, 4, 3)
    with pytest.raises(OracleGuardError):
        enum_det_pairs(IntMatrix.identity(3), 3, 3, 5, box=5)


def test_units_structure_against_brute_force():
    for t in range(1, 150):
        P = units_group(t)
        assert P.group.order == totient(t) if t > 1 else P.group.order == 1
        assert brute_units_exponent(t) == (P.group.invariant_factors[-1] if P.group.ngens else 1)
