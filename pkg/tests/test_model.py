import pytest

from genuscalc.model import (
    DegreeData,
    DegreeKind,
    MapModel,
    ModelError,
    SpaceModel,
    degree_kind,
    k_of,
    l_count,
    s_n,
    t_hat,
    t_n,
    t_total,
)


def space(*records, flavor="H"):
    return SpaceModel.from_records(flavor, records)


def test_t_n_examples():
    S = space({"degree": 3, "ker_exp": 2}, {"degree": 4, "coker_exp": 3})
    assert t_n(S, 3) == 6
    assert all(t_n(space(), n) == 1 for n in range(1, 10))
    assert t_n(space({"degree": 5, "ker_exp": 4}), 5) == 4


def test_t_total_examples():
    assert t_total(space({"degree": 3, "ker_exp": 2}, {"degree": 4, "coker_exp": 3})) == 6
    assert t_total(space()) == 1
    assert t_total(space({"degree": 2, "ker_exp": 2}, {"degree": 3, "ker_exp": 3})) == 6


def test_t_total_counts_coker_above_top_only_through_listed_degrees():
    # coker_exp of degree N feeds t_{N-1}; nothing above N exists
    assert t_total(space({"degree": 2, "coker_exp": 5})) == 5


def test_s_n_examples():
    assert s_n(space({"degree": 3, "rank": 1, "torsion_exp": 4}), 3) == 4
    assert s_n(space({"degree": 3, "rank": 0, "torsion_exp": 4}), 3) == 1
    assert s_n(space(), 7) == 1


def test_l_count_examples():
    assert l_count(space({"degree": 3, "rank": 2}, {"degree": 7, "rank": 1})) == 2
    assert l_count(space()) == 0
    assert l_count(space({"degree": 3, "rank": 0})) == 0


def test_t_hat_examples():
    X = space({"degree": 3, "rank": 1, "ker_exp": 2, "torsion_exp": 4})
    Y = space({"degree": 3, "rank": 1, "ker_exp": 3})
    assert t_hat(MapModel(X, Y, {3: [[1]]})) == 2 * 9 * 4
    assert t_hat(MapModel(space(), space())) == 1
    assert t_hat(MapModel(space(), space({"degree": 2, "ker_exp": 2}))) == 4


def test_k_examples():
    one = space({"degree": 3, "rank": 1})
    assert k_of(MapModel(one, one, {3: [[1]]})) == 1
    assert k_of(MapModel(one, one, {3: [[0]]})) == 2
    X = space({"degree": 3, "rank": 1}, {"degree": 7, "rank": 1})
    M = MapModel(X, one, {3: [[2]]})
    assert degree_kind(M, 3) is DegreeKind.ISO
    assert degree_kind(M, 7) is DegreeKind.X_ONLY
    assert k_of(M) == 2


def test_k_bounded_by_l():
    X = space({"degree": 2, "rank": 2}, {"degree": 4, "rank": 1})
    Y = space({"degree": 2, "rank": 1}, {"degree": 5, "rank": 3})
    M = MapModel(X, Y, {2: [[1, 0]]})
    assert k_of(M) <= l_count(X) + l_count(Y)
    assert k_of(M) == 4


def test_validation_errors():
    with pytest.raises(ModelError, match="degree 3"):
        DegreeData(3, rank=-1)
    with pytest.raises(ModelError):
        DegreeData(0)
    with pytest.raises(ModelError):
        SpaceModel("K")
    with pytest.raises(ModelError):
        space({"degree": 2}, {"degree": 2})
    one = space({"degree": 3, "rank": 1})
    two = space({"degree": 3, "rank": 2})
    with pytest.raises(ModelError, match="degree 3"):
        MapModel(one, two, {3: [[1, 0]]})
    with pytest.raises(ModelError, match="no matrix"):
        MapModel(one, one)
    with pytest.raises(ModelError, match="flavor"):
        MapModel(one, space({"degree": 3, "rank": 1}, flavor="coH"), {3: [[1]]})
    with pytest.raises(ModelError):
        MapModel(one, space(), {3: [[1]]})


def test_cohomological_flavor_uses_same_formulas():
    X = space({"degree": 4, "rank": 1, "coker_exp": 3}, flavor="coH")
    Y = space({"degree": 4, "rank": 1, "torsion_exp": 5}, flavor="coH")
    M = MapModel(X, Y, {4: [[0]]})
    assert M.flavor == "coH"
    assert t_hat(M) == 3 * 5
