import pytest

from gmcs import (
    FREE,
    ONE,
    ZERO,
    AdjacencyTemplate,
    EdgeSet,
    InvalidEdgeError,
    TrueModel,
    all_pairs,
    edge_index,
    edge_pair,
    n_pairs,
)


def enumerate_pairs(n):
    """Independent enumeration oracle for the declared pair order."""
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def test_edge_index_basic():
    assert edge_index(1, 2, 4) == 1
    assert edge_index(3, 4, 4) == 6


def test_edge_index_matches_enumeration():
    pairs = enumerate_pairs(5)
    assert pairs.index((2, 4)) + 1 == 6
    assert edge_index(2, 4, 5) == 6
    for k, (i, j) in enumerate(pairs, start=1):
        assert edge_index(i, j, 5) == k


def test_edge_pair_basic():
    assert edge_pair(1, 4) == (1, 2)
    assert edge_pair(6, 4) == (3, 4)


def test_edge_pair_matches_enumeration():
    # enumeration gives (2,5) at position 7 and (3,4) at position 8 for N=5
    pairs = enumerate_pairs(5)
    assert pairs[6] == (2, 5)
    assert edge_pair(7, 5) == (2, 5)
    assert edge_pair(8, 5) == (3, 4)


def test_index_pair_bijective_exhaustive():
    for n in range(2, 65):
        pairs = enumerate_pairs(n)
        assert len(pairs) == n_pairs(n)
        assert all_pairs(n) == pairs
        for k, (i, j) in enumerate(pairs, start=1):
            assert edge_index(i, j, n) == k
            assert edge_pair(k, n) == (i, j)


@pytest.mark.parametrize("i,j,n", [(2, 2, 4), (3, 2, 4), (0, 1, 4), (1, 5, 4)])
def test_edge_index_rejects_bad_pairs(i, j, n):
    with pytest.raises(InvalidEdgeError):
        edge_index(i, j, n)


@pytest.mark.parametrize("k,n", [(0, 4), (7, 4), (-1, 5)])
def test_edge_pair_rejects_bad_index(k, n):
    with pytest.raises(InvalidEdgeError):
        edge_pair(k, n)


def test_edge_set_validation_and_ops():
    s = EdgeSet.of(4, [(1, 2), (3, 4)])
    assert len(s) == 2
    assert (1, 2) in s
    assert list(s) == [(1, 2), (3, 4)]
    assert sorted(s.complement().members) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert s.issubset(EdgeSet.of(4, all_pairs(4)))
    with pytest.raises(InvalidEdgeError):
        EdgeSet.of(4, [(2, 2)])
    with pytest.raises(InvalidEdgeError):
        EdgeSet.of(4, [(1, 5)])


def test_true_model_complement():
    t = TrueModel(4, EdgeSet.of(4, [(1, 2), (1, 3)]))
    assert sorted(t.edge_set.members) == [(1, 4), (2, 3), (2, 4), (3, 4)]


def test_template_requires_full_assignment():
    with pytest.raises(InvalidEdgeError):
        AdjacencyTemplate(4, {(1, 2): ONE})
    entries = {e: FREE for e in all_pairs(4)}
    entries[(1, 2)] = "maybe"
    with pytest.raises(InvalidEdgeError):
        AdjacencyTemplate(4, entries)


def test_template_counts_partition_all_pairs():
    entries = {e: FREE for e in all_pairs(5)}
    entries[(1, 2)] = ONE
    entries[(4, 5)] = ZERO
    t = AdjacencyTemplate(5, entries)
    assert t.count(ONE) + t.count(ZERO) + t.count(FREE) == n_pairs(5)
    assert t.n_graphs_log2 == n_pairs(5) - 2
    assert t.pairs(ONE) == [(1, 2)]
