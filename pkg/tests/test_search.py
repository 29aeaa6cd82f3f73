import numpy as np
import pytest

from pgodd import search
from pgodd.known import exact_entries, known_table
from pgodd.parity import LineSet, PointSet, odd_lines
from pgodd.plane import get_plane

from oracles import brute_f


def test_exhaustive_q3_matches_oracle():
    t = search.exhaustive_f(3)
    assert [t.value(r) for r in range(14)] == list(brute_f(3))
    t.check()


def test_exhaustive_q3_split_across_workers():
    a = search.exhaustive_f(3, workers=1)
    b = search.exhaustive_f(3, workers=2)
    assert a.values() == b.values()


def test_exhaustive_refuses_large_planes():
    with pytest.raises(search.SearchError):
        search.exhaustive_f(7)


@pytest.mark.parametrize("q", (3, 5))
def test_dual_sweep_small(q):
    t = search.dual_sweep(q, 8 if q == 5 else 4)
    ref = known_table(q)
    for r, e in t.entries.items():
        if e.exact:
            assert e.lo == ref[r], (q, r)
    t.check()


def test_pruning_does_not_change_values():
    P = get_plane(5)
    for s in (4, 6):
        a = search.sweep_level(P, s, prune=True)
        b = search.sweep_level(P, s, prune=False)
        assert set(a.values) == set(b.values)
        assert a.leaves <= b.leaves


@pytest.mark.parametrize("q", (3, 5, 7))
def test_frame_stabilizer_order(q):
    P = get_plane(q)
    G = search.frame_stabilizer(P)
    assert len(G) == 24


def test_frame_stabilizer_q9_has_frobenius():
    assert len(search.frame_stabilizer(get_plane(9))) == 48


@pytest.mark.parametrize("q", (3, 4 + 1))
def test_generators_give_full_group(q):
    P = get_plane(q)
    assert search.group_order(search.collineation_generators(P)) == search.pgaml_order(q)


@pytest.mark.parametrize("q", (5, 7, 9))
def test_quadrangle_free_closed_forms(q):
    P = get_plane(q)
    for s in range(4, q + 2, 2):
        vals = set(search.quadrangle_free_values(P, s))
        assert s * q in vals
        assert 1 + (q + 2 - s) + (s - 1) * (q - 1) in vals


def test_verify_witness_rejects_tampering():
    P = get_plane(5)
    R = LineSet.from_indices(P.N, [0, 1, 2])
    from pgodd.parity import odd_points
    v = len(odd_points(P, R))
    assert search.verify_witness(P, "lines", R, 3, v)
    assert not search.verify_witness(P, "lines", R, 3, v + 2)
    assert not search.verify_witness(P, "lines", R, 4, v)
    with pytest.raises(search.SearchError):
        search.verify_witness(P, "circles", R, 3, v)


def test_dual_to_lines():
    P = get_plane(7)
    S = P.point_set(list(P.conic())[:4])
    w = len(odd_lines(P, S))
    assert len(search.dual_to_lines(P, S, w)) == w
    assert len(search.dual_to_lines(P, S, P.N - w)) == P.N - w
    with pytest.raises(search.SearchError):
        search.dual_to_lines(P, S, w + 1)


def test_substreams_are_stable_and_distinct():
    a = search.substream(42, "lemma1").integers(0, 1 << 30, 5)
    b = search.substream(42, "lemma1").integers(0, 1 << 30, 5)
    c = search.substream(42, "lemma3").integers(0, 1 << 30, 5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    assert search.substream_seed(1, "x") == search.substream_seed(1, "x")


@pytest.mark.parametrize("r", (11, 15, 18, 20, 27))
def test_random_witness_q9(r):
    target = exact_entries(9)[r]
    res = search.random_witness(9, r, target, seed=3, budget=30)
    assert res.value == target
    P = get_plane(9)
    kind = res.kind
    S = (LineSet if kind == "lines" else PointSet).from_hex(P.N, res.set.hex())
    if kind == "lines":
        assert search.verify_witness(P, kind, S, r, res.value)


def test_random_table_is_reproducible():
    a = search.random_table(7, seed=5, budget_per_r=2, rs=[10, 12])
    b = search.random_table(7, seed=5, budget_per_r=2, rs=[10, 12])
    assert a.to_csv() == b.to_csv()


def test_ftable_csv_columns():
    t = search.exhaustive_f(3)
    head = t.to_csv().split("\n")[0]
    assert head == "r,lo,hi,exact,witness-hex,method"


def test_config_validation():
    with pytest.raises((search.SearchError, ValueError)):
        search.SearchConfig(4, "exhaustive", None)
    with pytest.raises((search.SearchError, ValueError)):
        search.SearchConfig(5, "annealing", None)


def test_q11_r19_witness_below_reference_upper_end():
    # found by random_table(11, seed=11, budget_per_r=30); count confirmed by the oracle plane
    P = get_plane(11)
    R = LineSet.from_hex(P.N, "888310680803000000200c000c000401")
    assert search.verify_witness(P, "lines", R, 19, 22)
    assert known_table(11)[19] == (14, 26)
