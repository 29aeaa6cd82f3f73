from itertools import combinations

import numpy as np
import pytest

from pgodd.plane import PlaneError, check_subplane, get_plane
from pgodd.parity import incidence_rank

from oracles import prime_plane


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25])
def test_axioms(q):
    P = get_plane(q)
    N = q * q + q + 1
    assert P.N == N
    inc = P.incidence.astype(np.int64)
    assert np.all(inc.sum(axis=0) == q + 1) and np.all(inc.sum(axis=1) == q + 1)
    # two lines meet in one point, two points span one line
    G = inc @ inc.T
    assert np.all(G[~np.eye(N, dtype=bool)] == 1)
    H = inc.T @ inc
    assert np.all(H[~np.eye(N, dtype=bool)] == 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_matches_oracle_by_coordinates(p):
    P = get_plane(p)
    pts, lines, index = prime_plane(p)
    for l in range(P.N):
        oracle_line = index[P.normalize(P.line(l))]
        got = {index[P.normalize(P.point(i))] for i in P.line_points[l]}
        assert got == set(lines[oracle_line])


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_meet_and_join(q):
    P = get_plane(q)
    for a, b in list(combinations(range(P.N), 2))[:300]:
        l = P.line_through(a, b)
        assert P.on(a, l) and P.on(b, l)
        m = P.meet(a, b)
        assert P.on(m, a) and P.on(m, b)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_conic_and_classes(q):
    P = get_plane(q)
    C = P.conic()
    assert len(C) == q + 1
    assert P.intersection_sizes(C).max() == 2
    assert len(P.primary_tangents) == q + 1
    classes = [P.point_class(p) for p in range(P.N)]
    assert classes.count("C") == q + 1
    assert classes.count("B") == q * (q + 1) // 2
    assert classes.count("A") == q * (q - 1) // 2
    assert P.intersection_sizes(C)[P.exterior_line()] == 0


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_rank(q):
    assert incidence_rank(get_plane(q)) == q * q + q


@pytest.mark.parametrize("q", [9, 25])
def test_baer(q):
    P = get_plane(q)
    B = P.subfield_baer()
    s = P.sqrt_q
    assert len(B.points) == q + s + 1
    sizes = P.intersection_sizes(B.points)
    assert set(np.unique(sizes).tolist()) == {1, s + 1}


def test_singer_partition_q9():
    P = get_plane(9)
    parts = P.singer_baer_partition()
    assert len(parts) == 7
    union = parts[0].points
    for B in parts[1:]:
        assert len(union & B.points) == 0
        union = union | B.points
    assert len(union) == P.N


def test_not_square():
    with pytest.raises(PlaneError):
        get_plane(7).sqrt_q


def test_check_subplane_rejects_line():
    P = get_plane(9)
    with pytest.raises(PlaneError):
        check_subplane(P, P.points_of(0), 3)
