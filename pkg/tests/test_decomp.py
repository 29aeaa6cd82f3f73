import math

import pytest
from hypothesis import given, settings, strategies as st

from pgodd import decomp
from pgodd.decomp import (CliqueDecomposition, DecompositionError, binom2, brute_min_M, build_simple, lemma8_lower,
                          m_value, one_factorization, partial_matchings, simple_exists, simplify)

from oracles import clique_decomposition_Ms


@pytest.mark.parametrize("r", range(2, 7))
def test_brute_force_against_oracle(r):
    assert brute_min_M(r).achievable == clique_decomposition_Ms(r)


@pytest.mark.parametrize("r", range(4, 9))
def test_build_matches_brute_force(r):
    simple = brute_min_M(r).simple
    for s in range(binom2(r) + 1):
        try:
            d = build_simple(r, s)
        except DecompositionError:
            assert s not in simple, (r, s)
        else:
            d.verify()
            assert d.m_value() == s and s in simple


@pytest.mark.parametrize("r", range(4, 9))
def test_parity_of_M(r):
    assert all((M - binom2(r)) % 2 == 0 for M in brute_min_M(r).achievable)


@settings(max_examples=150, deadline=None)
@given(st.integers(4, 120), st.data())
def test_window_builds(r, data):
    lo, hi = lemma8_lower(r), binom2(r)
    s = data.draw(st.integers(lo, hi))
    s -= (s - hi) % 2
    if s < lo:
        s += 2
    assert simple_exists(r, s)
    d = build_simple(r, s)
    d.verify()
    assert d.m_value() == s
    full = d.to_cliques()
    full.validate()
    assert m_value(full) == s and full.is_simple()


def test_wrong_parity_rejected():
    assert simple_exists(10, binom2(10) - 1) is False
    with pytest.raises(DecompositionError):
        build_simple(10, binom2(10) - 1)


def test_k6_plus_edges():
    d = build_simple(7, 9)
    assert len(d.big) == 6 and d.n_triangles == 0 and d.n_edges == 6


@pytest.mark.parametrize("n", [2, 4, 6, 10, 16])
def test_one_factorization(n):
    F = one_factorization(n)
    assert len(F) == n - 1
    seen = set()
    for m in F:
        assert len(m) == n // 2
        assert len({v for e in m for v in e}) == n
        seen.update(tuple(sorted(e)) for e in m)
    assert len(seen) == binom2(n)


@pytest.mark.parametrize("n", [3, 5, 7, 8])
def test_partial_matchings_cover(n):
    edges = [tuple(sorted(e)) for m in partial_matchings(n) for e in m]
    assert len(edges) == len(set(edges)) == binom2(n)


def test_fano_rejected_at_threshold_seven():
    F = decomp.fano()
    assert m_value(F) == 7 and F.is_simple()
    with pytest.raises(DecompositionError) as exc:
        simplify(F)
    assert exc.value.threshold == 7


def test_simplify_below_threshold():
    r = 12
    d = build_simple(r, lemma8_lower(r)).to_cliques()
    M = m_value(d)
    if M < decomp.lemma7_threshold(r):
        out = simplify(d)
        assert out.m_value() == M


def test_threshold_formula():
    assert decomp.lemma7_threshold(7) == 7
    assert math.isclose(decomp.lemma7_threshold(13), 13 * (math.sqrt(49) - 1) / 4)


def test_invalid_cliques():
    with pytest.raises(DecompositionError):
        CliqueDecomposition(4, [(0, 1, 2), (0, 1)]).validate()
