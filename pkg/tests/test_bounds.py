import pytest
from hypothesis import given, settings, strategies as st

from pgodd import bounds
from pgodd.bounds import BoundRecord, BoundsError, assemble, lift_down, lift_up, residue
from pgodd.known import known_table

QS = (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27)


def _interval(entry):
    return (entry, entry) if isinstance(entry, int) else entry


@pytest.mark.parametrize("q", QS)
def test_assembled_intervals_are_consistent(q):
    recs = assemble(q)
    N = q * q + q + 1
    assert [r.r for r in recs] == list(range(N + 1))
    for rec in recs:
        assert rec.lo <= rec.hi
        assert recs[N - rec.r].lo == rec.lo and recs[N - rec.r].hi == rec.hi
        if 0 < rec.r < N:
            assert (rec.lo - residue(q, rec.r)) % 4 == 0


@pytest.mark.parametrize("q", (3, 5, 7, 9, 11))
def test_known_values_inside(q):
    recs = assemble(q)
    for r, e in known_table(q).items():
        a, b = _interval(e)
        assert recs[r].lo <= b and a <= recs[r].hi, (q, r, recs[r], e)


def test_q3_theory_alone_is_exact():
    assert [int(r.hi) for r in assemble(3)] == [0, 4, 6, 6, 4, 4, 2, 2, 4, 4, 6, 6, 4, 0]
    assert all(r.exact for r in assemble(3))


def test_q7_theory_slice():
    recs = assemble(7)
    for r in range(1, 9):
        assert recs[r].lo == recs[r].hi == r * (9 - r)
    for r, v in {9: 12, 13: 8, 14: 2, 15: 6}.items():
        assert recs[r].lo == recs[r].hi == v


@pytest.mark.parametrize("q", QS)
def test_lipschitz_on_exact_runs(q):
    recs = assemble(q)
    N = q * q + q + 1
    for r in range(1, N - 2):
        a, b = recs[r], recs[r + 1]
        if a.exact and b.exact:
            assert abs(a.lo - b.lo) <= q - 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 400), st.integers(0, 3))
def test_lifts(x, cls):
    up, down = lift_up(x, cls), lift_down(x, cls)
    assert up >= x and up - x < 4 and (up - cls) % 4 == 0
    assert down <= x and x - down < 4 and (down - cls) % 4 == 0


@pytest.mark.parametrize("q", (3, 5, 7, 9, 11, 13))
def test_small_r_exact(q):
    for r in range(q + 2):
        assert bounds.exact_small(q, r) == r * (q + 2 - r)
    with pytest.raises(ValueError):
        bounds.exact_small(q, q + 2)


def test_fq2_interval():
    assert bounds.fq2_interval(11) == (20, 20)
    lo, hi = bounds.fq2_interval(17)
    assert hi == 32 and lo <= hi and lo >= 27


def test_constructive_instances_are_bounds():
    # every closed-form instance value is at least the table value
    for q in (5, 7, 9, 11):
        K = known_table(q)
        for r, e in K.items():
            for v, tag, params in bounds.constructive_instances(q, r):
                assert v >= _interval(e)[0], (q, r, tag, params)


def test_contradictory_source_raises():
    with pytest.raises(BoundsError):
        assemble(5, [{"r": 3, "lo": None, "hi": 4, "tag": "bogus"}])


@pytest.mark.parametrize("q", (5, 7, 9))
def test_max_of_f_against_reference(q):
    recs = [BoundRecord(q, r, v, v) for r, v in sorted(known_table(q).items())]
    rep = bounds.max_of_f(q, recs)
    assert rep.value == (q * q + 4 * q + 3) / 4
    assert rep.consistent


def test_csv_shape():
    text = bounds.records_to_csv(assemble(3))
    lines = text.strip().split("\n")
    assert lines[0] == "q,r,lo,hi,exact,provenance"
    assert len(lines) == 15
