"""One check per acceptance criterion; each prints a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import time

import numpy as np
import pytest

from pgodd import bounds, constructions as cons, decomp, search
from pgodd.known import exact_entries, known_table, open_entries
from pgodd.parity import odd_points
from pgodd.plane import get_plane
from pgodd.verify import run_suite

from conftest import ACCEPTANCE


def report(key: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}"
    ACCEPTANCE[key] = line
    print(line)


def lipschitz_ok(q: int, values: dict[int, int]) -> bool:
    N = q * q + q + 1
    return all(abs(values[r + 1] - values[r]) <= q - 1 for r in range(1, N - 2) if r in values and r + 1 in values)


def test_c1_table1_q3():
    t0 = time.perf_counter()
    t = search.exhaustive_f(3)
    dt = time.perf_counter() - t0
    vals = t.values()
    ok = [vals[r] for r in range(1, 7)] == [4, 6, 6, 4, 4, 2] and all(vals[r] == vals[13 - r] for r in range(14))
    report("1", ok and dt < 1.0, f"q=3 exhaustive f(1..6)={[vals[r] for r in range(1, 7)]} in {dt:.2f}s")
    assert ok and dt < 1.0


def test_c2_table2_q5():
    t0 = time.perf_counter()
    t = search.exhaustive_f(5, workers=1)
    dt = time.perf_counter() - t0
    vals = t.values()
    ref = known_table(5)
    ok = all(vals[r] == ref[r] for r in range(32))
    anchors = (vals[3], vals[7], vals[10], vals[15]) == (12, 8, 2, 4)
    t.check()
    report("2", ok and anchors and dt <= 600, f"q=5 exhaustive, 2^31 subsets, all 15 values match in {dt:.1f}s")
    assert ok and anchors and dt <= 600


def test_c3_theory_slice_q7():
    t0 = time.perf_counter()
    recs = bounds.assemble(7)
    dt = time.perf_counter() - t0
    want = {r: r * (9 - r) for r in range(1, 9)}
    want.update({9: 12, 13: 8, 14: 2, 15: 6})
    want.update({57 - r: v for r, v in list(want.items())})
    ok = all(recs[r].lo == recs[r].hi == v for r, v in want.items())
    report("3", ok and dt < 1.0, f"q=7 closed forms certify {len(want)} entries in {dt:.3f}s")
    assert ok and dt < 1.0


def test_c4_table3_q7():
    t0 = time.perf_counter()
    t = search.dual_sweep(7, 12, budget=4 * 3600)
    dt = time.perf_counter() - t0
    ref = known_table(7)
    bad = [r for r in range(58) if not (t.entries[r].exact and t.entries[r].lo == ref[r])]
    t.check()
    report("4", not bad, f"q=7 dual sweep to s=12 certifies all 58 entries in {dt:.1f}s (mismatches {bad})")
    assert not bad


def test_c5_witnesses_q9_q11():
    missed = []
    n = 0
    slowest = 0.0
    for q in (9, 11):
        P = get_plane(q)
        N = P.N
        for r, v in sorted(exact_entries(q).items()):
            if r in (0, N) or r > N // 2:
                continue
            res = search.random_witness(q, r, v, seed=2024, budget=120, plane=P)
            n += 1
            slowest = max(slowest, res.elapsed)
            if res.value != v or not search.verify_witness(P, res.kind, res.set, r, res.value):
                missed.append((q, r, v, res.value))
    P9 = get_plane(9)
    e8 = cons.baer_eq8(P9)
    le = cons.lemmaE_set(P9, 2, 0)
    anchors = e8.size == 15 and e8.achieved == 12 and le.size == 18 and le.achieved == 2
    ok = not missed and anchors
    report("5", ok, f"{n} exact entries at q=9,11 witnessed (slowest {slowest:.1f}s), missed {missed}; "
                    f"anchors baer_eq8 f(15)=12, lemmaE(2,0) f(18)=2: {anchors}")
    assert ok


def test_c6_table5_intervals():
    sweep = search.dual_sweep(11, 8, budget=600)
    t = search.random_table(11, seed=11, budget_per_r=30, rs=sorted(open_entries(11)))
    sweep.check()
    t.check()
    recs = bounds.assemble(11, sweep.as_sources() + t.as_sources())
    rows = []
    ok = True
    for r, (plo, phi) in sorted(open_entries(11).items()):
        if r > 66:
            continue
        lo, hi = recs[r].lo, recs[r].hi
        good = lo <= phi and plo <= hi and hi <= phi
        ok &= good
        rows.append(f"r={r}:[{int(lo)},{int(hi)}] vs [{plo},{phi}]")
    report("6", ok, "q=11 ranged entries " + ", ".join(rows))
    assert ok


@pytest.mark.parametrize("q", (3, 5, 7, 9, 11, 13))
def test_c7_property_suites(q):
    rows = []
    for suite in ("lemma1", "lemma3", "q-parity", "lemma9", "theorem4"):
        rows += run_suite(suite, q, seed=q, cases=10_000)
    ok = all(r.passed for r in rows)
    # certified tables must be Lipschitz too
    if q in (3, 5):
        ok &= lipschitz_ok(q, search.exhaustive_f(q).values())
    ok &= lipschitz_ok(q, {r: v for r, v in exact_entries(q).items()} if q <= 11 else {})
    fails = [r.name for r in rows if not r.passed]
    report(f"7.q{q}", ok, f"q={q}: {len(rows)} properties at 10^4 cases, failures {fails}")
    assert ok


def test_c8_decomposition_suite():
    t0 = time.perf_counter()
    count = 0
    bad = []
    for r in range(4, 201):
        total = decomp.binom2(r)
        lo = decomp.lemma8_lower(r)
        lo += (total - lo) % 2
        for s in range(lo, total + 1, 2):
            d = decomp.build_simple(r, s)
            d.verify()
            count += 1
            if d.m_value() != s:
                bad.append((r, s))
    oracle_ok = True
    for r in range(4, 9):
        simple = decomp.brute_min_M(r).simple
        built = set()
        for s in range(decomp.binom2(r) + 1):
            try:
                decomp.build_simple(r, s)
                built.add(s)
            except decomp.DecompositionError:
                pass
        oracle_ok &= built == simple
    try:
        decomp.simplify(decomp.fano())
        fano_ok = False
    except decomp.DecompositionError as exc:
        fano_ok = exc.threshold == 7
    dt = time.perf_counter() - t0
    ok = not bad and oracle_ok and fano_ok and dt <= 600
    report("8", ok, f"{count} window builds for r<=200, brute force r<=8 {oracle_ok}, Fano threshold 7 {fano_ok}, "
                    f"{dt:.0f}s")
    assert ok


@pytest.mark.parametrize("q", (25, 27, 31))
def test_c9_realization(q):
    P = get_plane(q)
    rng = search.substream(q, "criterion9")
    lo, hi = int(np.ceil(0.42 * q * q / 2)), int(0.6 * q * q // 2)
    ws = [2 * int(x) for x in rng.integers(lo, hi + 1, 20)]
    bad = []
    slowest = 0.0
    for w in ws:
        t0 = time.perf_counter()
        res = cons.realize_f_upper(P, w)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        bound = w / q + 5 * (w**1.5 / q**2.5 + 1)
        if res.achieved != w or res.size > bound or dt > 60:
            bad.append(w)
    report(f"9.q{q}", not bad, f"q={q}: 20 targets in [0.42q^2, 0.6q^2], exact w, size bound held; "
                               f"slowest {slowest:.2f}s, failures {bad}")
    assert not bad


def _baer_checks():
    P = get_plane(9)
    parts = P.singer_baer_partition()
    union = 0
    disjoint = True
    for B in parts:
        disjoint &= not (union & B.points.bits)
        union |= B.points.bits
    e7, e8, e9 = cons.baer_eq7(P), cons.baer_eq8(P), cons.baer_eq9(P)
    sets_ok = all(e.odd_set.hex() == e.params["expected_odd"] for e in (e7, e8, e9))
    return len(parts) == 7 and disjoint, (e7.achieved, e8.achieved, e9.achieved), sets_ok


def test_c10_baer_singer():
    t0 = time.perf_counter()
    part_ok, values, sets_ok = _baer_checks()
    dt = time.perf_counter() - t0
    # B1 u B2 has 2(q + sqrt q + 1) = 26 points at q = 9
    ok = part_ok and values == (14, 12, 26) and sets_ok and dt < 30
    report("10", ok, f"q=9 Singer partition 7 disjoint subplanes {part_ok}; eq7/eq8/eq9 achieved {values}, "
                     f"odd sets as claimed {sets_ok}; {dt:.1f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="eq9 odd set B1 u B2 has 26 points at q=9, not 28; see decisions ledger")
def test_c10_literal_eq9_value_28():
    _, values, _ = _baer_checks()
    ok = values[2] == 28
    report("10.literal", ok, f"eq9 achieved value {values[2]} vs stated 28")
    assert ok
