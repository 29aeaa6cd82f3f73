"""Closed-form bounds and exact values of f(r), fused into per-r intervals.

f(r) is the least number of odd points of r distinct lines of PG(2,q).
Every record carries a certified lower bound ``lo``, an upper bound ``hi``
and the tags of the facts that produced them.

Tags: Thm-init (r <= q+1), Thm-2q (r in 2q-1..2q+1), Thm-q+2 (r = q+2),
Cong (parity/mod-4 floor), Lip (neighbour propagation), Sym (f(N-r) = f(r)),
Triv (rq+1), L32/LE/LO (residue, vertical and conic constructions),
Baer7/Baer8/Baer9 (Baer subplane constructions), search:<method>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .gf import FieldSpec

INF = math.inf


class BoundsError(RuntimeError):
    pass


@dataclass
class BoundRecord:
    q: int
    r: int
    lo: float
    hi: float
    provenance: list[str] = field(default_factory=list)
    witness: Optional[dict] = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def as_row(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "lo": int(self.lo),
            "hi": None if self.hi == INF else int(self.hi),
            "exact": self.exact,
            "provenance": ";".join(self.provenance),
        }


def N_of(q: int) -> int:
    return q * q + q + 1


def residue(q: int, r: int) -> int:
    """f(r) mod 4 for 0 < r < N."""
    return (r * (q + 2 - r)) % 4


def lift_up(x: float, cls: int) -> float:
    """Least value >= x congruent to cls mod 4."""
    if x == INF:
        return x
    x = math.ceil(x)
    return x + (cls - x) % 4


def lift_down(x: float, cls: int) -> float:
    if x == INF:
        return x
    x = math.floor(x)
    return x - (x - cls) % 4


def _check_r(q: int, r: int) -> None:
    if not 0 <= r <= N_of(q):
        raise ValueError(f"r={r} outside 0..{N_of(q)}")


def exact_small(q: int, r: int) -> int:
    """f(r) = r(q+2-r) for 0 <= r <= q+1 (conic subsets are optimal)."""
    if not 0 <= r <= q + 1:
        raise ValueError(f"exact_small needs 0 <= r <= q+1, got r={r}")
    return r * (q + 2 - r)


def exact_near_2q(q: int, r: int) -> int:
    table = {2 * q - 1: q + 1, 2 * q: 2, 2 * q + 1: q - 1}
    if r not in table:
        raise ValueError(f"exact_near_2q needs r in 2q-1..2q+1, got r={r}")
    return table[r]


def fq2_interval(q: int) -> tuple[int, int]:
    """Interval for f(q+2): exact 2q-2 for q <= 13, else [3(q+1)/2 lifted, 2q-2]."""
    if q < 3:
        raise ValueError("q must be at least 3")
    hi = 2 * q - 2
    if q <= 13:
        return hi, hi
    return int(lift_up(1.5 * (q + 1), residue(q, q + 2))), hi


def cong_floor(q: int, r: int) -> int:
    _check_r(q, r)
    N = N_of(q)
    if r in (0, N):
        return 0
    base = max(2, r * (q + 2 - r))
    return int(lift_up(base, residue(q, r)))


def trivial_upper(q: int, r: int) -> int:
    return min(r * q + 1, (N_of(q) - r) * q + 1)


def is_square(q: int) -> bool:
    return math.isqrt(q) ** 2 == q


def constructive_instances(q: int, r: int) -> list[tuple[int, str, dict]]:
    """All (value, tag, params) upper-bound instances representing r directly."""
    out = []
    half = (q - 1) // 2
    base32 = 3 * (q - 1) // 2
    for k in range(half + 1):
        j = r - base32 - k * q
        if 0 <= j <= q + 1:
            out.append((3 * q + j * (q + 2 - j), "L32", {"k": k, "j": j}))
        if k % 2 == 0:
            j = r - k * q
            if 0 <= j <= q + 1:
                out.append((k + j * (q + 2 - j), "LE", {"k": k, "j": j}))
            j = r - (q + 1) - k * q
            if 0 <= j <= q - 1:
                out.append((q + 1 + k + j * (q + 2 - j), "LO", {"k": k, "j": j}))
    if is_square(q):
        s = math.isqrt(q)
        baer = {
            2 * q + s: (q + s + 2, "Baer7"),
            2 * q - s: (q + s, "Baer8"),
            2 * q + 2 * s + 2: (2 * q + 2 * s + 2, "Baer9"),
        }
        if r in baer:
            v, tag = baer[r]
            out.append((v, tag, {}))
    return out


def upper_constructive(q: int, r: int) -> tuple[float, Optional[str]]:
    """Best formula upper bound on f(r), with the tag that achieves it."""
    _check_r(q, r)
    N = N_of(q)
    best, tag = float(trivial_upper(q, r)), "Triv"
    for rr, prefix in ((r, ""), (N - r, "Sym:")):
        for v, t, params in constructive_instances(q, rr):
            if v < best:
                best, tag = v, prefix + _fmt(t, params)
    return best, tag


def _fmt(tag: str, params: dict) -> str:
    if not params:
        return tag
    return tag + "[" + ",".join(f"{k}={v}" for k, v in params.items()) + "]"


def _tighten(rec: BoundRecord, lo: float, hi: float, tag: str) -> bool:
    changed = False
    if lo > rec.lo:
        rec.lo = lo
        changed = True
        rec.provenance.append(f"lo:{tag}")
    if hi < rec.hi:
        rec.hi = hi
        changed = True
        rec.provenance.append(f"hi:{tag}")
    return changed


def lipschitz_closure(records: list[BoundRecord]) -> list[BoundRecord]:
    """Propagate |f(r+1)-f(r)| <= q-1 (0 < r < N-2), symmetry and mod 4 to a fixpoint."""
    q = records[0].q
    N = N_of(q)
    if len(records) != N + 1:
        raise BoundsError("closure needs one record per r = 0..N")
    step = q - 1
    changed = True
    while changed:
        changed = False
        for r in range(1, N - 2):
            a, b = records[r], records[r + 1]
            changed |= _tighten(b, a.lo - step, a.hi + step, "Lip")
            changed |= _tighten(a, b.lo - step, b.hi + step, "Lip")
        for r in range(N + 1):
            a, b = records[r], records[N - r]
            changed |= _tighten(a, b.lo, b.hi, "Sym")
        for r in range(1, N):
            rec = records[r]
            cls = residue(q, r)
            changed |= _tighten(rec, lift_up(max(rec.lo, 2), cls), lift_down(rec.hi, cls), "Cong")
    for rec in records:
        if rec.lo > rec.hi:
            raise BoundsError(f"inconsistent interval at r={rec.r}: [{rec.lo}, {rec.hi}]")
    return records


@dataclass
class MaxReport:
    q: int
    value: float
    argmax: list[int]
    table_max: Optional[float] = None
    table_argmax: Optional[list[int]] = None

    @property
    def consistent(self) -> Optional[bool]:
        if self.table_max is None:
            return None
        return self.table_max == self.value and sorted(self.table_argmax) == sorted(self.argmax)


def max_of_f(q: int, records: Optional[list[BoundRecord]] = None) -> MaxReport:
    """The large-q maximum (q^2+4q+3)/4 and where it occurs.

    With ``records`` whose entries are all exact, also reports the table's
    own maximum for comparison.
    """
    N = N_of(q)
    a, b = (q + 1) // 2, (q + 3) // 2
    rep = MaxReport(q, (q * q + 4 * q + 3) / 4, [a, b, N - b, N - a])
    if records is not None and all(rec.exact for rec in records):
        m = max(rec.hi for rec in records)
        rep.table_max = m
        rep.table_argmax = [rec.r for rec in records if rec.hi == m]
    return rep


def theory_records(q: int) -> list[BoundRecord]:
    """Records seeded from closed forms only, before closure."""
    FieldSpec.from_q(q).validate()
    N = N_of(q)
    recs = []
    for r in range(N + 1):
        lo = cong_floor(q, r)
        tags = ["Cong"]
        hi, tag = upper_constructive(q, r)
        tags.append(f"hi:{tag}")
        rec = BoundRecord(q, r, lo, hi, tags)
        for rr in (r, N - r):
            if rr <= q + 1:
                v = exact_small(q, rr)
                _tighten(rec, v, v, "Thm-init")
            if 2 * q - 1 <= rr <= 2 * q + 1:
                v = exact_near_2q(q, rr)
                _tighten(rec, v, v, "Thm-2q")
            if rr == q + 2:
                lo2, hi2 = fq2_interval(q)
                _tighten(rec, lo2, hi2, "Thm-q+2")
        recs.append(rec)
    return recs


def merge(records: list[BoundRecord], r: int, lo: Optional[float], hi: Optional[float], tag: str,
          witness: Optional[dict] = None) -> None:
    rec = records[r]
    before = rec.hi
    _tighten(rec, -INF if lo is None else lo, INF if hi is None else hi, tag)
    if witness is not None and (hi is not None and hi <= before) and (rec.witness is None or hi < before):
        rec.witness = witness


def assemble(q: int, sources: Iterable[dict] = ()) -> list[BoundRecord]:
    """Per-r intervals from all closed forms plus optional extra sources.

    Each source is a dict with keys r, lo (or None), hi (or None), tag and
    optionally witness ({"kind": "lines", "hex": ...}).  Sources are only
    as trustworthy as their producers; search results are verified before
    they get here.
    """
    recs = theory_records(q)
    for src in sources:
        merge(recs, src["r"], src.get("lo"), src.get("hi"), src["tag"], src.get("witness"))
    return lipschitz_closure(recs)


def records_to_csv(records: list[BoundRecord]) -> str:
    lines = ["q,r,lo,hi,exact,provenance"]
    for rec in records:
        row = rec.as_row()
        hi = "" if row["hi"] is None else row["hi"]
        lines.append(f"{row['q']},{row['r']},{row['lo']},{hi},{int(row['exact'])},{row['provenance']}")
    return "\n".join(lines) + "\n"
