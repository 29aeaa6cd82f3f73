"""Known values of f(r) for q <= 11, used as regression anchors.

Only r <= (N-1)/2 is listed; the rest follows from f(N-r) = f(r).
Open entries are (lo, hi) pairs.
"""

from __future__ import annotations

from typing import Union

Entry = Union[int, tuple[int, int]]

_RAW = {
    3: [4, 6, 6, 4, 4, 2],
    5: [6, 10, 12, 12, 10, 6, 8, 8, 6, 2, 4, 4, 6, 6, 4],
    7: [8, 14, 18, 20, 20, 18, 14, 8, 12, 10, 10, 12, 8, 2,
        6, 8, 8, 6, 10, 4, 8, 6, 6, 4, 8, 6, 6, 4],
    9: [10, 18, 24, 28, 30, 30, 28, 24, 18, 10, 16, 12, 14, 14, 12,
        16, 10, 2, 8, 12, 10, 10, 12, 8, 10, 10, 12, 4, 10, 6,
        8, 4, 10, 6, 8, 4, 6, 6, 8, 8, 10, 6, 8, 8, 6],
    11: [12, 22, 30, 36, 40, 42, 42, 40, 36, 30, 22, 12, 20, (14, 26), (14, 18),
         16, 16, (14, 18), (14, 26), (16, 20), 12, 2, 10, 16, 16, 14, 14, 12, 16, 10,
         (14, 18), 12, 16, 10, 14, 4, 12, 10, 10, 4, 12, 6, 14, 4, 8,
         6, 10, 8, 12, 6, 10, 8, 12, 6, 10, 8, 8, 6, 10, 8,
         8, 10, 10, 8, 8, 6],
}


def known_table(q: int) -> dict[int, Entry]:
    """r -> value (or (lo, hi)) for every 0 <= r <= N, symmetry completed."""
    if q not in _RAW:
        raise KeyError(f"no reference table for q={q}")
    N = q * q + q + 1
    half = _RAW[q]
    assert len(half) == (N - 1) // 2
    out: dict[int, Entry] = {0: 0, N: 0}
    for r, v in enumerate(half, start=1):
        out[r] = v
        out[N - r] = v
    return out


def exact_entries(q: int) -> dict[int, int]:
    return {r: v for r, v in known_table(q).items() if isinstance(v, int)}


def open_entries(q: int) -> dict[int, tuple[int, int]]:
    return {r: v for r, v in known_table(q).items() if not isinstance(v, int)}


KNOWN_Q = tuple(sorted(_RAW))
