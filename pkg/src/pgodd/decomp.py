"""Clique edge-decompositions of K_r and the functional M = sum floor(r_i/2).

A point set S of PG(2,q) decomposes K_S into the cliques l & S; for even
|S| the odd-line count is |S| q - 4t with M = |S|/2 + 2t.  Simple
decompositions (at most one clique larger than a triangle) are built from
a big clique plus triangles hung on one-factorizations of the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from .parity import PointSet
    from .plane import IncidenceStructure

EXACT_FALLBACK_MAX_R = 8
BRUTE_MAX_R = 8


class DecompositionError(ValueError):
    def __init__(self, msg: str, threshold: Optional[float] = None, **info):
        super().__init__(msg)
        self.threshold = threshold
        self.info = info


def binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclass
class CliqueDecomposition:
    r: int
    cliques: list[tuple[int, ...]]

    def validate(self) -> None:
        seen = np.zeros((self.r, self.r), dtype=np.int64)
        for c in self.cliques:
            if len(c) < 2 or len(set(c)) != len(c):
                raise DecompositionError(f"bad clique {c}")
            for a, b in combinations(c, 2):
                seen[a, b] += 1
                seen[b, a] += 1
        off = ~np.eye(self.r, dtype=bool)
        if not np.all(seen[off] == 1):
            raise DecompositionError("cliques do not partition the edges of K_r")

    def is_simple(self) -> bool:
        return sum(1 for c in self.cliques if len(c) > 3) <= 1

    def sizes(self) -> list[int]:
        return sorted((len(c) for c in self.cliques), reverse=True)


def m_value(d: CliqueDecomposition) -> int:
    d.validate()
    return sum(len(c) // 2 for c in d.cliques)


@dataclass
class SimpleDecomposition:
    """Big clique (possibly empty), triangles, and every other edge single."""

    r: int
    big: tuple[int, ...]
    triangles: np.ndarray = field(repr=False)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_edges(self) -> int:
        return binom2(self.r) - binom2(len(self.big)) - 3 * self.n_triangles

    def m_value(self) -> int:
        big = len(self.big) // 2 if len(self.big) >= 2 else 0
        return big + self.n_triangles + self.n_edges

    def verify(self) -> None:
        """Edge-disjointness of the big clique and the triangles (vectorized)."""
        r = self.r
        T = np.sort(np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3), axis=1)
        if len(T) and (T.min() < 0 or T.max() >= r or np.any(T[:, 0] == T[:, 1]) or np.any(T[:, 1] == T[:, 2])):
            raise DecompositionError("malformed triangle")
        ids = np.concatenate([T[:, 0] * r + T[:, 1], T[:, 0] * r + T[:, 2], T[:, 1] * r + T[:, 2]])
        if len(np.unique(ids)) != len(ids):
            raise DecompositionError("triangles share an edge")
        if len(self.big) >= 2:
            inbig = np.zeros(r, dtype=bool)
            inbig[list(self.big)] = True
            if np.any(inbig[T].sum(axis=1) > 1):
                raise DecompositionError("triangle shares an edge with the big clique")
        if self.n_edges < 0:
            raise DecompositionError("more edges used than K_r has")

    def to_cliques(self) -> CliqueDecomposition:
        used = set()
        cliques: list[tuple[int, ...]] = []
        if len(self.big) >= 2:
            cliques.append(tuple(self.big))
            used.update(combinations(sorted(self.big), 2))
        for t in self.triangles:
            t = tuple(sorted(int(x) for x in t))
            cliques.append(t)
            used.update(combinations(t, 2))
        for e in combinations(range(self.r), 2):
            if e not in used:
                cliques.append(e)
        return CliqueDecomposition(self.r, cliques)


def cv_identity(plane: "IncidenceStructure", S: "PointSet") -> tuple[int, int, bool]:
    """For even |S|: (r, t, sum floor(r_l/2) == r/2 + 2t) with |L^o(S)| = rq - 4t."""
    from .parity import odd_lines

    r = len(S)
    if r % 2:
        raise DecompositionError("cv_identity needs |S| even")
    w = len(odd_lines(plane, S))
    num = r * plane.q - w
    if num % 4 or num < 0:
        raise DecompositionError(f"parity violation: rq - |L^o(S)| = {num}")
    t = num // 4
    if t > binom2(r):
        raise DecompositionError("t exceeds C(r,2)")
    sizes = plane.intersection_sizes(S)
    lhs = int((sizes // 2).sum())
    return r, t, lhs == r // 2 + 2 * t


def lemma7_threshold(r: int) -> float:
    return r * (math.sqrt(4 * r - 3) - 1) / 4


def lemma8_lower(r: int) -> int:
    m = math.isqrt(r - 3)
    if m * m < r - 3:
        m += 1
    m -= 1
    return (r - m) // 2 + m * (2 * r - 3 * m + 1) // 2


def simple_exists(r: int, s: int) -> Optional[bool]:
    """True inside the guaranteed window, False when impossible, None if unknown."""
    if r < 4:
        raise ValueError("simple_exists needs r >= 4")
    total = binom2(r)
    if s > total or (s - total) % 2 or s < 0:
        return False
    if s >= lemma8_lower(r):
        return True
    return None


def one_factorization(n: int) -> list[list[tuple[int, int]]]:
    """n-1 perfect matchings of K_n by the circle method (n even)."""
    if n < 2 or n % 2:
        raise DecompositionError(f"one_factorization needs even n >= 2, got {n}")
    m = n - 1
    rounds = []
    for i in range(m):
        pairs = [(min(i, n - 1), max(i, n - 1))]
        for k in range(1, n // 2):
            a, b = (i + k) % m, (i - k) % m
            pairs.append((min(a, b), max(a, b)))
        rounds.append(pairs)
    return rounds


def partial_matchings(n: int) -> list[list[tuple[int, int]]]:
    """Decompose K_n into matchings: n-1 perfect ones (n even), n partial ones (n odd)."""
    if n < 2:
        return []
    if n % 2 == 0:
        return one_factorization(n)
    return [[e for e in M if n not in e] for M in one_factorization(n + 1)]


@lru_cache(maxsize=4096)
def _packing(r: int, r1: int) -> np.ndarray:
    """Triangles (big vertex i, u, v) for the edges uv of matching i of the rest."""
    rest = r - r1
    mats = partial_matchings(rest)
    if len(mats) > r1:
        raise DecompositionError("not enough big-clique vertices for the matchings")
    tris = [(i, r1 + u, r1 + v) for i, M in enumerate(mats) for (u, v) in M]
    arr = np.array(tris, dtype=np.int64).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


def window(r: int, r1: int) -> tuple[int, int]:
    e1, e2 = r1 * (r - r1), binom2(r - r1)
    return r1 // 2 + e1 - e2, r1 // 2 + e1 + e2


def _big_decomposition(r: int, r1: int, s: int) -> Optional[SimpleDecomposition]:
    lo, hi = window(r, r1)
    if not lo <= s <= hi or (s - lo) % 2:
        return None
    n_tri = binom2(r - r1) - (s - lo) // 2
    return SimpleDecomposition(r, tuple(range(r1)), _packing(r, r1)[:n_tri])


def _bigless_decomposition(r: int, s: int) -> Optional[SimpleDecomposition]:
    total = binom2(r)
    if s > total or (total - s) % 2:
        return None
    r1 = (r + 1) // 2
    tris = _packing(r, r1)
    n_tri = (total - s) // 2
    if n_tri > len(tris):
        return None
    return SimpleDecomposition(r, (), tris[:n_tri])


def build_simple(r: int, s: int, min_big: Optional[int] = None) -> SimpleDecomposition:
    """A verified simple decomposition of K_r with M = s.

    Tries big cliques of order r1 = max(ceil(r/2), min_big) .. r (smallest
    first), then no big clique; for r <= 8 an exact triangle-packing search
    covers the values the matching construction cannot reach.
    """
    if r < 2:
        raise DecompositionError("r must be at least 2")
    total = binom2(r)
    if (s - total) % 2:
        raise DecompositionError(f"parity mismatch: s={s}, C(r,2)={total}")
    start = max((r + 1) // 2, min_big or 0)
    d = None
    for r1 in range(start, r + 1):
        d = _big_decomposition(r, r1, s)
        if d is not None:
            break
    if d is None and min_big is None:
        d = _bigless_decomposition(r, s)
        if d is None and r <= EXACT_FALLBACK_MAX_R:
            d = _exact_simple(r, s)
    if d is None:
        raise DecompositionError(f"no simple decomposition of K_{r} with M={s} found",
                                 r=r, s=s, window_lower=lemma8_lower(r) if r >= 4 else None)
    d.verify()
    if d.m_value() != s:
        raise DecompositionError("internal error: M mismatch")
    return d


def _exact_simple(r: int, s: int) -> Optional[SimpleDecomposition]:
    """Backtracking over big clique order and triangle packings (small r only)."""
    total = binom2(r)
    for r1 in [0] + list(range(4, r + 1)):
        base = (r1 // 2 if r1 else 0) + total - binom2(r1)
        if (base - s) % 2 or s > base:
            continue
        need = (base - s) // 2
        big = set(range(r1))
        free = {e for e in combinations(range(r), 2) if not (e[0] in big and e[1] in big)}
        cand = [t for t in combinations(range(r), 3) if sum(v in big for v in t) <= 1]
        found = _pack_triangles(cand, free, need)
        if found is not None:
            return SimpleDecomposition(r, tuple(range(r1)) if r1 else (), np.array(found, dtype=np.int64).reshape(-1, 3))
    return None


def _pack_triangles(cand, free, need):
    chosen: list[tuple[int, int, int]] = []

    def rec(start: int) -> bool:
        if len(chosen) == need:
            return True
        if len(free) < 3 * (need - len(chosen)):
            return False
        for i in range(start, len(cand)):
            a, b, c = cand[i]
            es = ((a, b), (a, c), (b, c))
            if all(e in free for e in es):
                for e in es:
                    free.discard(e)
                chosen.append(cand[i])
                if rec(i + 1):
                    return True
                chosen.pop()
                free.update(es)
        return False

    return list(chosen) if rec(0) else None


def fano() -> CliqueDecomposition:
    """K_7 split into the seven lines of the Fano plane (M = 7)."""
    lines = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    return CliqueDecomposition(7, [tuple(sorted(l)) for l in lines])


def all_edges(r: int) -> CliqueDecomposition:
    return CliqueDecomposition(r, [e for e in combinations(range(r), 2)])


def simplify(d: CliqueDecomposition) -> SimpleDecomposition:
    """Simple decomposition with the same M, when M is below the threshold."""
    M = m_value(d)
    thr = lemma7_threshold(d.r)
    if not M < thr:
        raise DecompositionError(f"M={M} is not below the threshold {thr}", threshold=thr, M=M)
    if d.is_simple():
        big = next((c for c in d.cliques if len(c) > 3), ())
        tris = [c for c in d.cliques if len(c) == 3]
        out = SimpleDecomposition(d.r, tuple(big), np.array(tris, dtype=np.int64).reshape(-1, 3))
        out.verify()
        return out
    return build_simple(d.r, M)


@dataclass
class BruteResult:
    r: int
    achievable: set[int]
    simple: set[int]


def brute_min_M(r: int) -> BruteResult:
    """Every M reachable by some clique decomposition of K_r, and by a simple one."""
    if r > BRUTE_MAX_R:
        raise DecompositionError(f"brute force limited to r <= {BRUTE_MAX_R}")
    if r < 2:
        return BruteResult(r, {0}, {0})
    edges = list(combinations(range(r), 2))
    eid = {e: i for i, e in enumerate(edges)}
    full = (1 << len(edges)) - 1

    def clique_mask(c):
        m = 0
        for e in combinations(c, 2):
            m |= 1 << eid[e]
        return m

    @lru_cache(maxsize=None)
    def rec(mask: int) -> frozenset:
        # mask = uncovered edges; returns {(M, number of cliques of order > 3 capped at 2)}
        if mask == 0:
            return frozenset({(0, 0)})
        low = (mask & -mask).bit_length() - 1
        u, v = edges[low]
        common = [w for w in range(r) if w not in (u, v)
                  and mask >> eid[tuple(sorted((u, w)))] & 1 and mask >> eid[tuple(sorted((v, w)))] & 1]
        out = set()
        for extra in _cliques_within(common, mask, eid):
            c = (u, v) + extra
            cm = clique_mask(c)
            gain, big = len(c) // 2, int(len(c) > 3)
            for M, nb in rec(mask & ~cm):
                out.add((M + gain, min(2, nb + big)))
        return frozenset(out)

    res = rec(full)
    return BruteResult(r, {M for M, _ in res}, {M for M, nb in res if nb <= 1})


def _cliques_within(verts, mask, eid):
    """All cliques (including empty) among verts whose edges are uncovered."""
    out = [()]

    def ext(cur, start):
        for i in range(start, len(verts)):
            w = verts[i]
            if all(mask >> eid[tuple(sorted((w, x)))] & 1 for x in cur):
                nxt = cur + (w,)
                out.append(nxt)
                ext(nxt, i + 1)

    ext((), 0)
    return out
