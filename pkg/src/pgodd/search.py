"""Exact and heuristic computation of f(r).

Three engines:

* ``exhaustive_f`` walks all 2^N line subsets in Gray-code order (q <= 5);
* ``dual_sweep`` enumerates even point sets S up to collineations and uses
  f(x) = min{|S| even : |L^o(S)| = x} for even x (odd x via N - x);
* ``random_witness`` prospects for upper bounds with seeded swap search.

Every witness passes through ``verify_witness`` before it is reported.
"""

from __future__ import annotations

import itertools
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels as K
from . import bounds
from . import constructions as cons
from .gf import FieldSpec
from .parity import BitSet, LineSet, PointSet, odd_lines, odd_points
from .plane import IncidenceStructure, get_plane


class SearchError(RuntimeError):
    pass


METHODS = ("exhaustive", "dual-sweep", "random")


@dataclass
class SearchConfig:
    q: int
    method: str = "dual-sweep"
    r_range: Optional[tuple[int, int]] = None
    s_max: int = 8
    seed: int = 0
    budget: float = 60.0
    workers: int = 1

    def __post_init__(self):
        FieldSpec.from_q(self.q).validate()
        if self.method not in METHODS:
            raise SearchError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.workers < 1:
            raise SearchError("workers must be positive")

    def rs(self) -> range:
        N = self.q * self.q + self.q + 1
        lo, hi = self.r_range or (0, N)
        return range(max(lo, 0), min(hi, N) + 1)


@dataclass
class FEntry:
    r: int
    lo: int
    hi: Optional[int]
    witness_kind: Optional[str] = None
    witness_hex: Optional[str] = None
    method: str = ""
    elapsed: float = 0.0

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi


@dataclass
class FTable:
    q: int
    entries: dict[int, FEntry] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.q * self.q + self.q + 1

    def value(self, r: int) -> Optional[int]:
        e = self.entries.get(r)
        return e.lo if e is not None and e.exact else None

    def values(self) -> dict[int, int]:
        return {r: e.lo for r, e in sorted(self.entries.items()) if e.exact}

    def to_csv(self) -> str:
        out = ["r,lo,hi,exact,witness-hex,method"]
        for r, e in sorted(self.entries.items()):
            hi = "" if e.hi is None else e.hi
            out.append(f"{r},{e.lo},{hi},{int(e.exact)},{e.witness_hex or ''},{e.method}")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "meta": self.meta,
            "entries": [{**asdict(e), "exact": e.exact} for _, e in sorted(self.entries.items())],
        }

    def as_sources(self) -> list[dict]:
        """Entries in the shape ``bounds.assemble`` accepts."""
        out = []
        for r, e in sorted(self.entries.items()):
            wit = {"kind": e.witness_kind, "hex": e.witness_hex} if e.witness_hex else None
            out.append({"r": r, "lo": e.lo, "hi": e.hi, "tag": f"search:{e.method}", "witness": wit})
        return out

    def check(self, plane: Optional[IncidenceStructure] = None) -> None:
        """Witness recheck and symmetry consistency; raises SearchError."""
        plane = plane or get_plane(self.q)
        for r, e in self.entries.items():
            if e.witness_hex is not None and e.hi is not None:
                S = _set_from_hex(plane, e.witness_kind, e.witness_hex)
                if not verify_witness(plane, e.witness_kind, S, r, e.hi):
                    raise SearchError(f"witness for r={r} fails verification")
            twin = self.entries.get(self.N - r)
            if twin is not None and e.exact and twin.exact and twin.lo != e.lo:
                raise SearchError(f"f({r}) != f({self.N - r})")


def _set_from_hex(plane: IncidenceStructure, kind: str, text: str) -> BitSet:
    cls = LineSet if kind == "lines" else PointSet
    return cls.from_hex(plane.N, text)


def verify_witness(plane: IncidenceStructure, kind: str, S: BitSet, r: int, value: int) -> bool:
    """Recompute the odd set of S from scratch and compare size and value.

    kind 'lines': |S| = r lines with value odd points.
    kind 'points': |S| = r points with value odd lines.
    """
    if kind == "lines":
        odd = odd_points(plane, LineSet(plane.N, S.bits))
    elif kind == "points":
        odd = odd_lines(plane, PointSet(plane.N, S.bits))
    else:
        raise SearchError(f"unknown witness kind {kind!r}")
    return S.bits < (1 << plane.N) and len(S) == r and len(odd) == value


def dual_to_lines(plane: IncidenceStructure, S: PointSet, r: int) -> LineSet:
    """Line set of size r whose odd points are S (|S| even, |L^o(S)| in {r, N-r})."""
    R = odd_lines(plane, S)
    if len(R) != r:
        R = ~R
    if len(R) != r:
        raise SearchError("point set does not correspond to r")
    return R


# -- substreams ---------------------------------------------------------------------

def substream_seed(seed: int, name: str) -> int:
    """64-bit seed for a named substream of the master seed."""
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(33))


def substream(seed: int, name: str) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))
    return np.random.Generator(np.random.Philox(ss))


# -- exhaustive Gray code -----------------------------------------------------------------

EXHAUSTIVE_MAX_N = 40


def _gray_task(args):
    q, n_free, prefix_lines = args
    plane = get_plane(q)
    masks = np.array([plane.line_masks[l] for l in range(plane.N)], dtype=np.uint64)
    par0 = np.uint64(0)
    prefix = np.uint64(0)
    for l in prefix_lines:
        par0 ^= masks[l]
        prefix |= np.uint64(1) << np.uint64(l)
    best = np.full(plane.N + 1, np.iinfo(np.int64).max, dtype=np.int64)
    wit = np.zeros(plane.N + 1, dtype=np.uint64)
    steps = K.gray_scan(masks[:n_free], n_free, par0, len(prefix_lines), prefix, best, wit)
    return best, wit, steps


def exhaustive_f(q: int, workers: int = 1) -> FTable:
    """Exact f(r) for every r by walking all line subsets."""
    plane = get_plane(q)
    N = plane.N
    if N > EXHAUSTIVE_MAX_N:
        raise SearchError(f"q={q}: 2^{N} subsets is out of reach; use dual-sweep")
    top = max(0, math.ceil(math.log2(workers))) if workers > 1 else 0
    n_free = N - top
    tasks = [(q, n_free, [n_free + i for i in range(top) if c >> i & 1]) for c in range(1 << top)]
    t0 = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_gray_task, tasks))
    else:
        parts = [_gray_task(t) for t in tasks]
    elapsed = time.perf_counter() - t0
    best = np.full(N + 1, np.iinfo(np.int64).max, dtype=np.int64)
    wit = np.zeros(N + 1, dtype=np.uint64)
    steps = 0
    for b, w, s in parts:  # task order is fixed, so ties resolve deterministically
        steps += s
        better = b < best
        best[better] = b[better]
        wit[better] = w[better]
    if steps != 1 << N:
        raise SearchError(f"Gray code visited {steps} subsets, expected 2^{N}")
    table = FTable(q, meta={"method": "exhaustive", "steps": int(steps), "workers": workers,
                            "elapsed": round(elapsed, 3)})
    for r in range(N + 1):
        hexw = format(int(wit[r]), "x")
        v = int(best[r])
        if not verify_witness(plane, "lines", LineSet.from_hex(N, hexw), r, v):
            raise SearchError(f"exhaustive witness for r={r} fails verification")
        table.entries[r] = FEntry(r, v, v, "lines", hexw, "exhaustive", elapsed)
    return table


# -- collineations ------------------------------------------------------------------------

def _normalize_rows(plane: IncidenceStructure, V: np.ndarray) -> np.ndarray:
    F = plane.field
    nz = V != 0
    if not nz.any(axis=1).all():
        raise SearchError("singular map sends a point to zero")
    lead = V[np.arange(len(V)), nz.argmax(axis=1)]
    V = F.mul_arr(V, F.inv_arr(lead)[:, None])
    q = plane.q
    x, y, z = V[:, 0], V[:, 1], V[:, 2]
    return np.where(x == 1, y * q + z, np.where(y == 1, q * q + z, q * q + q)).astype(np.int64)


def matrix_perm(plane: IncidenceStructure, M) -> np.ndarray:
    """Point permutation of the projectivity v -> M v."""
    F = plane.field
    M = np.asarray(M, dtype=np.int64)
    C = plane.coords
    V = np.zeros_like(C)
    for i in range(3):
        acc = np.zeros(len(C), dtype=np.int64)
        for j in range(3):
            acc = F.add_arr(acc, F.mul_arr(M[i, j], C[:, j]))
        V[:, i] = acc
    perm = _normalize_rows(plane, V)
    if len(set(perm.tolist())) != plane.N:
        raise SearchError("matrix is singular")
    return perm


def frobenius_perm(plane: IncidenceStructure) -> np.ndarray:
    F = plane.field
    frob = np.array([F.frobenius(x) for x in range(plane.q)], dtype=np.int64)
    return _normalize_rows(plane, frob[plane.coords])


def line_image(plane: IncidenceStructure, perm: np.ndarray) -> Optional[np.ndarray]:
    """Induced line permutation, or None if perm does not preserve lines."""
    out = np.empty(plane.N, dtype=np.int64)
    for l in range(plane.N):
        img = perm[plane.line_points[l]]
        mask = 0
        for p in img:
            mask |= 1 << int(p)
        hits = [m for m in plane.point_lines[int(img[0])] if plane.line_masks[int(m)] == mask]
        if not hits:
            return None
        out[l] = hits[0]
    return out


def collineation_generators(plane: IncidenceStructure) -> list[np.ndarray]:
    """Identity, diag(w,1,1), the coordinate 3-cycle, I + E12, and Frobenius if h > 1."""
    F = plane.field
    w = F.generator
    gens = [np.arange(plane.N, dtype=np.int64)]
    gens.append(matrix_perm(plane, [[w, 0, 0], [0, 1, 0], [0, 0, 1]]))
    gens.append(matrix_perm(plane, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]))
    gens.append(matrix_perm(plane, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    if F.h > 1:
        gens.append(frobenius_perm(plane))
    return gens


def orbit(gens: Sequence[np.ndarray], start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def group_order(gens: Sequence[np.ndarray], limit: int = 10**6) -> int:
    """Order of the permutation group by closure (small groups only)."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    todo = [np.array(ident)]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            t = tuple(y.tolist())
            if t not in seen:
                seen.add(t)
                if len(seen) > limit:
                    raise SearchError("group larger than limit")
                todo.append(y)
    return len(seen)


def pgaml_order(q: int) -> int:
    from .gf import prime_power

    _, h = prime_power(q)
    return h * q**3 * (q**3 - 1) * (q**2 - 1)


def frame_points(plane: IncidenceStructure) -> list[int]:
    return [plane.O_x, plane.O_y, plane.O_z, plane.point_index((1, 1, 1))]


def frame_stabilizer(plane: IncidenceStructure) -> np.ndarray:
    """All collineations fixing {[1:0:0],[0:1:0],[0:0:1],[1:1:1]} setwise."""
    F = plane.field
    vecs = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    frame = set(frame_points(plane))
    perms = []
    nonzero = range(1, plane.q)
    for sigma in itertools.permutations(range(4)):
        f = [vecs[i] for i in sigma]
        for l2, l3 in itertools.product(nonzero, nonzero):
            lam = (1, l2, l3)
            M = [[F.mul(lam[c], f[c][row]) for c in range(3)] for row in range(3)]
            image = tuple(F.add(F.add(M[i][0], M[i][1]), M[i][2]) for i in range(3))
            if any(image) and plane.point_index(image) == plane.point_index(f[3]):
                perms.append(matrix_perm(plane, M))
                break
    frob = frobenius_perm(plane)
    out = []
    for P in perms:
        g = P.copy()
        for _ in range(plane.field.h):
            out.append(g)
            g = frob[g]
    arr = np.unique(np.array(out), axis=0)
    for g in arr:
        assert {int(g[x]) for x in frame} == frame
    return arr


# -- dual sweep ---------------------------------------------------------------------------

def _words(plane: IncidenceStructure) -> int:
    return (plane.N + 63) // 64


def _hex_from_words(words: np.ndarray) -> str:
    v = 0
    for i, w in enumerate(words):
        v |= int(w) << (64 * i)
    return format(v, "x")


def quadrangle_free_values(plane: IncidenceStructure, s: int) -> dict[int, PointSet]:
    """|L^o(S)| for the two shapes of even s-sets without four points in general position.

    Such a set lies on a line plus at most one point; the two shapes cover all of them
    up to collineation (the count does not depend on which points are chosen).
    """
    out: dict[int, PointSet] = {}
    line = plane.line_points[0]
    if s <= plane.q + 1:
        S = plane.point_set(line[:s])
        out.setdefault(len(odd_lines(plane, S)), S)
    if 2 <= s <= plane.q + 2:
        off = next(p for p in range(plane.N) if not plane.on(p, 0))
        S = plane.point_set(list(line[: s - 1]) + [off])
        out.setdefault(len(odd_lines(plane, S)), S)
    return out


@dataclass
class SweepLevel:
    s: int
    values: dict[int, str]
    leaves: int
    interior: int
    elapsed: float


def sweep_level(plane: IncidenceStructure, s: int, stop_value: int = -1, prune: bool = True,
                perms: Optional[np.ndarray] = None) -> SweepLevel:
    """All |L^o(S)| values over even point sets of size s, with a first witness each."""
    t0 = time.perf_counter()
    N = plane.N
    W = _words(plane)
    found = np.zeros(N + 1, dtype=np.bool_)
    wit = np.zeros((N + 1, W), dtype=np.uint64)
    values: dict[int, str] = {}
    for v, S in quadrangle_free_values(plane, s).items():
        values.setdefault(v, S.hex())
    leaves = interior = 0
    if s >= 4:
        frame = np.array(frame_points(plane), dtype=np.int64)
        cand = np.array(sorted(set(range(N)) - set(frame.tolist())), dtype=np.int64)
        if perms is None:
            perms = frame_stabilizer(plane) if prune else np.zeros((0, N), dtype=np.int64)
        leaves, interior, _ = K.frame_sweep(plane.point_lines, cand, frame, s - 4, perms,
                                            stop_value, found, wit)
        for v in np.flatnonzero(found):
            values.setdefault(int(v), _hex_from_words(wit[v]))
    if s == 0:
        values[0] = "0"
    return SweepLevel(s, dict(sorted(values.items())), int(leaves), int(interior),
                      time.perf_counter() - t0)


def dual_sweep(q: int, s_max: int, budget: Optional[float] = None, prune: bool = True) -> FTable:
    """Certify f(r) = s at the first even s whose point sets realize r.

    Levels s = 0, 2, ..., s_max run in order; if the budget runs out the
    completed levels still certify, and the rest gets [lower, upper] intervals.
    """
    plane = get_plane(q)
    N = plane.N
    t0 = time.perf_counter()
    perms = frame_stabilizer(plane) if prune else np.zeros((0, N), dtype=np.int64)
    first: dict[int, tuple[int, str]] = {}
    done = -2
    levels = []
    for s in range(0, s_max + 1, 2):
        if budget is not None and time.perf_counter() - t0 > budget:
            break
        lvl = sweep_level(plane, s, perms=perms)
        levels.append({"s": s, "leaves": lvl.leaves, "interior": lvl.interior,
                       "elapsed": round(lvl.elapsed, 3), "values": sorted(lvl.values)})
        for v, hexs in lvl.values.items():
            first.setdefault(v, (s, hexs))
        done = s
    elapsed = time.perf_counter() - t0
    theory = bounds.assemble(q)
    table = FTable(q, meta={"method": "dual-sweep", "s_completed": done, "s_max": s_max,
                            "levels": levels, "elapsed": round(elapsed, 3)})
    for r in range(N + 1):
        x = r if r % 2 == 0 else N - r
        if x in first:
            s, hexs = first[x]
            S = PointSet.from_hex(N, hexs)
            R = dual_to_lines(plane, S, r)
            if not verify_witness(plane, "lines", R, r, s):
                raise SearchError(f"sweep witness for r={r} fails verification")
            table.entries[r] = FEntry(r, s, s, "lines", R.hex(), "dual-sweep", elapsed)
        else:
            rec = theory[r]
            lo = int(bounds.lift_up(max(rec.lo, done + 2), bounds.residue(q, r)))
            hi = None if rec.hi == bounds.INF else int(rec.hi)
            table.entries[r] = FEntry(r, lo, hi, None, None, "dual-sweep", elapsed)
    return table


# -- witness prospecting -------------------------------------------------------------------

@dataclass
class WitnessResult:
    q: int
    r: int
    value: int
    kind: str
    set: BitSet
    method: str
    elapsed: float
    steps: int = 0

    def to_json(self) -> dict:
        return {"q": self.q, "r": self.r, "value": self.value, "kind": self.kind,
                "set": self.set.hex(), "method": self.method, "elapsed": round(self.elapsed, 3),
                "steps": self.steps}


def construction_witness(plane: IncidenceStructure, r: int) -> Optional[WitnessResult]:
    """Best closed-form construction for r (or its complement), as a witness."""
    q, N = plane.q, plane.N
    best = None
    for rr, flip in ((r, False), (N - r, True)):
        for v, tag, params in bounds.constructive_instances(q, rr):
            if best is not None and v >= best[0]:
                continue
            res = _build(plane, tag, params)
            if res is None:
                continue
            S = res.set
            if flip:
                S = ~S
            best = (res.achieved, tag + ("/complement" if flip else ""), S)
    if best is None:
        return None
    v, tag, S = best
    kind = "lines" if isinstance(S, LineSet) else "points"
    if not verify_witness(plane, kind, S, r, v):
        raise SearchError(f"construction {tag} fails verification at r={r}")
    return WitnessResult(q, r, v, kind, S, f"construction:{tag}", 0.0)


def _build(plane, tag, params) -> Optional[cons.ConstructionResult]:
    try:
        if tag == "L32":
            return cons.lemma32_set(plane, params["k"], params["j"])
        if tag == "LE":
            return cons.lemmaE_set(plane, params["k"], params["j"])
        if tag == "LO":
            return cons.lemmaO_set(plane, params["k"], params["j"])
        if tag == "Baer7":
            return cons.baer_eq7(plane)
        if tag == "Baer8":
            return cons.baer_eq8(plane)
        if tag == "Baer9":
            return cons.baer_eq9(plane)
    except cons.ConstructionError:
        return None
    return None


def _run_local(rows, size, target, init, seed, deadline, chunk=200_000, stall=20_000):
    best, obj, steps = None, None, 0
    cur_init = init
    k = 0
    while True:
        b, o, s = K.local_search(rows, size, target, cur_init, (seed + k) % (2**31 - 1), chunk, stall)
        steps += s
        k += 1
        if obj is None or o < obj:
            best, obj = b, o
        if obj == 0 or time.perf_counter() > deadline:
            return best, obj, steps
        cur_init = best


def hit_search(plane: IncidenceStructure, r: int, v: int, seed: int, budget: float,
               init: Optional[Sequence[int]] = None) -> Optional[WitnessResult]:
    """Look for an even point set of size v with |L^o| in {r, N-r}; return it as a line witness."""
    if v % 2 or v <= 0:
        return None
    N = plane.N
    x = r if r % 2 == 0 else N - r
    t0 = time.perf_counter()
    init_arr = np.array(list(init) if init is not None else [], dtype=np.int64)
    best, obj, steps = _run_local(plane.point_lines, v, x, init_arr, seed, t0 + budget)
    if obj != 0:
        return None
    S = plane.point_set(best.tolist())
    R = dual_to_lines(plane, S, r)
    return WitnessResult(plane.q, r, v, "lines", R, "random:points", time.perf_counter() - t0, steps)


def exhaustive_hit(plane: IncidenceStructure, r: int, v: int, max_leaves: float = 5e8) -> Optional[WitnessResult]:
    """Frame-reduced exhaustive search for a v-set realizing r; None if there is none
    (or the level is too large to attempt)."""
    N = plane.N
    x = r if r % 2 == 0 else N - r
    if v < 4:
        lvl = sweep_level(plane, v)
    else:
        n = N - 4
        if math.comb(n, v - 4) / 24 > max_leaves:
            return None
        lvl = sweep_level(plane, v, stop_value=x)
    if x not in lvl.values:
        return None
    S = PointSet.from_hex(N, lvl.values[x])
    R = dual_to_lines(plane, S, r)
    return WitnessResult(plane.q, r, v, "lines", R, "exhaustive-hit", lvl.elapsed, lvl.leaves)


def line_search(plane: IncidenceStructure, r: int, seed: int, budget: float,
                init: Optional[Sequence[int]] = None) -> WitnessResult:
    """Swap search over r-line sets minimising the number of odd points."""
    t0 = time.perf_counter()
    init_arr = np.array(list(init) if init is not None else [], dtype=np.int64)
    best, obj, steps = _run_local(plane.line_points, r, 0, init_arr, seed, t0 + budget)
    R = plane.line_set(best.tolist())
    return WitnessResult(plane.q, r, int(obj), "lines", R, "random:lines", time.perf_counter() - t0, steps)


def random_witness(q: int, r: int, target: Optional[int] = None, seed: int = 0, budget: float = 120.0,
                   plane: Optional[IncidenceStructure] = None) -> WitnessResult:
    """Best witness for f(r) <= value found within the budget.

    Order: closed-form constructions, then exact-hit search on point sets of
    size ``target`` (or of each admissible value below the construction
    bound), then a line-set swap search.  The result is always verified.
    """
    plane = plane or get_plane(q)
    N = plane.N
    t0 = time.perf_counter()
    deadline = t0 + budget
    if r in (0, N):
        return WitnessResult(q, r, 0, "lines", LineSet(N, 0 if r == 0 else (1 << N) - 1), "trivial", 0.0)
    best = construction_witness(plane, r)
    if best is None:
        R = plane.line_set(range(r))
        best = WitnessResult(q, r, len(odd_points(plane, R)), "lines", R, "initial", 0.0)
    if best.value == 2 or (target is not None and best.value <= target):
        return _finish(plane, best, t0)
    cls = bounds.residue(q, r)
    lo = bounds.cong_floor(q, r)
    if target is not None:
        candidates = [target]
    else:
        candidates = list(range(int(lo), best.value, 4))
    seed64 = substream_seed(seed, f"random_witness/{q}/{r}")
    for i, v in enumerate(candidates):
        if v % 4 != cls % 4 or v >= best.value:
            continue
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            break
        share = remaining / max(1, len(candidates) - i)
        found = hit_search(plane, r, v, seed64 + i, share)
        if found is None:
            found = exhaustive_hit(plane, r, v, max_leaves=2e7)
        if found is not None:
            best = found
            break
    if target is None or best.value > target:
        remaining = deadline - time.perf_counter()
        if remaining > 0:
            init = list(best.set) if best.kind == "lines" else None
            ls = line_search(plane, r, seed64 ^ 0x5EED, remaining, init)
            if ls.value < best.value:
                best = ls
    return _finish(plane, best, t0)


def _finish(plane, res: WitnessResult, t0: float) -> WitnessResult:
    if not verify_witness(plane, res.kind, res.set, res.r, res.value):
        raise SearchError(f"witness for r={res.r} fails verification")
    res.elapsed = time.perf_counter() - t0
    return res


def random_table(q: int, seed: int = 0, budget_per_r: float = 10.0, rs: Optional[Iterable[int]] = None,
                 targets: Optional[dict[int, int]] = None) -> FTable:
    """Upper bounds for each r from random_witness, merged with theory lower bounds."""
    plane = get_plane(q)
    N = plane.N
    theory = bounds.assemble(q)
    table = FTable(q, meta={"method": "random", "seed": seed, "budget_per_r": budget_per_r})
    half = range(0, N // 2 + 1) if rs is None else rs
    for r in half:
        tgt = None if targets is None else targets.get(r)
        if tgt is None and theory[r].exact:
            tgt = int(theory[r].lo)
        res = random_witness(q, r, tgt, seed, budget_per_r, plane)
        lo = int(theory[r].lo)
        for rr, S in ((r, res.set), (N - r, ~res.set)):
            if rr in table.entries:
                continue
            table.entries[rr] = FEntry(rr, lo, res.value, res.kind, S.hex(), res.method, res.elapsed)
    return table


def run(config: SearchConfig) -> FTable:
    if config.method == "exhaustive":
        return exhaustive_f(config.q, config.workers)
    if config.method == "dual-sweep":
        return dual_sweep(config.q, config.s_max, config.budget)
    N = config.q * config.q + config.q + 1
    rs = [r for r in config.rs() if r <= N // 2]
    return random_table(config.q, config.seed, config.budget / max(1, len(rs)), rs)
