"""Explicit point and line sets that witness upper bounds on f(r).

Every result carries the claimed formula value and the achieved value,
recomputed from the raw set by the parity maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import bounds
from .decomp import DecompositionError, SimpleDecomposition, binom2, build_simple
from .gf import norm_group
from .parity import BitSet, LineSet, PointSet, odd_lines, odd_points
from .plane import IncidenceStructure, PlaneError


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionResult:
    kind: str
    set: BitSet
    claimed: int
    achieved: int
    params: dict = field(default_factory=dict)
    odd_set: Optional[BitSet] = None

    @property
    def size(self) -> int:
        return len(self.set)

    @property
    def set_kind(self) -> str:
        return "lines" if isinstance(self.set, LineSet) else "points"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "set_kind": self.set_kind,
            "size": self.size,
            "set": self.set.hex(),
            "claimed": self.claimed,
            "achieved": self.achieved,
            "params": self.params,
        }


def measure(plane: IncidenceStructure, S: BitSet) -> tuple[int, BitSet]:
    """(|odd set|, odd set) recomputed from scratch."""
    odd = odd_points(plane, S) if isinstance(S, LineSet) else odd_lines(plane, S)
    return len(odd), odd


def _result(plane, kind, S, claimed, **params) -> ConstructionResult:
    achieved, odd = measure(plane, S)
    return ConstructionResult(kind, S, claimed, achieved, params, odd)


# -- conic based ------------------------------------------------------------------

def conic_points(plane: IncidenceStructure, exclude_axes: bool = False) -> list[int]:
    pts = list(plane.conic())
    if exclude_axes:
        pts = [p for p in pts if p not in (plane.O_x, plane.O_z)]
    return pts


def conic_subset(plane: IncidenceStructure, r: int, exclude_axes: bool = False) -> ConstructionResult:
    """First r points of XZ = Y^2 in index order: exactly r(q+2-r) odd lines."""
    q = plane.q
    pts = conic_points(plane, exclude_axes)
    if not 0 <= r <= len(pts):
        raise ConstructionError(f"r={r} out of range 0..{len(pts)}")
    return _result(plane, "conic", plane.point_set(pts[:r]), r * (q + 2 - r), r=r)


def conic_plus_B_point(plane: IncidenceStructure) -> ConstructionResult:
    """The conic plus the least point on two tangents: 2q-2 odd lines."""
    q = plane.q
    if q < 5:
        raise ConstructionError("needs q >= 5")
    C = plane.conic()
    p = next((x for x in range(plane.N) if x not in C and plane.point_class(x) == "B"), None)
    if p is None:
        raise ConstructionError("no point on two tangents")
    return _result(plane, "conicB", C.toggle(p), 2 * q - 2, p=p)


# -- residue triangle and vertical lines -----------------------------------------------

def residue_triangle(plane: IncidenceStructure, i: int) -> PointSet:
    """Q_0 / Q_1: residue points on the three sides of the coordinate triangle.

    Q_i meets every line avoiding O_x, O_y, O_z in i mod 2 points.  The
    sides [x:0:1] and [1:x:0] use the nonzero squares; the side [0:1:x]
    uses non-squares for Q_0 and squares for Q_1 when -1 is a square
    (q = 1 mod 4), and the other way round when q = 3 mod 4, since a line
    meets the three sides at -c/a, -a/b, -b/c whose product is -1.
    """
    if i not in (0, 1):
        raise ConstructionError("i must be 0 or 1")
    F = plane.field
    Qp, Qm = F.squares(), F.nonsquares()
    flip = plane.q % 4 == 3
    third = Qm if (i == 0) != flip else Qp
    pts = [plane.point_index((x, 0, 1)) for x in Qp]
    pts += [plane.point_index((1, x, 0)) for x in Qp]
    pts += [plane.point_index((0, 1, x)) for x in third]
    return plane.point_set(pts)


def vertical_lines(plane: IncidenceStructure, k: int) -> list[int]:
    """Lines X = aZ for the k least non-squares a."""
    F = plane.field
    half = (plane.q - 1) // 2
    if not 0 <= k <= half:
        raise ConstructionError(f"k={k} out of range 0..{half}")
    return [plane.line_index((1, 0, F.neg(a))) for a in F.nonsquares()[:k]]


def vertical_bundle(plane: IncidenceStructure, k: int) -> ConstructionResult:
    """kq points on k vertical lines, O_y removed; odd lines = the k lines when k is even."""
    pts = 0
    for l in vertical_lines(plane, k):
        pts |= plane.line_masks[l]
    pts &= ~(1 << plane.O_y)
    S = PointSet(plane.N, pts)
    claimed = k if k % 2 == 0 else len(odd_lines(plane, S))
    return _result(plane, "vertical", S, claimed, k=k)


def _disjoint(*sets: PointSet) -> None:
    acc = 0
    for s in sets:
        if acc & s.bits:
            raise ConstructionError("component sets overlap (coordinate bug)")
        acc |= s.bits


def _check_kj(q: int, k: int, j: int, jmax: int, even_k: bool) -> None:
    if not 0 <= k <= (q - 1) // 2:
        raise ConstructionError(f"k={k} out of range")
    if even_k and k % 2:
        raise ConstructionError("k must be even")
    if not 0 <= j <= jmax:
        raise ConstructionError(f"j={j} out of range 0..{jmax}")


def lemma32_set(plane: IncidenceStructure, k: int, j: int) -> ConstructionResult:
    q = plane.q
    _check_kj(q, k, j, q + 1, False)
    V = vertical_bundle(plane, k).set
    Q = residue_triangle(plane, k % 2)
    C = conic_subset(plane, j).set
    _disjoint(V, Q, C)
    return _result(plane, "l32", V | Q | C, 3 * q + j * (q + 2 - j), k=k, j=j)


def lemmaE_set(plane: IncidenceStructure, k: int, j: int) -> ConstructionResult:
    q = plane.q
    _check_kj(q, k, j, q + 1, True)
    V = vertical_bundle(plane, k).set
    C = conic_subset(plane, j).set
    _disjoint(V, C)
    return _result(plane, "le", V | C, k + j * (q + 2 - j), k=k, j=j)


def lemmaO_set(plane: IncidenceStructure, k: int, j: int) -> ConstructionResult:
    q = plane.q
    _check_kj(q, k, j, q - 1, True)
    V = vertical_bundle(plane, k).set
    C = conic_subset(plane, j, exclude_axes=True).set
    C2 = plane.conic("scaled")
    _disjoint(V, C, C2)
    return _result(plane, "lo", V | C | C2, q + 1 + k + j * (q + 2 - j), k=k, j=j)


# -- Baer subplanes ---------------------------------------------------------------------

def _pencil(plane: IncidenceStructure, p: int) -> LineSet:
    return plane.lines_through(p)


def baer_eq7(plane: IncidenceStructure, B=None, p: Optional[int] = None) -> ConstructionResult:
    """R_B + L(p) for p off B: 2q + sqrt q lines whose odd points are B + {p}."""
    s = plane.sqrt_q
    B = B or plane.subfield_baer()
    if p is None:
        p = next(x for x in range(plane.N) if x not in B.points)
    if p in B.points:
        raise ConstructionError("p must lie off the subplane")
    R = B.secants ^ _pencil(plane, p)
    res = _result(plane, "baer7", R, plane.q + s + 2, p=p)
    res.params["expected_odd"] = (B.points.toggle(p)).hex()
    return res


def baer_eq8(plane: IncidenceStructure, B=None, p: Optional[int] = None) -> ConstructionResult:
    """R_B + L(p) for p on B: 2q - sqrt q lines whose odd points are B - {p}."""
    s = plane.sqrt_q
    B = B or plane.subfield_baer()
    if p is None:
        p = next(iter(B.points))
    if p not in B.points:
        raise ConstructionError("p must lie on the subplane")
    R = B.secants ^ _pencil(plane, p)
    res = _result(plane, "baer8", R, plane.q + s, p=p)
    res.params["expected_odd"] = (B.points.toggle(p)).hex()
    return res


def baer_eq9(plane: IncidenceStructure, pair=None) -> ConstructionResult:
    """R_B1 + R_B2 for disjoint subplanes: odd points B1 + B2."""
    s = plane.sqrt_q
    if pair is None:
        pair = plane.singer_baer_partition()[:2]
    B1, B2 = pair
    if B1.points.bits & B2.points.bits:
        raise ConstructionError("subplanes must be disjoint")
    R = B1.secants ^ B2.secants
    res = _result(plane, "baer9", R, 2 * plane.q + 2 * s + 2)
    res.params["expected_odd"] = (B1.points | B2.points).hex()
    return res


# -- secants of the conic and the exterior line -------------------------------------------

def conic_param(plane: IncidenceStructure, p: int) -> tuple[int, int]:
    """(s, t) with p = [s^2 : st : t^2]."""
    x, y, z = plane.point(p)
    F = plane.field
    if F.sub(F.mul(x, z), F.mul(y, y)) != 0:
        raise ConstructionError(f"point {p} is not on XZ = Y^2")
    return (1, y) if x else (0, 1)


def conic_point(plane: IncidenceStructure, s: int, t: int) -> int:
    F = plane.field
    return plane.point_index((F.mul(s, s), F.mul(s, t), F.mul(t, t)))


def secant_image(plane: IncidenceStructure, p1: int, p2: int) -> int:
    """Where the secant p1 p2 of XZ = Y^2 meets X = dZ (coordinate formula)."""
    if p1 == p2:
        raise ConstructionError("secant needs two distinct conic points")
    F = plane.field
    d = plane.d
    s, t = conic_param(plane, p1)
    s2, t2 = conic_param(plane, p2)
    u = F.add(F.mul(s, t2), F.mul(s2, t))
    v = F.add(F.mul(d, F.mul(t, t2)), F.mul(s, s2))
    return plane.point_index((F.mul(d, u), v, u))


def secant_image_norm(plane: IncidenceStructure, p1: int, p2: int, G=None) -> int:
    """Same point as psi(phi(p1) phi(p2)) in the norm group."""
    G = G or norm_group(plane.field)
    return plane.point_index(G.psi(G.mul(G.phi(*conic_param(plane, p1)), G.phi(*conic_param(plane, p2)))))


def progression_points(plane: IncidenceStructure, s: int, G=None) -> list[int]:
    """Conic points p_1..p_s with phi(p_i) = alpha^i."""
    G = G or norm_group(plane.field)
    out = []
    for i in range(1, s + 1):
        a, b = G.power(i)
        out.append(conic_point(plane, a, b))
    return out


def _choose_line_points(mult: list[int], t: int, k: int) -> Optional[list[int]]:
    """Indices of exactly t entries of mult summing to k (DP with backtracking)."""
    n = len(mult)
    reach = [[set() for _ in range(t + 1)] for _ in range(n + 1)]
    reach[0][0].add(0)
    for i, c in enumerate(mult):
        for cnt in range(t + 1):
            for tot in reach[i][cnt]:
                reach[i + 1][cnt].add(tot)
                if cnt < t and tot + c <= k:
                    reach[i + 1][cnt + 1].add(tot + c)
    if k not in reach[n][t]:
        return None
    chosen, cnt, tot = [], t, k
    for i in range(n, 0, -1):
        c = mult[i - 1]
        if tot in reach[i - 1][cnt]:
            continue
        chosen.append(i - 1)
        cnt, tot = cnt - 1, tot - c
    return sorted(chosen)


def lemma9_min_big(q: int, r: int) -> int:
    return max(math.ceil((2 * r - 3) / 3), (2 * r - 3) - (q + 1), 0)


def induced_profile(plane: IncidenceStructure, S: PointSet) -> dict:
    sizes = plane.intersection_sizes(S)
    big = sizes[sizes > 3]
    return {
        "big": int(big.max()) if len(big) else 0,
        "n_big": int(len(big)),
        "triangles": int((sizes == 3).sum()),
        "edges": int((sizes == 2).sum()),
        "M": int((sizes // 2).sum()),
    }


def realize_decomposition(plane: IncidenceStructure, d: SimpleDecomposition, G=None) -> PointSet:
    """Points on the conic and the exterior line inducing d's clique structure.

    The big clique goes on X = dZ, the other s = r - r1 vertices on the conic in
    norm-group progression, and line points are chosen to hit exactly k secants.
    """
    q = plane.q
    r, r1, k = d.r, len(d.big), d.n_triangles
    s = r - r1
    if r > q + 1:
        raise ConstructionError(f"r={r} exceeds q+1")
    if r1 < lemma9_min_big(q, r):
        raise ConstructionError(f"big clique {r1} below max((2r-3)/3, (2r-3)-(q+1))")
    bigset = set(d.big)
    if any(sum(int(v) in bigset for v in t) != 1 for t in d.triangles):
        raise ConstructionError("every triangle must use exactly one big-clique vertex")
    G = G or norm_group(plane.field)
    P = progression_points(plane, s, G)
    L = plane.exterior_line()
    Lpts = [plane.point_index(G.psi(G.power(m))) for m in range(q + 1)]
    mult = [0] * (q + 1)
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            mult[(i + j) % (q + 1)] += 1
    pick = _choose_line_points(mult, r1, k)
    if pick is None:
        raise ConstructionError(f"cannot hit exactly {k} secants with {r1} line points")
    S = plane.point_set(P + [Lpts[i] for i in pick])
    if len(S) != r:
        raise ConstructionError("realized set has the wrong size")
    prof = induced_profile(plane, S)
    want_big = r1 if r1 > 3 else 0
    if prof["big"] != want_big or prof["n_big"] != (1 if r1 > 3 else 0) or prof["M"] != d.m_value():
        raise ConstructionError(f"induced structure {prof} does not match the decomposition")
    if r1 > 3 and prof["triangles"] != k:
        raise ConstructionError("triangle count mismatch")
    assert all(plane.on(p, L) for p in (Lpts[i] for i in pick))
    return S


def realize_f_upper(plane: IncidenceStructure, w: int, retries: int = 10) -> ConstructionResult:
    """A point set of size about w/q with exactly w odd lines."""
    q = plane.q
    if w % 2:
        raise ConstructionError("w must be even")
    if w <= 0:
        raise ConstructionError("w must be positive")
    x = w / q + 2 * w**1.5 / q**2.5
    r = math.floor(x) + 1
    r += ((w * q) - r) % 4
    G = norm_group(plane.field)
    failures = []
    for attempt in range(retries + 1):
        t4 = r * q - w
        if r > q + 1:
            failures.append(f"r={r} exceeds q+1")
            break
        if t4 >= 0 and t4 % 4 == 0:
            t = t4 // 4
            M = r // 2 + 2 * t
            try:
                d = build_simple(r, M, min_big=max(lemma9_min_big(q, r), (r + 1) // 2))
                S = realize_decomposition(plane, d, G)
            except (DecompositionError, ConstructionError) as exc:
                failures.append(f"r={r}: {exc}")
            else:
                return _result(plane, "realize", S, w, w=w, r=r, t=t, M=M, r1=len(d.big),
                               k=d.n_triangles, overhead=r - w / q, attempts=attempt + 1)
        r += 4
    raise ConstructionError(f"no realization for w={w}: {failures}")


# -- near-blockers and even-line floors ----------------------------------------------------------

def _degrees(plane: IncidenceStructure, U: list[int]) -> np.ndarray:
    return plane.incidence[U, :].sum(axis=0)


def _cover_by(plane: IncidenceStructure, U: list[int], n: int) -> Optional[list[int]]:
    """Lexicographically first set of at most n points meeting every line of U."""
    if not U:
        return []
    if n == 0:
        return None
    for x in plane.line_points[U[0]]:
        x = int(x)
        rest = [l for l in U if not plane.on(x, l)]
        sub = _cover_by(plane, rest, n - 1)
        if sub is not None:
            return [x] + sub
    return None


def _point_on(plane: IncidenceStructure, line: int, avoid: set[int]) -> int:
    return next(int(p) for p in plane.line_points[line] if int(p) not in avoid)


def _finish(plane: IncidenceStructure, U: list[int], keep: list[int], third: int):
    """keep + one point off keep on every U-line through third except one."""
    lines = [l for l in U if plane.on(third, l) and not any(plane.on(x, l) for x in keep)]
    lines.sort()
    if not lines:
        raise ConstructionError("near-blocker degenerate case")
    unmet = lines[0]
    C = list(keep)
    for l in lines[1:]:
        C.append(_point_on(plane, l, set(keep) | {third}))
    return C, unmet


def _near_a(plane: IncidenceStructure, U: list[int]):
    if len(U) == 1:
        return [], U[0]
    cover = _cover_by(plane, U, 2)
    if cover is None:
        deg = _degrees(plane, U)
        p = int(np.argmax(deg))  # least index among maximum-degree points
        rest = [l for l in U if not plane.on(p, l)]
        C, unmet = _near_a(plane, rest)
        return [p] + C, unmet
    if len(cover) == 1:
        raise ConstructionError("concurrent lines have no small near-blocker")
    deg = _degrees(plane, U)
    x1, x2 = sorted(cover, key=lambda x: (-deg[x], x))
    return _finish(plane, U, [x1], x2)


def _near_b(plane: IncidenceStructure, U: list[int]):
    q = plane.q
    if len(U) <= q + 2:
        return _near_a(plane, U)
    cover = _cover_by(plane, U, 3)
    if cover is None:
        deg = _degrees(plane, U)
        p = int(np.argmax(deg))
        rest = [l for l in U if not plane.on(p, l)]
        C, unmet = _near_b(plane, rest)
        return [p] + C, unmet
    if len(cover) < 3:
        return _near_a(plane, U)
    deg = _degrees(plane, U)
    x1, x2, x3 = sorted(cover, key=lambda x: (-deg[x], x))
    return _finish(plane, U, [x1, x2], x3)


def near_blocker(plane: IncidenceStructure, U: LineSet, part: str = "a") -> tuple[PointSet, int]:
    """A point set meeting every line of U but one, and that line.

    part 'a' needs U without a common point and gives |C| <= |U|/2; part 'b'
    (q >= 5, U not blocked by two points) gives |C| <= |U|/3 + (q+1)/6.
    """
    lines = sorted(U)
    if not lines:
        raise ConstructionError("U must be nonempty")
    if part == "a":
        C, unmet = _near_a(plane, lines)
    elif part == "b":
        if plane.q < 5:
            raise ConstructionError("part b needs q >= 5")
        if _cover_by(plane, lines, 2) is not None:
            raise ConstructionError("part b needs U not blocked by two points")
        C, unmet = _near_b(plane, lines)
    else:
        raise ValueError(part)
    return plane.point_set(C), unmet


def is_near_blocker(plane: IncidenceStructure, U: LineSet, C: PointSet, unmet: int) -> bool:
    met = {l for l in U if any(plane.on(p, l) for p in C)}
    return unmet in U and unmet not in met and met == set(U) - {unmet}


def even_line_floor(plane: IncidenceStructure, A: PointSet, shape: str, T1: PointSet, T2: PointSet,
                    base=None) -> int:
    """Lower bound on |L^e(A)| for A = (base - T1) + T2, base a line or a Baer subplane."""
    q = plane.q
    t1, t2 = len(T1), len(T2)
    if shape == "line":
        core = plane.points_of(base)
        value = (t1 + t2) * q - t2 * (2 * t1 + t2 - 2)
    elif shape == "baer":
        core = base.points if hasattr(base, "points") else base
        value = (t1 + t2) * q - t2 * (2 * t1 + t2 - 1) - t1 * plane.sqrt_q
    else:
        raise ValueError(shape)
    if (T1.bits & ~core.bits) or (T2.bits & core.bits) or ((core - T1) | T2) != A:
        raise ConstructionError("A is not of the declared shape")
    return value


def affine_blocking_exists(plane: IncidenceStructure, size: int, line: int, samples: Optional[int] = None,
                           rng: Optional[np.random.Generator] = None) -> bool:
    """Is there a set of `size` affine points (off `line`) meeting every other line?

    Exhaustive when samples is None, else random sampling (one-sided).
    """
    from itertools import combinations

    affine = [p for p in range(plane.N) if not plane.on(p, line)]
    others = np.array([l for l in range(plane.N) if l != line])
    inc = plane.incidence[others][:, affine]
    if samples is None:
        cols = inc.T.astype(np.uint8)
        packed = [int.from_bytes(np.packbits(c, bitorder="little").tobytes(), "little") for c in cols]
        full = (1 << len(others)) - 1
        return any(_or_all(packed, c) == full for c in combinations(range(len(affine)), size))
    rng = rng or np.random.default_rng(0)
    for _ in range(samples):
        pick = rng.choice(len(affine), size, replace=False)
        if inc[:, pick].any(axis=1).all():
            return True
    return False


def _or_all(packed, idx) -> int:
    acc = 0
    for i in idx:
        acc |= packed[i]
    return acc


NAMED = {
    "conic": lambda P, a: conic_subset(P, a.r),
    "conicB": lambda P, a: conic_plus_B_point(P),
    "vertical": lambda P, a: vertical_bundle(P, a.k),
    "l32": lambda P, a: lemma32_set(P, a.k, a.j),
    "le": lambda P, a: lemmaE_set(P, a.k, a.j),
    "lo": lambda P, a: lemmaO_set(P, a.k, a.j),
    "baer7": lambda P, a: baer_eq7(P),
    "baer8": lambda P, a: baer_eq8(P),
    "baer9": lambda P, a: baer_eq9(P),
    "realize": lambda P, a: realize_f_upper(P, a.w),
}


def residue_set_result(plane: IncidenceStructure, i: int) -> ConstructionResult:
    S = residue_triangle(plane, i)
    achieved, odd = measure(plane, S)
    return ConstructionResult(f"q{i}", S, achieved, achieved, {"i": i}, odd)


NAMED["q0"] = lambda P, a: residue_set_result(P, 0)
NAMED["q1"] = lambda P, a: residue_set_result(P, 1)
