"""Incidence model of PG(2,q).

Points and lines are indexed 0..N-1 in lexicographic order of their
normalized homogeneous coordinates: all [1:y:z], then [0:1:z], then
[0:0:1] (element codes ordered as integers).  Lines use the same order on
their coefficient triples [a:b:c] for aX + bY + cZ = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional

import numpy as np

from .gf import FieldTables, build_field, cube_extension
from .parity import LineSet, PointSet


class PlaneError(ValueError):
    pass


def _canonical_triples(q: int) -> np.ndarray:
    rows = [(1, y, z) for y in range(q) for z in range(q)]
    rows += [(0, 1, z) for z in range(q)]
    rows.append((0, 0, 1))
    return np.array(rows, dtype=np.int64)


def triple_index(q: int, t) -> int:
    """Index of an already normalized triple."""
    x, y, z = (int(c) for c in t)
    if x == 1:
        return y * q + z
    if y == 1:
        return q * q + z
    return q * q + q


@dataclass
class BaerSubplane:
    points: PointSet
    secants: LineSet


class IncidenceStructure:
    """Points, lines and bit-mask incidence of PG(2,q)."""

    def __init__(self, field: FieldTables):
        F = self.field = field
        q = self.q = F.q
        self.N = N = q * q + q + 1
        self.coords = _canonical_triples(q)
        # evaluate a*x + b*y + c*z for every (line, point) pair
        L, P = self.coords[:, None, :], self.coords[None, :, :]
        prod = F.mul_arr(L, P)
        val = F.add_arr(F.add_arr(prod[..., 0], prod[..., 1]), prod[..., 2])
        self.incidence = val == 0
        self.line_points = np.array([np.flatnonzero(row) for row in self.incidence], dtype=np.int64)
        self.point_lines = np.array([np.flatnonzero(col) for col in self.incidence.T], dtype=np.int64)
        self.line_masks = [_mask(row) for row in self.line_points]
        self.point_masks = [_mask(col) for col in self.point_lines]
        self.O_x = 0
        self.O_y = q * q
        self.O_z = q * q + q

    # -- packed representations ---------------------------------------------
    @cached_property
    def line_words(self) -> np.ndarray:
        """Per-line point masks packed into uint64 words (LSB = point 0)."""
        return _pack_rows(self.incidence)

    @cached_property
    def point_words(self) -> np.ndarray:
        return _pack_rows(self.incidence.T)

    @property
    def words(self) -> int:
        return (self.N + 63) // 64

    # -- coordinates ------------------------------------------------------------
    def normalize(self, t) -> tuple[int, int, int]:
        F = self.field
        t = tuple(int(c) for c in t)
        lead = next((c for c in t if c != 0), None)
        if lead is None:
            raise PlaneError("the zero vector is not a projective point")
        inv = F.inv(lead)
        return tuple(F.mul(c, inv) for c in t)

    def point_index(self, t) -> int:
        return triple_index(self.q, self.normalize(t))

    line_index = point_index

    def point(self, i: int) -> tuple[int, int, int]:
        return tuple(int(c) for c in self.coords[i])

    line = point

    def cross(self, u, v) -> tuple[int, int, int]:
        F = self.field
        m, s = F.mul, F.sub
        return (
            s(m(u[1], v[2]), m(u[2], v[1])),
            s(m(u[2], v[0]), m(u[0], v[2])),
            s(m(u[0], v[1]), m(u[1], v[0])),
        )

    def line_through(self, p1: int, p2: int) -> int:
        if p1 == p2:
            raise PlaneError("line_through needs two distinct points")
        return self.line_index(self.cross(self.point(p1), self.point(p2)))

    def meet(self, l1: int, l2: int) -> int:
        if l1 == l2:
            raise PlaneError("meet needs two distinct lines")
        return self.point_index(self.cross(self.line(l1), self.line(l2)))

    def on(self, point: int, line: int) -> bool:
        return bool(self.incidence[line, point])

    # -- sets ---------------------------------------------------------------------
    def points_of(self, line: int) -> PointSet:
        return PointSet(self.N, self.line_masks[line])

    def lines_through(self, point: int) -> LineSet:
        return LineSet(self.N, self.point_masks[point])

    def point_set(self, indices) -> PointSet:
        return PointSet.from_indices(self.N, indices)

    def line_set(self, indices) -> LineSet:
        return LineSet.from_indices(self.N, indices)

    def intersection_sizes(self, S: PointSet) -> np.ndarray:
        """|l & S| for every line l."""
        v = S.to_bool()
        return self.incidence[:, v].sum(axis=1)

    def line_degrees(self, R: LineSet) -> np.ndarray:
        """Number of lines of R through each point."""
        v = R.to_bool()
        return self.incidence[v, :].sum(axis=0)

    # -- conics -------------------------------------------------------------------
    def conic(self, which: Literal["primary", "scaled"] = "primary") -> PointSet:
        """XZ = Y^2 (primary) or XZ = 4Y^2 (scaled), by direct evaluation."""
        F = self.field
        c = {"primary": 1, "scaled": F.element_from_int(4)}[which]
        X, Y, Z = self.coords.T
        lhs = F.mul_arr(X, Z)
        rhs = F.mul_arr(c, F.mul_arr(Y, Y))
        return PointSet.from_bool(lhs == rhs)

    def tangents(self, conic: PointSet) -> LineSet:
        sizes = self.intersection_sizes(conic)
        if sizes.max(initial=0) > 2:
            raise PlaneError("not a conic: three collinear points")
        if len(conic) != self.q + 1:
            raise PlaneError("not a conic: wrong size")
        return LineSet.from_bool(sizes == 1)

    @cached_property
    def primary_tangents(self) -> LineSet:
        return self.tangents(self.conic())

    def point_class(self, p: int) -> str:
        """'C' (on the conic XZ=Y^2), 'A' (on no tangent) or 'B' (on two)."""
        if p in self.conic():
            return "C"
        n = len(self.lines_through(p) & self.primary_tangents)
        if n == 0:
            return "A"
        if n == 2:
            return "B"
        raise PlaneError(f"point {p} lies on {n} tangents")  # impossible for q odd

    @cached_property
    def d(self) -> int:
        """Least non-square of the field."""
        return self.field.least_nonsquare()

    def exterior_line(self) -> int:
        """The line X = dZ, disjoint from XZ = Y^2."""
        return self.line_index((1, 0, self.field.neg(self.d)))

    # -- Baer subplanes -------------------------------------------------------------
    @property
    def sqrt_q(self) -> int:
        s = math.isqrt(self.q)
        if s * s != self.q:
            raise PlaneError(f"q={self.q} is not a perfect square")
        return s

    def baer_from_points(self, pts: PointSet) -> BaerSubplane:
        sizes = self.intersection_sizes(pts)
        return BaerSubplane(pts, LineSet.from_bool(sizes == self.sqrt_q + 1))

    def subfield_baer(self) -> BaerSubplane:
        sub = set(self.field.subfield(self.sqrt_q))
        mask = np.array([all(int(c) in sub for c in t) for t in self.coords])
        B = self.baer_from_points(PointSet.from_bool(mask))
        check_subplane(self, B.points, self.sqrt_q)
        return B

    @cached_property
    def cube(self) -> FieldTables:
        return cube_extension(self.field)

    def singer_points(self) -> np.ndarray:
        """Point index of w^i, i = 0..N-1, for the generator w of GF(q^3)^x."""
        E = self.cube
        out = np.empty(self.N, dtype=np.int64)
        for i in range(self.N):
            out[i] = self.point_index(E.digits(int(E.exp[i])))
        return out

    def singer_baer_partition(self) -> list[BaerSubplane]:
        """Orbits of the order-(q + sqrt q + 1) subgroup of the Singer cycle."""
        s = self.sqrt_q
        m, k = self.q + s + 1, self.q - s + 1
        pts = self.singer_points()
        if len(set(pts.tolist())) != self.N:
            raise PlaneError("Singer map is not a bijection")
        out = []
        for i in range(k):
            orbit = pts[i::k]
            assert len(orbit) == m
            B = self.baer_from_points(self.point_set(orbit))
            check_subplane(self, B.points, s)
            out.append(B)
        return out

    def describe(self) -> dict:
        return {"q": self.q, "N": self.N, "field": self.field.describe()}


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    n_rows, n_cols = mat.shape
    W = (n_cols + 63) // 64
    padded = np.zeros((n_rows, W * 64), dtype=np.uint64)
    padded[:, :n_cols] = mat
    shifts = np.arange(64, dtype=np.uint64)
    return (padded.reshape(n_rows, W, 64) << shifts).sum(axis=2, dtype=np.uint64)


def check_subplane(plane: IncidenceStructure, pts: PointSet, order: int) -> None:
    """Raise PlaneError unless pts is a subplane of the given order."""
    n = order * order + order + 1
    if len(pts) != n:
        raise PlaneError(f"expected {n} points, got {len(pts)}")
    sizes = plane.intersection_sizes(pts)
    blocks = [plane.line_points[l][pts.to_bool()[plane.line_points[l]]] for l in np.flatnonzero(sizes > 1)]
    if len(blocks) != n or any(len(b) != order + 1 for b in blocks):
        raise PlaneError("subplane lines have the wrong sizes")
    idx = {int(p): i for i, p in enumerate(pts)}
    pair_cover = np.zeros((n, n), dtype=np.int64)
    for b in blocks:
        ii = [idx[int(p)] for p in b]
        for a in ii:
            for c in ii:
                pair_cover[a, c] += 1
    off = ~np.eye(n, dtype=bool)
    if not np.all(pair_cover[off] == 1):
        raise PlaneError("two subplane points not on exactly one subplane line")
    if not np.all(np.diag(pair_cover) == order + 1):
        raise PlaneError("subplane point not on order+1 subplane lines")


_PLANES: dict[int, IncidenceStructure] = {}


def build_plane(field: FieldTables | int) -> IncidenceStructure:
    if isinstance(field, int):
        field = build_field(field)
    return IncidenceStructure(field)


def get_plane(q: int) -> IncidenceStructure:
    """Cached plane for the default field of order q."""
    if q not in _PLANES:
        _PLANES[q] = build_plane(q)
    return _PLANES[q]
