"""Increasing lattice paths and their curve-counting multiplicities.

A path is a strictly increasing (under a `LinearOrder`) sequence of lattice
points of a convex polygon, from the minimal to the maximal point.  Each path
carries two multiplicities, one per side of the polygon boundary, computed by
a corner-smoothing recursion; their product weights the path's contribution
to the curve count.  The same recursion, run with bookkeeping, decodes a path
into the polygon subdivisions dual to the curves it encodes.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .lattice import (
    LatticePoint,
    LatticePolygon,
    LinearOrder,
    add,
    boundary_chains,
    cross,
    extremal_vertices,
    sub,
)

LatticePath = tuple[LatticePoint, ...]


class InvalidGenus(ValueError):
    """Requested genus gives fewer than one path step."""


class MalformedSubdivision(ValueError):
    """Cells fail to tile the ambient polygon edge-to-edge."""


class Side(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def __invert__(self) -> "Side":
        return Side.MINUS if self is Side.PLUS else Side.PLUS


# Corner turn sign that makes a path vertex convex for each side: the plus
# region lies on the left of the direction of travel, so left turns
# (positive cross product) bound it convexly, right turns bound the minus
# region.  Locked by the calibration test in tests/test_paths.py.
_TURN = {Side.PLUS: 1, Side.MINUS: -1}


def first_convex_vertex(path: Sequence[LatticePoint], side: Side) -> int | None:
    """Index of the first interior path vertex that is a convex corner of the
    given side's region, or None if the path never turns that way."""
    want = _TURN[side]
    for k in range(1, len(path) - 1):
        turn = cross(sub(path[k], path[k - 1]), sub(path[k + 1], path[k]))
        if turn * want > 0:
            return k
    return None


def _is_parallelogram(cell: LatticePolygon) -> bool:
    v = cell.vertices
    return len(v) == 4 and sub(v[1], v[0]) == sub(v[2], v[3])


def _edge_key(a: LatticePoint, b: LatticePoint) -> tuple[LatticePoint, LatticePoint]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class DualSubdivision:
    """A set of convex lattice cells tiling an ambient polygon."""

    ambient: LatticePolygon
    cells: tuple[LatticePolygon, ...]

    def triangles(self) -> list[LatticePolygon]:
        return [c for c in self.cells if len(c.vertices) == 3]

    def parallelograms(self) -> list[LatticePolygon]:
        return [c for c in self.cells if _is_parallelogram(c)]

    def is_simple(self) -> bool:
        """True when every cell is a triangle or a parallelogram."""
        return all(len(c.vertices) == 3 or _is_parallelogram(c) for c in self.cells)

    def edge_map(self) -> dict[tuple[LatticePoint, LatticePoint], list[int]]:
        """Map from undirected cell edge to the indices of its incident cells."""
        edges: dict[tuple[LatticePoint, LatticePoint], list[int]] = {}
        for i, c in enumerate(self.cells):
            for a, b in c.sides():
                edges.setdefault(_edge_key(a, b), []).append(i)
        return edges

    def _on_ambient_boundary(self, a: LatticePoint, b: LatticePoint) -> bool:
        for s0, s1 in self.ambient.sides():
            d = sub(s1, s0)
            if cross(d, sub(a, s0)) == 0 and cross(d, sub(b, s0)) == 0:
                lo = [min(s0[i], s1[i]) for i in (0, 1)]
                hi = [max(s0[i], s1[i]) for i in (0, 1)]
                if all(lo[i] <= a[i] <= hi[i] and lo[i] <= b[i] <= hi[i] for i in (0, 1)):
                    return True
        return False

    def interior_edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        return sorted(e for e, cs in self.edge_map().items() if len(cs) == 2)

    def boundary_edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        return sorted(e for e, cs in self.edge_map().items() if len(cs) == 1)

    def validate_tiling(self) -> None:
        """Raise MalformedSubdivision unless the cells tile the ambient polygon
        edge-to-edge (area match, every edge shared by two cells or lying on
        the ambient boundary)."""
        if sum(c.double_area() for c in self.cells) != self.ambient.double_area():
            raise MalformedSubdivision("cell areas do not add up to the ambient area")
        for (a, b), cs in self.edge_map().items():
            if len(cs) > 2:
                raise MalformedSubdivision(f"edge {a}-{b} belongs to {len(cs)} cells")
            if len(cs) == 1 and not self._on_ambient_boundary(a, b):
                raise MalformedSubdivision(f"interior edge {a}-{b} has only one cell")
            if len(cs) == 2 and self._on_ambient_boundary(a, b):
                raise MalformedSubdivision(f"boundary edge {a}-{b} has two cells")
        for c in self.cells:
            if not all(self.ambient.contains(v) for v in c.vertices):
                raise MalformedSubdivision("cell sticks out of the ambient polygon")

    def to_json_dict(self) -> dict:
        return {"cells": [{"vertices": [list(v) for v in c.vertices]} for c in self.cells]}


@dataclass(frozen=True)
class DecodedCurve:
    """One curve encoded by a path: its dual subdivision, the subdivision
    edges dual to the path steps (in step order), and its weight."""

    subdivision: DualSubdivision
    path: LatticePath
    marked_edges: tuple[tuple[LatticePoint, LatticePoint], ...]
    multiplicity: int

    def genus(self) -> int:
        s, _ = self.subdivision.ambient.counts()
        return len(self.path) - 1 - s + 1

    def to_json_dict(self) -> dict:
        d = self.subdivision.to_json_dict()
        d["multiplicity"] = self.multiplicity
        return d


class _Context:
    """Per-(polygon, order) cache: boundary chains plus recursion memos."""

    def __init__(self, P: LatticePolygon, order: LinearOrder):
        self.polygon = P
        self.order = order
        self.p, self.q = extremal_vertices(P, order)
        plus, minus = boundary_chains(P, order)
        self.alpha = {Side.PLUS: plus, Side.MINUS: minus}
        self.steps = {Side.PLUS: len(plus) - 1, Side.MINUS: len(minus) - 1}
        self.point_set = frozenset(P.lattice_points())
        self._mu: dict[tuple, int] = {}
        self._decode: dict[tuple, tuple] = {}

    def sorted_points(self) -> list[LatticePoint]:
        return sorted(self.point_set, key=self.order.key)

    def mu_side(self, path: LatticePath, side: Side) -> int:
        key = (path, side)
        got = self._mu.get(key)
        if got is not None:
            return got
        if len(path) - 1 < self.steps[side]:
            val = 0
        elif path == self.alpha[side]:
            val = 1
        else:
            k = first_convex_vertex(path, side)
            if k is None:
                val = 0
            else:
                u = sub(path[k], path[k - 1])
                v = sub(path[k + 1], path[k])
                val = abs(cross(u, v)) * self.mu_side(path[:k] + path[k + 1 :], side)
                mirror = add(sub(path[k - 1], path[k]), path[k + 1])
                if mirror in self.point_set:
                    val += self.mu_side(path[:k] + (mirror,) + path[k + 1 :], side)
        self._mu[key] = val
        return val

    def decode_side(self, path: LatticePath, side: Side) -> tuple[tuple[int, tuple], ...]:
        """All leaves of the recursion below `path`: (weight, cells) pairs."""
        key = (path, side)
        got = self._decode.get(key)
        if got is not None:
            return got
        if len(path) - 1 < self.steps[side]:
            val: tuple = ()
        elif path == self.alpha[side]:
            val = ((1, ()),)
        else:
            k = first_convex_vertex(path, side)
            if k is None:
                val = ()
            else:
                out = []
                a, b, c = path[k - 1], path[k], path[k + 1]
                area2 = abs(cross(sub(b, a), sub(c, b)))
                tri = LatticePolygon([a, b, c])
                for m, cells in self.decode_side(path[:k] + path[k + 1 :], side):
                    out.append((m * area2, cells + (tri,)))
                mirror = add(sub(a, b), c)
                if mirror in self.point_set:
                    par = LatticePolygon([a, b, c, mirror])
                    for m, cells in self.decode_side(path[:k] + (mirror,) + path[k + 1 :], side):
                        out.append((m, cells + (par,)))
                val = tuple(out)
        self._decode[key] = val
        return val


_contexts: dict[tuple, _Context] = {}


def _context(P: LatticePolygon, order: LinearOrder) -> _Context:
    key = (P.vertices, order.primary, order.tiebreak)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = _contexts[key] = _Context(P, order)
    return ctx


def _check_path(ctx: _Context, path: Sequence[LatticePoint]) -> LatticePath:
    pts = tuple(tuple(p) for p in path)
    if len(pts) < 2:
        raise ValueError("a path needs at least one step")
    if pts[0] != ctx.p or pts[-1] != ctx.q:
        raise ValueError(f"path must run from {ctx.p} to {ctx.q}")
    keys = [ctx.order.key(p) for p in pts]
    if any(k2 <= k1 for k1, k2 in zip(keys, keys[1:])):
        raise ValueError("path is not strictly increasing under the order")
    if any(p not in ctx.point_set for p in pts):
        raise ValueError("path leaves the polygon")
    return pts


def enumerate_paths(P: LatticePolygon, order: LinearOrder, n: int) -> Iterator[LatticePath]:
    """All increasing paths with n steps from the minimal to the maximal
    lattice point, in a fixed deterministic order."""
    if n < 1:
        raise ValueError("a path needs at least one step")
    ctx = _context(P, order)
    inner = ctx.sorted_points()[1:-1]
    for mid in itertools.combinations(inner, n - 1):
        yield (ctx.p,) + mid + (ctx.q,)


def mu_side(P: LatticePolygon, order: LinearOrder, path: Sequence[LatticePoint], side: Side) -> int:
    """One-sided multiplicity of a path."""
    ctx = _context(P, order)
    return ctx.mu_side(_check_path(ctx, path), side)


def mu(P: LatticePolygon, order: LinearOrder, path: Sequence[LatticePoint]) -> int:
    """Multiplicity of a path: the product of its two one-sided multiplicities."""
    ctx = _context(P, order)
    pts = _check_path(ctx, path)
    plus = ctx.mu_side(pts, Side.PLUS)
    return plus and plus * ctx.mu_side(pts, Side.MINUS)

def count(P: LatticePolygon, g: int, order: LinearOrder | None = None) -> int:
    """Number of genus-g curves of degree P through a generic point
    configuration, counted with multiplicity: the sum of mu over all paths
    with s + g - 1 steps.  The result does not depend on the order."""
    if order is None:
        order = LinearOrder.default()
    s, _ = P.counts()
    n = s + g - 1
    if n < 1:
        raise InvalidGenus(f"genus {g} needs at least one step, got n={n}")
    ctx = _context(P, order)
    total = 0
    for pts in enumerate_paths(P, order, n):
        plus = ctx.mu_side(pts, Side.PLUS)
        if plus:
            total += plus * ctx.mu_side(pts, Side.MINUS)
    return total


def decode(P: LatticePolygon, order: LinearOrder, path: Sequence[LatticePoint]) -> tuple[DecodedCurve, ...]:
    """The curves a path encodes, one per leaf of the two-sided recursion.

    Each decoded curve tiles P with the triangles and parallelograms carved
    off by the recursion; its multiplicity is the product of the doubled
    triangle areas, and the decoded multiplicities add up to mu(path).
    """
    ctx = _context(P, order)
    pts = _check_path(ctx, path)
    marked = tuple((pts[j], pts[j + 1]) for j in range(len(pts) - 1))
    out = []
    for m_plus, cells_plus in ctx.decode_side(pts, Side.PLUS):
        for m_minus, cells_minus in ctx.decode_side(pts, Side.MINUS):
            sub_ = DualSubdivision(ambient=P, cells=cells_plus + cells_minus)
            out.append(DecodedCurve(sub_, pts, marked, m_plus * m_minus))
    return tuple(out)


def path_to_json(path: LatticePath) -> str:
    return json.dumps({"points": [list(p) for p in path]})
