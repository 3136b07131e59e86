"""Tropical polynomials and the plane curves they cut out.

A tropical polynomial is a maximum of affine forms indexed by lattice
points.  Lifting each index to its coefficient height and taking upper
faces of the convex hull subdivides the Newton polygon; the curve is the
locus where the maximum is attained twice, dual to that subdivision cell
by cell.  The same duality turns a decoded path subdivision into the
marked graph consumed by the curve-level real multiplicity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .lattice import (
    LatticePoint,
    LatticePolygon,
    convex_hull,
    cross,
    lattice_length,
    primitive,
    sub,
)
from .paths import DecodedCurve, DualSubdivision, MalformedSubdivision
from .real import Chain, EdgeKey, MarkedDualGraph

RationalPoint = tuple[Fraction, Fraction]


class DegenerateSupport(ValueError):
    """The support spans no area, so there is no plane curve to extract."""


class NotSimple(ValueError):
    """The subdivision has a cell that is neither a triangle nor a
    parallelogram."""


class ParallelDirections(ValueError):
    """Two edge directions at a vertex are parallel."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("coefficients must be exact (int, Fraction or 'p/q' string)")
    return Fraction(value)


class TropicalPolynomial:
    """A max-plus polynomial: max over support points j of <j, x> + a_j."""

    def __init__(self, terms: Mapping[LatticePoint, object]):
        items = {}
        for j, a in terms.items():
            key = (int(j[0]), int(j[1]))
            items[key] = _as_fraction(a)
        if not items:
            raise ValueError("empty support")
        self.terms: dict[LatticePoint, Fraction] = dict(sorted(items.items()))

    def support(self) -> list[LatticePoint]:
        return list(self.terms)

    def eval(self, x) -> Fraction:
        px, py = Fraction(x[0]), Fraction(x[1])
        return max(j[0] * px + j[1] * py + a for j, a in self.terms.items())

    def maximizers(self, x) -> list[LatticePoint]:
        """Support points whose affine form attains the maximum at x."""
        px, py = Fraction(x[0]), Fraction(x[1])
        vals = {j: j[0] * px + j[1] * py + a for j, a in self.terms.items()}
        top = max(vals.values())
        return [j for j, v in vals.items() if v == top]

    def newton_polygon(self) -> LatticePolygon:
        return LatticePolygon(convex_hull(self.terms))

    def __eq__(self, other) -> bool:
        return isinstance(other, TropicalPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        inner = ", ".join(f"{j}: {a}" for j, a in self.terms.items())
        return f"TropicalPolynomial({{{inner}}})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "terms": [
                    {"exp": [j[0], j[1]], "coeff": str(a)}
                    for j, a in self.terms.items()
                ]
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "TropicalPolynomial":
        data = json.loads(text)
        return cls(
            {tuple(t["exp"]): Fraction(t["coeff"]) for t in data["terms"]}
        )


def _support_dimension(points: Sequence[LatticePoint]) -> int:
    if len(points) == 1:
        return 0
    base = points[0]
    d = None
    for p in points[1:]:
        v = sub(p, base)
        if v == (0, 0):
            continue
        if d is None:
            d = v
        elif cross(d, v) != 0:
            return 2
    return 0 if d is None else 1


def _scaled_heights(f: TropicalPolynomial) -> tuple[dict[LatticePoint, int], int]:
    """Integer heights obtained by clearing denominators; positive scaling
    leaves the upper-face structure unchanged."""
    scale = lcm(*(a.denominator for a in f.terms.values()))
    return {j: int(a * scale) for j, a in f.terms.items()}, scale


@dataclass(frozen=True)
class _Face:
    """One upper face of the lifted hull: the support points on it and the
    exact affine function x -> alpha*x1 + beta*x2 + gamma it lifts to."""

    points: tuple[LatticePoint, ...]
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def value_at(self, j) -> Fraction:
        return self.alpha * j[0] + self.beta * j[1] + self.gamma


def _upper_faces(f: TropicalPolynomial) -> list[_Face]:
    """All 2-dimensional upper faces of the hull of lifted support points.

    A plane through three lifted points supports an upper face exactly when
    every lifted point lies on or below it; enumerating planes over triples
    and deduplicating by contact set is exact and fast at these sizes.
    """
    heights, scale = _scaled_heights(f)
    pts = sorted(heights)
    lifted = [(p[0], p[1], heights[p]) for p in pts]
    seen: dict[frozenset, _Face] = {}
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                u = tuple(lifted[j][t] - lifted[i][t] for t in range(3))
                v = tuple(lifted[k][t] - lifted[i][t] for t in range(3))
                nz = u[0] * v[1] - u[1] * v[0]
                if nz == 0:
                    continue
                nx = u[1] * v[2] - u[2] * v[1]
                ny = u[2] * v[0] - u[0] * v[2]
                if nz < 0:
                    nx, ny, nz = -nx, -ny, -nz
                c = nx * lifted[i][0] + ny * lifted[i][1] + nz * lifted[i][2]
                contact = []
                below = True
                for q in lifted:
                    val = nx * q[0] + ny * q[1] + nz * q[2]
                    if val > c:
                        below = False
                        break
                    if val == c:
                        contact.append((q[0], q[1]))
                if not below:
                    continue
                key = frozenset(contact)
                if key not in seen:
                    seen[key] = _Face(
                        points=tuple(sorted(contact)),
                        alpha=Fraction(-nx, nz * scale),
                        beta=Fraction(-ny, nz * scale),
                        gamma=Fraction(c, nz * scale),
                    )
    return sorted(seen.values(), key=lambda face: face.points)


def dual_subdivision(f: TropicalPolynomial) -> DualSubdivision:
    """The regular subdivision of the Newton polygon induced by the
    coefficient lift: one cell per upper face of the lifted hull."""
    if _support_dimension(f.support()) < 2:
        raise DegenerateSupport("support spans no area")
    cells = tuple(
        LatticePolygon(convex_hull(face.points)) for face in _upper_faces(f)
    )
    out = DualSubdivision(ambient=f.newton_polygon(), cells=cells)
    out.validate_tiling()
    return out


def canonicalize(f: TropicalPolynomial) -> TropicalPolynomial:
    """Raise each coefficient to the value of the concave hull of the lift
    over the support.  The curve is unchanged and the result is idempotent."""
    dim = _support_dimension(f.support())
    if dim == 0:
        return TropicalPolynomial(f.terms)
    if dim == 2:
        faces = _upper_faces(f)
        return TropicalPolynomial(
            {j: min(face.value_at(j) for face in faces) for j in f.terms}
        )
    # collinear support: parameterize the line and take the 1-dimensional
    # upper hull of (parameter, height)
    pts = f.support()
    base = pts[0]
    d = primitive(sub(max(pts), base))
    idx = 0 if d[0] != 0 else 1

    def param(p: LatticePoint) -> int:
        return (p[idx] - base[idx]) // d[idx]

    lifted = sorted((param(p), f.terms[p]) for p in pts)
    hull: list[tuple[int, Fraction]] = []
    for t, a in lifted:
        while len(hull) >= 2:
            (t1, a1), (t2, a2) = hull[-2], hull[-1]
            if (a2 - a1) * (t - t1) <= (a - a1) * (t2 - t1):
                hull.pop()
            else:
                break
        hull.append((t, a))
    new = {}
    for p in pts:
        t = param(p)
        value = None
        for (t1, a1), (t2, a2) in zip(hull, hull[1:]):
            if t1 <= t <= t2:
                value = a1 + (a2 - a1) * Fraction(t - t1, t2 - t1)
                break
        if value is None:
            value = dict(hull).get(t, f.terms[p])
        new[p] = value
    return TropicalPolynomial(new)


@dataclass(frozen=True)
class PlaneTropicalCurve:
    """A balanced weighted piecewise-linear curve in the plane.

    Vertices have exact rational coordinates.  A bounded edge is
    (vertex index a, vertex index b, weight, primitive direction a -> b);
    a ray is (vertex index, primitive direction, weight).
    """

    vertices: tuple[RationalPoint, ...]
    bounded_edges: tuple[tuple[int, int, int, LatticePoint], ...]
    rays: tuple[tuple[int, LatticePoint, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[str(x), str(y)] for x, y in self.vertices],
            "bounded_edges": [
                {"ends": [a, b], "weight": w, "direction": list(d)}
                for a, b, w, d in self.bounded_edges
            ],
            "rays": [
                {"vertex": v, "direction": list(d), "weight": w}
                for v, d, w in self.rays
            ],
        }


def _rational_primitive(vx: Fraction, vy: Fraction) -> LatticePoint:
    scale = lcm(vx.denominator, vy.denominator)
    return primitive((int(vx * scale), int(vy * scale)))


def _edge_key(a: LatticePoint, b: LatticePoint) -> EdgeKey:
    return (a, b) if a <= b else (b, a)


def _outward_normal(ambient: LatticePolygon, a: LatticePoint, b: LatticePoint) -> LatticePoint:
    """Outward primitive normal of the ambient side containing segment a-b."""
    for s0, s1 in ambient.sides():
        d = sub(s1, s0)
        if cross(d, sub(a, s0)) == 0 and cross(d, sub(b, s0)) == 0:
            lo = [min(s0[i], s1[i]) for i in (0, 1)]
            hi = [max(s0[i], s1[i]) for i in (0, 1)]
            if all(lo[i] <= a[i] <= hi[i] and lo[i] <= b[i] <= hi[i] for i in (0, 1)):
                return primitive((d[1], -d[0]))
    raise MalformedSubdivision(f"edge {a}-{b} is not on the ambient boundary")


def curve_of(f: TropicalPolynomial) -> PlaneTropicalCurve:
    """The corner locus of f as a weighted graph dual to its subdivision:
    a vertex per cell, a bounded edge per interior cell edge, a ray per
    boundary cell edge, weights equal to dual lattice lengths."""
    if _support_dimension(f.support()) < 2:
        raise DegenerateSupport("support spans no area")
    faces = _upper_faces(f)
    cells = []
    vertices: list[RationalPoint] = []
    for face in faces:
        for p in face.points:
            if face.value_at(p) != f.terms[p]:
                raise ArithmeticError("face plane misses one of its own lifts")
        cells.append(LatticePolygon(convex_hull(face.points)))
        vertices.append((-face.alpha, -face.beta))
    sub_ = DualSubdivision(ambient=f.newton_polygon(), cells=tuple(cells))
    sub_.validate_tiling()
    bounded = []
    rays = []
    for (a, b), incident in sorted(sub_.edge_map().items()):
        w = lattice_length(sub(b, a))
        if len(incident) == 2:
            i, j = incident
            vx = vertices[j][0] - vertices[i][0]
            vy = vertices[j][1] - vertices[i][1]
            d = _rational_primitive(vx, vy)
            if d[0] * (b[0] - a[0]) + d[1] * (b[1] - a[1]) != 0:
                raise ArithmeticError("dual edge is not orthogonal to its cell edge")
            bounded.append((i, j, w, d))
        else:
            (i,) = incident
            rays.append((i, _outward_normal(sub_.ambient, a, b), w))
    return PlaneTropicalCurve(
        vertices=tuple(vertices),
        bounded_edges=tuple(bounded),
        rays=tuple(rays),
    )


def check_balancing(C: PlaneTropicalCurve) -> bool:
    """True when the weighted primitive directions leaving each vertex sum
    to zero."""
    totals = {i: [0, 0] for i in range(len(C.vertices))}
    for a, b, w, d in C.bounded_edges:
        totals[a][0] += w * d[0]
        totals[a][1] += w * d[1]
        totals[b][0] -= w * d[0]
        totals[b][1] -= w * d[1]
    for v, d, w in C.rays:
        totals[v][0] += w * d[0]
        totals[v][1] += w * d[1]
    return all(t == [0, 0] for t in totals.values())


def vertex_multiplicity(v1: LatticePoint, w1: int, v2: LatticePoint, w2: int) -> int:
    """Multiplicity of a trivalent vertex with two of its edge directions:
    w1 * w2 * |det(v1, v2)|."""
    det = cross(v1, v2)
    if det == 0:
        raise ParallelDirections(f"directions {v1} and {v2} are parallel")
    return w1 * w2 * abs(det)


def genus_of_simple(S: DualSubdivision) -> int:
    """Genus of the curve dual to a subdivision made of triangles and
    parallelograms: (triangles - boundary edges) / 2 + 1."""
    if not S.is_simple():
        raise NotSimple("subdivision has a cell that is not a triangle or parallelogram")
    r = len(S.triangles())
    x = len(S.boundary_edges())
    return (r - x) // 2 + 1


def is_smooth(S: DualSubdivision) -> bool:
    """True when every cell is a triangle of minimal area."""
    return all(
        len(c.vertices) == 3 and c.double_area() == 1 for c in S.cells
    )


def marked_dual_graph(D: DecodedCurve) -> MarkedDualGraph:
    """Dual graph of a decoded subdivision with the path steps as marks.

    Chains collect runs of parallel subdivision edges joined across
    parallelogram cells (the dual curve passes straight through those);
    each chain ends either at a triangle node or at a boundary end.
    """
    sub_ = D.subdivision
    sub_.validate_tiling()
    if not sub_.is_simple():
        raise NotSimple("decoded subdivision has a cell that is not simple")
    cells = sub_.cells
    triangles: list[LatticePolygon] = []
    crossings: list[LatticePolygon] = []
    tri_of_cell: dict[int, int] = {}
    for i, c in enumerate(cells):
        if len(c.vertices) == 3:
            tri_of_cell[i] = len(triangles)
            triangles.append(c)
        else:
            crossings.append(c)

    emap = sub_.edge_map()
    passthrough: dict[tuple[EdgeKey, int], EdgeKey] = {}
    for i, c in enumerate(cells):
        if len(c.vertices) != 4:
            continue
        a, b, cc, d = c.vertices
        for e1, e2 in (((a, b), (d, cc)), ((b, cc), (a, d))):
            k1, k2 = _edge_key(*e1), _edge_key(*e2)
            passthrough[(k1, i)] = k2
            passthrough[(k2, i)] = k1

    def extend(start: EdgeKey, cell: int | None):
        run: list[EdgeKey] = []
        cur_e, cur_c = start, cell
        while True:
            if cur_c is None:
                return run, ("end",)
            if cur_c in tri_of_cell:
                return run, ("tri", tri_of_cell[cur_c])
            nxt = passthrough[(cur_e, cur_c)]
            if nxt == start or nxt in run:
                raise MalformedSubdivision("cycle of parallelogram crossings")
            run.append(nxt)
            others = [c for c in emap[nxt] if c != cur_c]
            cur_e, cur_c = nxt, (others[0] if others else None)

    chains: list[Chain] = []
    assigned: set[EdgeKey] = set()
    slot_count: dict[int, int] = {}
    for e in sorted(emap):
        if e in assigned:
            continue
        incident = emap[e]
        left_cell = incident[0]
        right_cell = incident[1] if len(incident) == 2 else None
        left_run, left_term = extend(e, left_cell)
        right_run, right_term = extend(e, right_cell)
        edges = tuple(reversed(left_run)) + (e,) + tuple(right_run)
        assigned.update(edges)
        v = sub(e[1], e[0])
        chains.append(
            Chain(
                edges=edges,
                terminals=(left_term, right_term),
                weight=lattice_length(v),
                direction=primitive((-v[1], v[0])),
            )
        )
        for t in (left_term, right_term):
            if t[0] == "tri":
                slot_count[t[1]] = slot_count.get(t[1], 0) + 1
    for t in range(len(triangles)):
        if slot_count.get(t, 0) != 3:
            raise MalformedSubdivision(
                f"triangle {t} has {slot_count.get(t, 0)} chain slots, expected 3"
            )

    marked = []
    for a, b in D.marked_edges:
        key = _edge_key(a, b)
        if key not in emap:
            raise MalformedSubdivision(f"marked step {a}-{b} is not a subdivision edge")
        marked.append(key)
    return MarkedDualGraph(
        triangles=tuple(triangles),
        crossings=tuple(crossings),
        chains=tuple(chains),
        marked=tuple(marked),
    )
