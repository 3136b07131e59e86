"""Signed and Welschinger-type counting of real curves.

Each marked point carries a quadrant sign in Z2 x Z2.  Moving along a curve
edge multiplies coordinates by signs determined by the primitive direction of
the edge, so a sign is only defined up to adding that direction mod 2: signs
live in two-element classes.  Two recursions refine the path multiplicity mu:
a signed one (mu_real) whose total counts the real curves among the complex
ones, and a sign-free one (nu_real) whose total is a Welschinger-type
invariant.  A third recursion on the marked dual graph of a single decoded
curve reproduces the per-path signed multiplicity and serves as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .lattice import LatticePoint, LatticePolygon, LinearOrder, cross, sub
from .paths import (
    LatticePath,
    InvalidGenus,
    Side,
    _check_path,
    _context,
    enumerate_paths,
    first_convex_vertex,
)

# A sign class: the two quadrant signs from Z2 x Z2 that a curve edge cannot
# tell apart.
SignClass = frozenset

QUADRANTS = ((0, 0), (0, 1), (1, 0), (1, 1))


class ZeroStep(ValueError):
    """A zero vector has no sign class."""


class IncompatibleGraph(ValueError):
    """A marked dual graph component is not a tree with exactly one end."""


def _parity(v: LatticePoint) -> tuple[int, int]:
    return (v[0] & 1, v[1] & 1)


def _primitive_parity(v: LatticePoint) -> tuple[int, int]:
    g = gcd(abs(v[0]), abs(v[1]))
    return ((v[0] // g) & 1, (v[1] // g) & 1)


def _xor(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] ^ b[0], a[1] ^ b[1])


def sign_class_of(step: LatticePoint, representative: tuple[int, int]) -> SignClass:
    """The class of a quadrant sign modulo the primitive vector of the step:
    {r, r + primitive(step) mod 2}."""
    if step == (0, 0):
        raise ZeroStep("zero step")
    r = (representative[0] & 1, representative[1] & 1)
    return frozenset({r, _xor(r, _primitive_parity(step))})


def _is_class_of(step: LatticePoint, cls: SignClass) -> bool:
    return bool(cls) and sign_class_of(step, next(iter(cls))) == cls


def _class_mod(rep: tuple[int, int], pp: tuple[int, int]) -> SignClass:
    return frozenset({rep, _xor(rep, pp)})


def _combine(sa: SignClass, va: LatticePoint, sb: SignClass, vb: LatticePoint,
             vm: LatticePoint):
    """Merge the sign classes of two edges meeting at a trivalent vertex.

    va, vb are the two edge vectors, vm the third one (orientations do not
    matter).  Returns the admissible (weight, class) alternatives for the
    third edge.  Empty when the signs are incompatible.  The case split is by
    the parity of the edge weights: two odd edges of independent direction
    force the third class away from their one shared sign, two odd edges of
    equal direction parity leave one admissible third class per shared sign
    (both count), and an edge of even weight doubles the count of real curves
    whenever its class meets the other one.
    """
    pa, pb = _parity(va), _parity(vb)
    ppm = _primitive_parity(vm)
    if pa != (0, 0) and pb != (0, 0):
        if pa == pb:
            if sa != sb:
                return []
            out = []
            for t in sorted(sa):
                cls = _class_mod(t, ppm)
                for i, (w, c) in enumerate(out):
                    if c == cls:
                        out[i] = (w + 1, c)
                        break
                else:
                    out.append((1, cls))
            return out
        common = sa & sb
        if not common:
            return []
        (t,) = common
        return [(1, _class_mod(_xor(t, pa), ppm))]
    if pa == (0, 0) and pb == (0, 0):
        common = sa & sb
        if not common:
            return []
        classes = []
        for t in sorted(common):
            cls = _class_mod(t, ppm)
            if cls not in classes:
                classes.append(cls)
        if len(classes) == 1:
            return [(4, classes[0])]
        return [(2, c) for c in classes]
    # exactly one even edge: it pins the third class to the odd one's side
    odd = sb if pa == (0, 0) else sa
    common = sa & sb
    if not common:
        return []
    return [(2, _class_mod(min(common), ppm))]


@dataclass(frozen=True)
class SignedPath:
    """A lattice path together with one sign class per step."""

    path: LatticePath
    signs: tuple[SignClass, ...]

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.path)
        signs = tuple(frozenset(s) for s in self.signs)
        object.__setattr__(self, "path", pts)
        object.__setattr__(self, "signs", signs)
        if len(signs) != len(pts) - 1:
            raise ValueError("need exactly one sign class per path step")
        for j, cls in enumerate(signs):
            if not _is_class_of(sub(pts[j + 1], pts[j]), cls):
                raise ValueError(f"sign class {set(cls)} does not fit step {j}")

    @classmethod
    def from_choices(
        cls, path: Sequence[LatticePoint], choices: Sequence[tuple[int, int]]
    ) -> "SignedPath":
        pts = tuple(tuple(p) for p in path)
        if len(choices) != len(pts) - 1:
            raise ValueError("need exactly one quadrant sign per path step")
        signs = tuple(
            sign_class_of(sub(pts[j + 1], pts[j]), c) for j, c in enumerate(choices)
        )
        return cls(pts, signs)


class _RealContext:
    """Memo tables for the signed recursions, one per (polygon, order)."""

    def __init__(self, P: LatticePolygon, order: LinearOrder):
        self.base = _context(P, order)
        self._mu_real: dict[tuple, int] = {}
        self._nu: dict[tuple, int] = {}

    def mu_real_side(self, path: LatticePath, signs: tuple, side: Side) -> int:
        key = (path, signs, side)
        got = self._mu_real.get(key)
        if got is not None:
            return got
        base = self.base
        if len(path) - 1 < base.steps[side]:
            val = 0
        elif path == base.alpha[side]:
            val = 1
        else:
            k = first_convex_vertex(path, side)
            if k is None:
                val = 0
            else:
                u = sub(path[k], path[k - 1])
                v = sub(path[k + 1], path[k])
                merged_step = (u[0] + v[0], u[1] + v[1])
                val = 0
                short = path[:k] + path[k + 1 :]
                for w, merged in _combine(signs[k - 1], u, signs[k], v, merged_step):
                    val += w * self.mu_real_side(
                        short, signs[: k - 1] + (merged,) + signs[k + 1 :], side
                    )
                mirror = (path[k - 1][0] + path[k + 1][0] - path[k][0],
                          path[k - 1][1] + path[k + 1][1] - path[k][1])
                if mirror in base.point_set:
                    val += self.mu_real_side(
                        path[:k] + (mirror,) + path[k + 1 :],
                        signs[: k - 1] + (signs[k], signs[k - 1]) + signs[k + 1 :],
                        side,
                    )
        self._mu_real[key] = val
        return val

    def nu_side(self, path: LatticePath, side: Side) -> int:
        key = (path, side)
        got = self._nu.get(key)
        if got is not None:
            return got
        base = self.base
        if len(path) - 1 < base.steps[side]:
            val = 0
        elif path == base.alpha[side]:
            val = 1
        else:
            k = first_convex_vertex(path, side)
            if k is None:
                val = 0
            else:
                u = sub(path[k], path[k - 1])
                v = sub(path[k + 1], path[k])
                b = _triangle_welschinger_weight(u, v)
                val = b * self.nu_side(path[:k] + path[k + 1 :], side) if b else 0
                mirror = (path[k - 1][0] + path[k + 1][0] - path[k][0],
                          path[k - 1][1] + path[k + 1][1] - path[k][1])
                if mirror in base.point_set:
                    val += self.nu_side(
                        path[:k] + (mirror,) + path[k + 1 :], side
                    )
        self._nu[key] = val
        return val


_real_contexts: dict[tuple, _RealContext] = {}


def _real_context(P: LatticePolygon, order: LinearOrder) -> _RealContext:
    key = (P.vertices, order.primary, order.tiebreak)
    ctx = _real_contexts.get(key)
    if ctx is None:
        ctx = _real_contexts[key] = _RealContext(P, order)
    return ctx


def _triangle_welschinger_weight(u: LatticePoint, v: LatticePoint) -> int:
    """0 when the triangle spanned by u, v has an even side, else -1 to the
    number of its interior lattice points."""
    w = (u[0] + v[0], u[1] + v[1])
    if _parity(u) == (0, 0) or _parity(v) == (0, 0) or _parity(w) == (0, 0):
        return 0
    boundary = (
        gcd(abs(u[0]), abs(u[1]))
        + gcd(abs(v[0]), abs(v[1]))
        + gcd(abs(w[0]), abs(w[1]))
    )
    interior = (abs(cross(u, v)) - boundary + 2) // 2
    return -1 if interior & 1 else 1


def mu_real_side(
    P: LatticePolygon, order: LinearOrder, signed: SignedPath, side: Side
) -> int:
    """Signed one-sided multiplicity of a path."""
    ctx = _real_context(P, order)
    _check_path(ctx.base, signed.path)
    return ctx.mu_real_side(signed.path, signed.signs, side)


def mu_real(P: LatticePolygon, order: LinearOrder, signed: SignedPath) -> int:
    """Signed multiplicity: product of the two signed one-sided values."""
    ctx = _real_context(P, order)
    _check_path(ctx.base, signed.path)
    plus = ctx.mu_real_side(signed.path, signed.signs, Side.PLUS)
    return plus and plus * ctx.mu_real_side(signed.path, signed.signs, Side.MINUS)


def nu_real_side(
    P: LatticePolygon, order: LinearOrder, path: Sequence[LatticePoint], side: Side
) -> int:
    """Welschinger-weighted one-sided multiplicity of a path.  May be
    negative for general polygons."""
    ctx = _real_context(P, order)
    pts = _check_path(ctx.base, path)
    return ctx.nu_side(pts, side)


def real_signed_count(
    P: LatticePolygon,
    g: int,
    order: LinearOrder | None,
    signs: Sequence[tuple[int, int]],
) -> int:
    """Number of real curves of genus g through points with the given
    quadrant signs, among the count(P, g) complex ones: the sum of signed
    path multiplicities.  One sign per marked point; the result depends on
    the signs and on the order."""
    if order is None:
        order = LinearOrder.default()
    s, _ = P.counts()
    n = s + g - 1
    if n < 1:
        raise InvalidGenus(f"genus {g} needs at least one step, got n={n}")
    choices = [(c[0] & 1, c[1] & 1) for c in signs]
    if len(choices) != n:
        raise ValueError(f"need {n} signs, got {len(choices)}")
    ctx = _real_context(P, order)
    total = 0
    for pts in enumerate_paths(P, order, n):
        cls = tuple(
            sign_class_of(sub(pts[j + 1], pts[j]), choices[j]) for j in range(n)
        )
        plus = ctx.mu_real_side(pts, cls, Side.PLUS)
        if plus:
            total += plus * ctx.mu_real_side(pts, cls, Side.MINUS)
    return total


def welschinger_count(P: LatticePolygon, g: int, order: LinearOrder | None = None) -> int:
    """Welschinger-type signed count of real genus-g curves: the sum of
    nu_plus * nu_minus over all paths.  Order-independent for g = 0."""
    if order is None:
        order = LinearOrder.default()
    s, _ = P.counts()
    n = s + g - 1
    if n < 1:
        raise InvalidGenus(f"genus {g} needs at least one step, got n={n}")
    ctx = _real_context(P, order)
    total = 0
    for pts in enumerate_paths(P, order, n):
        plus = ctx.nu_side(pts, Side.PLUS)
        if plus:
            total += plus * ctx.nu_side(pts, Side.MINUS)
    return total


def vertex_welschinger_sign(T: LatticePolygon) -> int:
    """Sign of a trivalent curve vertex dual to the triangle T: 0 when the
    vertex multiplicity 2*Area(T) is even, else -1 to the ((m-1)/2)."""
    if len(T.vertices) != 3:
        raise ValueError("expected a triangle")
    m = T.double_area()
    if m % 2 == 0:
        return 0
    return -1 if ((m - 1) // 2) & 1 else 1


# -- marked dual graphs -------------------------------------------------------

EdgeKey = tuple[LatticePoint, LatticePoint]
# A chain terminal: ("tri", triangle_index) or ("end",) for a boundary ray.
Terminal = tuple


@dataclass(frozen=True)
class Chain:
    """A maximal run of parallel subdivision edges joined through
    parallelogram crossings; dual to one straight piece of curve."""

    edges: tuple[EdgeKey, ...]
    terminals: tuple[Terminal, Terminal]
    weight: int
    direction: LatticePoint

    def vector(self) -> LatticePoint:
        return sub(self.edges[0][1], self.edges[0][0])

    def parity(self) -> tuple[int, int]:
        return _primitive_parity(self.vector())


@dataclass(frozen=True)
class MarkedDualGraph:
    """Combinatorial dual of a decoded subdivision: a trivalent node per
    triangle, a crossing per parallelogram, chains of dual edges, one end
    per boundary edge, and the path steps as marked edges."""

    triangles: tuple[LatticePolygon, ...]
    crossings: tuple[LatticePolygon, ...]
    chains: tuple[Chain, ...]
    marked: tuple[EdgeKey, ...]

    def chain_of(self, edge: EdgeKey) -> int:
        for i, c in enumerate(self.chains):
            if edge in c.edges:
                return i
        raise KeyError(f"edge {edge} is on no chain")


def _one_end_components(G: MarkedDualGraph, marked: set) -> list[dict]:
    """Cut every chain at its marked edges and group the resulting pieces
    into connected components.  Each component must be a tree with exactly
    one boundary end; its description holds the pieces and the mark leaves.
    """
    pieces = []  # (terminal_a, terminal_b, edge vector)
    for chain in G.chains:
        cuts = [("mark", e) for e in chain.edges if e in marked]
        stops = [chain.terminals[0]] + cuts + [chain.terminals[1]]
        for left, right in zip(stops, stops[1:]):
            pieces.append((left, right, chain.vector()))

    # union-find over pieces, joined when they share a triangle terminal
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_tri: dict[int, list[int]] = {}
    for idx, (a, b, _) in enumerate(pieces):
        for t in (a, b):
            if t[0] == "tri":
                by_tri.setdefault(t[1], []).append(idx)
    for group in by_tri.values():
        for other in group[1:]:
            ra, rb = find(group[0]), find(other)
            if ra != rb:
                parent[rb] = ra

    comps: dict[int, dict] = {}
    for idx, piece in enumerate(pieces):
        root = find(idx)
        comps.setdefault(root, {"pieces": [], "tris": set(), "ends": 0, "marks": 0})
        c = comps[root]
        c["pieces"].append(piece)
        a, b, _ = piece
        for t in (a, b):
            if t[0] == "tri":
                c["tris"].add(t[1])
            elif t[0] == "end":
                c["ends"] += 1
            else:
                c["marks"] += 1
    out = []
    for c in comps.values():
        nodes = len(c["tris"]) + c["ends"] + c["marks"]
        if len(c["pieces"]) != nodes - 1:
            raise IncompatibleGraph("component is not a tree")
        if c["ends"] != 1:
            raise IncompatibleGraph(
                f"component has {c['ends']} ends, expected exactly 1"
            )
        out.append(c)
    return out


def curve_real_multiplicity(
    G: MarkedDualGraph,
    signs: Mapping[EdgeKey, SignClass],
    pair_order: Sequence[EdgeKey] | None = None,
) -> int:
    """Signed multiplicity of one marked curve: prune each one-end tree
    component by repeatedly merging two resolved leaves at a trivalent node,
    with the weights and branch sums of the class-combination table; the
    total is the product over components.

    `pair_order` optionally re-ranks the marked edges used for tie-breaking
    when choosing the next pair; the result must not depend on it.
    """
    marked = set(G.marked)
    if set(signs) != marked:
        raise ValueError("need a sign class for exactly the marked edges")
    for e, cls in signs.items():
        if not _is_class_of(sub(e[1], e[0]), frozenset(cls)):
            raise ValueError(f"sign class {set(cls)} does not fit edge {e}")
    rank: dict[EdgeKey, int] = {e: i for i, e in enumerate(pair_order or sorted(marked))}
    if set(rank) != marked:
        raise ValueError("pair_order must list exactly the marked edges")

    total = 1
    for comp in _one_end_components(G, marked):
        total *= _prune_component(comp["pieces"], signs, rank)
        if total == 0:
            return 0
    return total


def _prune_component(pieces, signs, rank) -> int:
    tri_ports: dict[int, list[int]] = {}
    resolved: dict[int, tuple] = {}  # piece -> (triangle it points at, class, key)
    for idx, (a, b, vec) in enumerate(pieces):
        for t in (a, b):
            if t[0] == "tri":
                tri_ports.setdefault(t[1], []).append(idx)
        if a[0] == "mark" and b[0] == "tri":
            resolved[idx] = (b[1], frozenset(signs[a[1]]), (0, rank[a[1]]))
        elif b[0] == "mark" and a[0] == "tri":
            resolved[idx] = (a[1], frozenset(signs[b[1]]), (0, rank[b[1]]))
        # mark-to-end pieces carry no constraint; the tree/end census already
        # rejected mark-to-mark and end-to-end components

    def vec_of(idx):
        return pieces[idx][2]

    def is_even(idx):
        return _parity(vec_of(idx)) == (0, 0)

    def prune(tris_left: frozenset, resolved: dict) -> int:
        if not tris_left:
            return 1
        best = None
        for t in sorted(tris_left):
            # even-weight legs join the pair first so their doubling factor
            # is paid exactly once, at their leaf end
            here = sorted(
                ((not is_even(i), resolved[i][2]), i)
                for i in tri_ports[t]
                if i in resolved and resolved[i][0] == t
            )
            if len(here) >= 2:
                best = (t, here[0][1], here[1][1])
                break
        if best is None:
            raise IncompatibleGraph("pruning stuck: no trivalent node with two leaves")
        t, ia, ib = best
        _, ca, ka = resolved[ia]
        _, cb, kb = resolved[ib]
        rest = [i for i in tri_ports[t] if i not in (ia, ib)]
        if len(rest) != 1:
            raise IncompatibleGraph("trivalent node without exactly three legs")
        (ic,) = rest
        nxt = dict(resolved)
        del nxt[ia], nxt[ib]
        out = 0
        for w, merged in _combine(ca, vec_of(ia), cb, vec_of(ib), vec_of(ic)):
            if ic in resolved:
                # third leg already carries a class: the vertex is a filter
                if resolved[ic][1] == merged:
                    follow = dict(nxt)
                    del follow[ic]
                    out += w * prune(tris_left - {t}, follow)
                continue
            a, b, _ = pieces[ic]
            other = b if (a[0] == "tri" and a[1] == t) else a
            if other[0] == "tri":
                follow = dict(nxt)
                follow[ic] = (other[1], merged, (1, min(ka, kb)))
                out += w * prune(tris_left - {t}, follow)
            elif other[0] == "end":
                out += w * prune(tris_left - {t}, nxt)
            else:
                raise IncompatibleGraph("mark on the outflow chain")
        return out

    return prune(frozenset(tri_ports), resolved)
