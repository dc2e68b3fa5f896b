"""Rule discovery: exact dissection search over inflated base tiles.

The substitution rules are data, and this module is where they come from.
Given an inflation factor it enumerates, by exhaustive backtracking, every
edge-to-edge partition of an inflated base tile into base tiles ("fills"),
then assembles fills plus half-triangle colorings into complete rule sets
that satisfy the consistency constraints (area counts, apex rules, mirror
closure, and layout agreement along every edge so that half-triangle
altitude edges always mate across tile boundaries).

The search is exact throughout: candidate child anchor points are the
vertices generated by previously placed children plus the parent's boundary,
which is complete for edge-to-edge partitions because every corner of the
uncovered region is such a vertex.  Angular bookkeeping uses 12-sector
bitmasks, exact because every tile corner is a multiple of 30 degrees and
every edge direction lies on the 30-degree lattice.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import ONE, QUARTER, RingValue, ZERO
from .geometry import (ConvexPolygon, IDENTITY, Isometry, ORIGIN, Point, COS, SIN,
                       cross, dot, interiors_disjoint, rotate, rotation_about)
from .tiles import PROTO_AREA, PlacedTile, TileKind, prototype

FULL_MASK = 0xFFF

# areas as (rational, sqrt3) fractions of the base tiles
_SQ_AREA = (Fraction(1, 4), Fraction(0))
_RH_AREA = (Fraction(1, 2), Fraction(0))
_HT_AREA = (Fraction(0), Fraction(1, 8))


class SearchBudgetExceeded(RuntimeError):
    """Raised when the fill search exceeds its node budget; carries the
    solutions found so far."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


def _ring_to_fractions(v: RingValue) -> tuple[Fraction, Fraction]:
    d = 1 << v.e
    return (Fraction(v.a, d), Fraction(v.b, d))


def solve_area_counts(parent: TileKind, inflation: RingValue) -> list[tuple[int, int, int]]:
    """All non-negative integer (n_square, n_rhomb, n_half) with

        n_square/4 + n_rhomb/2 + n_half*sqrt(3)/8 == inflation**2 * area(parent)

    solved exactly by splitting into the rational and sqrt(3) components.
    """
    target = inflation * inflation * PROTO_AREA[parent]
    rat, irr = _ring_to_fractions(target)
    out = []
    n_half = irr / Fraction(1, 8)
    if n_half.denominator != 1 or n_half < 0:
        return []
    n_half = int(n_half)
    max_sq = rat / Fraction(1, 4)
    if max_sq.denominator != 1:
        return []
    for n_rh in range(int(rat / Fraction(1, 2)) + 1):
        rem = rat - n_rh * Fraction(1, 2)
        n_sq = rem / Fraction(1, 4)
        if n_sq.denominator == 1 and n_sq >= 0:
            out.append((int(n_sq), n_rh, n_half))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# direction / segment helpers

_DIR_VECS = tuple(Point(COS[k], SIN[k]) for k in range(12))


def dir_index(d: Point) -> int:
    """Index k with d a positive multiple of (cos 30k, sin 30k), exact."""
    k = round(math.atan2(float(d.y), float(d.x)) * 6.0 / math.pi) % 12
    for cand in (k, (k + 1) % 12, (k - 1) % 12):
        u = _DIR_VECS[cand]
        if (d.x * u.y - d.y * u.x).is_zero() and (d.x * u.x + d.y * u.y).sign() > 0:
            return cand
    raise ValueError("direction is not on the 30-degree lattice")


def _strictly_between(u: Point, v: Point, p: Point) -> bool:
    if not cross(u, v, p).is_zero():
        return False
    d = v - u
    t = dot(p - u, d)
    if t.sign() <= 0:
        return False
    return (t - dot(d, d)).sign() < 0


def _sector_mask(start: int, width: int) -> int:
    m = (1 << width) - 1
    m = ((m << start) | (m >> (12 - start))) & FULL_MASK
    return m


# ---------------------------------------------------------------------------
# fill children

FILL_SQUARE = "square"
FILL_RHOMB = "rhomb"
FILL_HALF = "half"

_FILL_PROTO_KIND = {
    FILL_SQUARE: TileKind.SQUARE,
    FILL_RHOMB: TileKind.RHOMB,
    FILL_HALF: TileKind.HALF_GRAY,
}

# Rotational self-symmetries of the square (C4) and rhomb (C2) prototypes.
# Poses related by one of these realize the same polygon; fixing a canonical
# representative keeps the search free of duplicate placements.
_SQUARE_SYMS = tuple(rotation_about(3 * j, Point(QUARTER, QUARTER)) for j in range(4))
_RHOMB_SYMS = (IDENTITY, rotation_about(6, Point(RingValue(2, 1, 2), QUARTER)))


def canonical_child_pose(shape: str, k: int, m: bool, t: Point):
    """Canonical (k, m, t) among poses realizing the same polygon."""
    if shape == FILL_HALF:
        return k, m, t
    syms = _SQUARE_SYMS if shape == FILL_SQUARE else _RHOMB_SYMS
    pose = Isometry(k, m, t)
    best = None
    for s in syms:
        q = pose.compose(s)
        key = q.key()
        if best is None or key < best[0]:
            best = (key, q)
    q = best[1]
    return q.k, q.m, q.t


class FillChild:
    """One geometric child of a fill: a base-tile shape under an isometry.

    Half-triangles are colorless here; colors are assigned later during rule
    assembly.
    """

    __slots__ = ("shape", "k", "m", "t", "polygon", "wedges", "vertex_set")

    def __init__(self, shape: str, k: int, m: bool, t: Point):
        k, m, t = canonical_child_pose(shape, k, m, t)
        self.shape = shape
        self.k = k
        self.m = m
        self.t = t
        placed = PlacedTile(_FILL_PROTO_KIND[shape], Isometry(k, m, t))
        self.polygon = placed.realize()
        verts = self.polygon.vertices
        n = len(verts)
        wedges = []
        for i in range(n):
            d_next = dir_index(verts[(i + 1) % n] - verts[i])
            d_prev = dir_index(verts[(i - 1) % n] - verts[i])
            wedges.append((verts[i], d_next, (d_prev - d_next) % 12))
        self.wedges = wedges
        self.vertex_set = frozenset(verts)

    def placed(self, kind: TileKind) -> PlacedTile:
        return PlacedTile(kind, Isometry(self.k, self.m, self.t))

    def sort_key(self):
        return (self.shape, self.k, self.m) + self.t.key()

    def mask_at(self, p: Point) -> int:
        """Angular sectors this child covers at point p (0 if p not on it)."""
        if p in self.vertex_set:
            for v, start, width in self.wedges:
                if v == p:
                    return _sector_mask(start, width)
        verts = self.polygon.vertices
        n = len(verts)
        for i in range(n):
            if _strictly_between(verts[i], verts[(i + 1) % n], p):
                d = dir_index(verts[(i + 1) % n] - verts[i])
                return _sector_mask(d, 6)
        return 0

    def __repr__(self):
        return f"FillChild({self.shape}, k={self.k}, m={int(self.m)}, t={self.t!r})"


class Fill:
    """A complete edge-to-edge partition of an inflated parent."""

    __slots__ = ("parent_kind", "inflation", "children", "counts")

    def __init__(self, parent_kind, inflation, children):
        self.parent_kind = parent_kind
        self.inflation = inflation
        self.children = tuple(sorted(children, key=FillChild.sort_key))
        sq = sum(1 for c in self.children if c.shape == FILL_SQUARE)
        rh = sum(1 for c in self.children if c.shape == FILL_RHOMB)
        ht = sum(1 for c in self.children if c.shape == FILL_HALF)
        self.counts = (sq, rh, ht)

    def signature(self):
        return tuple(c.sort_key() for c in self.children)


def inflated_parent_polygon(parent: TileKind, inflation: RingValue) -> ConvexPolygon:
    verts = [Point(v.x * inflation, v.y * inflation)
             for v in prototype(parent).vertices]
    return ConvexPolygon(verts)


# canonical fill shapes: realized vertices and wedge data at pose (k=0, m, t=0).
# Squares and rhombs are mirror-equivalent to rotations of themselves, so only
# half-triangles need both chiralities.
def _placement_templates():
    templates = []
    for shape, ms in ((FILL_SQUARE, (False,)), (FILL_RHOMB, (False,)),
                      (FILL_HALF, (False, True))):
        for m in ms:
            placed = PlacedTile(_FILL_PROTO_KIND[shape], Isometry(0, m, ORIGIN))
            verts = placed.realize().vertices
            n = len(verts)
            for i in range(n):
                d_next = dir_index(verts[(i + 1) % n] - verts[i])
                d_prev = dir_index(verts[(i - 1) % n] - verts[i])
                width = (d_prev - d_next) % 12
                templates.append((shape, m, verts[i], d_next, width))
    return templates


_TEMPLATES = _placement_templates()
_SHAPE_AREA = {FILL_SQUARE: _SQ_AREA, FILL_RHOMB: _RH_AREA, FILL_HALF: _HT_AREA}


class _FillState:
    def __init__(self, parent_poly: ConvexPolygon, options, node_budget):
        self.parent = parent_poly
        self.options = options
        self.node_budget = node_budget
        self.nodes = 0
        self.children: list[FillChild] = []
        self.counts = {FILL_SQUARE: 0, FILL_RHOMB: 0, FILL_HALF: 0}
        self.masks: dict[Point, int] = {}
        self.solutions: list[list[FillChild]] = []
        pverts = parent_poly.vertices
        self.parent_edges = []
        n = len(pverts)
        for i in range(n):
            u, v = pverts[i], pverts[(i + 1) % n]
            self.parent_edges.append((u, v, dir_index(v - u)))
        for p in pverts:
            self.masks[p] = self._parent_mask(p)

    def _parent_mask(self, p: Point) -> int:
        """Sectors at p covered by the parent's exterior."""
        pverts = self.parent.vertices
        n = len(pverts)
        for i in range(n):
            if p == pverts[i]:
                d_next = self.parent_edges[i][2]
                d_prev = dir_index(pverts[(i - 1) % n] - p)
                width = (d_prev - d_next) % 12
                return FULL_MASK ^ _sector_mask(d_next, width)
        for u, v, d in self.parent_edges:
            if _strictly_between(u, v, p):
                return _sector_mask((d + 6) % 12, 6)
        return 0

    def place(self, child: FillChild):
        updates = []
        # new child's wedges at existing or new vertices
        for v, start, width in child.wedges:
            old = self.masks.get(v)
            if old is None:
                base = self._parent_mask(v)
                for c in self.children:
                    base |= c.mask_at(v)
                updates.append((v, None))
                self.masks[v] = base | _sector_mask(start, width)
            else:
                updates.append((v, old))
                self.masks[v] = old | _sector_mask(start, width)
        # existing vertices that land strictly inside the new child's edges
        verts = child.polygon.vertices
        n = len(verts)
        for p in list(self.masks):
            if p in child.vertex_set:
                continue
            for i in range(n):
                if _strictly_between(verts[i], verts[(i + 1) % n], p):
                    d = dir_index(verts[(i + 1) % n] - verts[i])
                    old = self.masks[p]
                    updates.append((p, old))
                    self.masks[p] = old | _sector_mask(d, 6)
                    break
        self.children.append(child)
        self.counts[child.shape] += 1
        return updates

    def unplace(self, child: FillChild, updates):
        self.children.pop()
        self.counts[child.shape] -= 1
        for p, old in reversed(updates):
            if old is None:
                del self.masks[p]
            else:
                self.masks[p] = old

    def open_vertex(self):
        """Lexicographically least vertex with uncovered sectors, or None."""
        best = None
        for p, mask in self.masks.items():
            if mask != FULL_MASK and (best is None or p.lex_less(best)):
                best = p
        return best

    def counts_feasible(self) -> bool:
        c = self.counts
        for sq, rh, ht in self.options:
            if c[FILL_SQUARE] <= sq and c[FILL_RHOMB] <= rh and c[FILL_HALF] <= ht:
                return True
        return False

    def counts_complete(self) -> bool:
        c = (self.counts[FILL_SQUARE], self.counts[FILL_RHOMB], self.counts[FILL_HALF])
        return c in self.options


def fill_parent(parent: TileKind, inflation: RingValue,
                options=None, node_budget: int = 10 ** 7,
                max_solutions=None) -> list[Fill]:
    """All edge-to-edge partitions of the inflated parent into base tiles.

    `options` restricts the (n_square, n_rhomb, n_half) census to the given
    list; by default the exact area solutions from solve_area_counts.
    """
    if options is None:
        options = solve_area_counts(parent, inflation)
    options = [tuple(o) for o in options]
    parent_poly = inflated_parent_polygon(parent, inflation)
    state = _FillState(parent_poly, options, node_budget)

    def recurse():
        if max_solutions is not None and len(state.solutions) >= max_solutions:
            return
        state.nodes += 1
        if state.nodes > state.node_budget:
            raise SearchBudgetExceeded(
                f"fill search exceeded {state.node_budget} nodes",
                [Fill(parent, inflation, s) for s in state.solutions])
        p = state.open_vertex()
        if p is None:
            if state.counts_complete():
                state.solutions.append(list(state.children))
            return
        mask = state.masks[p]
        uncovered = FULL_MASK ^ mask
        s_star = None
        for s in range(12):
            if (uncovered >> s) & 1 and (mask >> ((s - 1) % 12)) & 1:
                s_star = s
                break
        if s_star is None:
            return
        seen = set()
        for shape, m, anchor, d0, width in _TEMPLATES:
            wedge = _sector_mask(s_star, width)
            if wedge & mask:
                continue
            k = (s_star - d0) % 12
            ra = rotate(anchor, k)
            t = Point(p.x - ra.x, p.y - ra.y)
            child = FillChild(shape, k, m, t)
            ckey = (child.shape, child.k, child.m) + child.t.key()
            if ckey in seen:
                continue
            seen.add(ckey)
            state.counts[shape] += 1
            ok = state.counts_feasible()
            state.counts[shape] -= 1
            if not ok:
                continue
            if any(state.parent.contains(v) < 0 for v in child.polygon.vertices):
                continue
            if any(not interiors_disjoint(child.polygon, c.polygon)
                   for c in state.children):
                continue
            updates = state.place(child)
            recurse()
            state.unplace(child, updates)

    recurse()
    fills = [Fill(parent, inflation, s) for s in state.solutions]
    return [f for f in fills if _fill_edge_to_edge(f, parent_poly)]


def _fill_edge_to_edge(fill: Fill, parent_poly: ConvexPolygon) -> bool:
    """Internal edges must be shared exactly; no vertex inside any edge."""
    edge_count = {}
    vertices = set()
    for c in fill.children:
        verts = c.polygon.vertices
        n = len(verts)
        vertices.update(verts)
        for i in range(n):
            u, v = verts[i], verts[(i + 1) % n]
            key = (u, v) if u.lex_less(v) else (v, u)
            edge_count[key] = edge_count.get(key, 0) + 1
    for (u, v), cnt in edge_count.items():
        if cnt > 2:
            return False
    for (u, v) in edge_count:
        for p in vertices:
            if p != u and p != v and _strictly_between(u, v, p):
                return False
    return True
