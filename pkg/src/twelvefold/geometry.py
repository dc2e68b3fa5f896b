"""Points, isometries of the order-24 dihedral group, and exact convex predicates.

The symmetry group of the tiling is generated by rotation through 30 degrees
and reflection across the x axis; rotation matrix entries are always one of
0, +-1/2, +-sqrt(3)/2, +-1, so applying any group element keeps coordinates
inside the ring handled by :mod:`twelvefold.exact`.

All predicates are exact.  Where a float fast path is used (separating-axis
test), the float verdict is only accepted outside a conservatively padded
uncertainty window; inside the window the exact comparison decides.
"""

from __future__ import annotations

from .exact import HALF, HALF_SQRT3, ONE, RingValue, ZERO

_MINUS_ONE = RingValue(-1)
_MINUS_HALF = RingValue(-1, 0, 1)
_MINUS_HALF_SQRT3 = RingValue(0, -1, 1)

# cos(k*30), sin(k*30) for k = 0..11
COS = (ONE, HALF_SQRT3, HALF, ZERO, _MINUS_HALF, _MINUS_HALF_SQRT3,
       _MINUS_ONE, _MINUS_HALF_SQRT3, _MINUS_HALF, ZERO, HALF, HALF_SQRT3)
SIN = (ZERO, HALF, HALF_SQRT3, ONE, HALF_SQRT3, HALF,
       ZERO, _MINUS_HALF, _MINUS_HALF_SQRT3, _MINUS_ONE, _MINUS_HALF_SQRT3,
       _MINUS_HALF)


class Point:
    __slots__ = ("x", "y")

    def __init__(self, x: RingValue, y: RingValue):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def half(self) -> "Point":
        return Point(self.x.half(), self.y.half())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x.a, self.x.b, self.x.e, self.y.a, self.y.b, self.y.e))

    def key(self):
        """Total order key: lexicographic on normalized x then y."""
        return (self.x.a, self.x.b, self.x.e, self.y.a, self.y.b, self.y.e)

    def lex_less(self, other: "Point") -> bool:
        c = (self.x - other.x).sign()
        if c != 0:
            return c < 0
        return (self.y - other.y).sign() < 0

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


ORIGIN = Point(ZERO, ZERO)


def rotate(p: Point, k: int) -> Point:
    """Rotate p counterclockwise by k*30 degrees about the origin."""
    k %= 12
    if k == 0:
        return p
    c, s = COS[k], SIN[k]
    return Point(c * p.x - s * p.y, s * p.x + c * p.y)


def cross(o: Point, a: Point, b: Point) -> RingValue:
    """z component of (a - o) x (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def dot(a: Point, b: Point) -> RingValue:
    return a.x * b.x + a.y * b.y


class Isometry:
    """Element of the dihedral group D12 plus translation.

    Applied as: reflect across the x axis if m, then rotate counterclockwise
    by k*30 degrees, then translate by t.  One fixed convention, unit-tested
    exhaustively over all 24 x 24 linear-part pairs.
    """

    __slots__ = ("k", "m", "t")

    def __init__(self, k: int, m: bool, t: Point):
        object.__setattr__(self, "k", k % 12)
        object.__setattr__(self, "m", bool(m))
        object.__setattr__(self, "t", t)

    def __setattr__(self, name, value):
        raise AttributeError("Isometry is immutable")

    def apply(self, p: Point) -> Point:
        if self.m:
            p = Point(p.x, -p.y)
        p = rotate(p, self.k)
        return Point(p.x + self.t.x, p.y + self.t.y)

    def apply_linear(self, p: Point) -> Point:
        if self.m:
            p = Point(p.x, -p.y)
        return rotate(p, self.k)

    def compose(self, other: "Isometry") -> "Isometry":
        """Isometry h with h.apply(p) == self.apply(other.apply(p))."""
        k = self.k - other.k if self.m else self.k + other.k
        return Isometry(k, self.m ^ other.m, self.apply(other.t))

    def invert(self) -> "Isometry":
        k = self.k if self.m else -self.k
        inv = Isometry(k, self.m, ORIGIN)
        return Isometry(k, self.m, -inv.apply_linear(self.t))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.k == other.k and self.m == other.m and self.t == other.t

    def __hash__(self) -> int:
        return hash((self.k, self.m, self.t))

    def key(self):
        return (self.k, self.m) + self.t.key()

    def __repr__(self) -> str:
        return f"Isometry(k={self.k}, m={int(self.m)}, t={self.t!r})"


IDENTITY = Isometry(0, False, ORIGIN)


def rotation_about(k: int, center: Point) -> Isometry:
    """Rotation by k*30 degrees about an arbitrary center."""
    rc = rotate(center, k)
    return Isometry(k, False, center - rc)


class DegeneratePolygonError(ValueError):
    pass


class ConvexPolygon:
    """Strictly convex polygon, vertices in counterclockwise order."""

    __slots__ = ("vertices", "_fverts")

    def __init__(self, vertices, _validated: bool = False):
        vertices = tuple(vertices)
        if not _validated:
            n = len(vertices)
            if n < 3:
                raise DegeneratePolygonError("need at least 3 vertices")
            for i in range(n):
                c = cross(vertices[i], vertices[(i + 1) % n],
                          vertices[(i + 2) % n]).sign()
                if c <= 0:
                    raise DegeneratePolygonError(
                        "vertices must be strictly convex counterclockwise")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "_fverts", None)

    def __setattr__(self, name, value):
        raise AttributeError("ConvexPolygon is immutable")

    def float_vertices(self):
        fv = self._fverts
        if fv is None:
            fv = tuple((float(v.x), float(v.y)) for v in self.vertices)
            object.__setattr__(self, "_fverts", fv)
        return fv

    def area(self) -> RingValue:
        """Exact positive area by the shoelace formula."""
        vs = self.vertices
        total = ZERO
        for i in range(len(vs)):
            j = (i + 1) % len(vs)
            total = total + (vs[i].x * vs[j].y - vs[j].x * vs[i].y)
        return total.half()

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains(self, p: Point) -> int:
        """+1 strictly inside, 0 on the boundary, -1 strictly outside."""
        on_edge = False
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            s = cross(vs[i], vs[(i + 1) % n], p).sign()
            if s < 0:
                return -1
            if s == 0:
                on_edge = True
        return 0 if on_edge else 1

    def inner_point(self) -> Point:
        """A ring-exact point strictly inside the polygon."""
        v0, v1, v2 = self.vertices[0], self.vertices[1], self.vertices[2]
        return Point((v0.x + v0.x + v1.x + v2.x) * RingValue(1, 0, 2),
                     (v0.y + v0.y + v1.y + v2.y) * RingValue(1, 0, 2))

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self.vertices)!r})"


# Projection directions for the separating-axis test.  All tile edges point
# along multiples of 30 degrees, so every edge normal is parallel to one of
# the six axes below (k and k+6 give the same axis up to sign).
_AXES = tuple((COS[k], SIN[k]) for k in range(6))
_FAXES = tuple((float(c), float(s)) for c, s in _AXES)


def _exact_range(poly: ConvexPolygon, axis_index: int):
    c, s = _AXES[axis_index]
    lo = hi = None
    for v in poly.vertices:
        d = c * v.x + s * v.y
        if lo is None:
            lo = hi = d
        else:
            if (d - lo).sign() < 0:
                lo = d
            elif (d - hi).sign() > 0:
                hi = d
    return lo, hi


def _float_range(poly: ConvexPolygon, axis_index: int):
    fc, fs = _FAXES[axis_index]
    vals = [fc * x + fs * y for x, y in poly.float_vertices()]
    return min(vals), max(vals)


def interiors_disjoint(a: ConvexPolygon, b: ConvexPolygon) -> bool:
    """True iff the open interiors do not intersect (touching counts as disjoint).

    Exact separating-axis test over the six 30-degree lattice axes, which
    include every edge normal of both polygons.  Float projections give a
    fast verdict when the margin is clearly outside the rounding error;
    otherwise the single ambiguous axis is decided exactly.
    """
    fa = a.float_vertices()
    fb = b.float_vertices()
    mag = 1.0
    for x, y in fa:
        m = abs(x) + abs(y)
        if m > mag:
            mag = m
    for x, y in fb:
        m = abs(x) + abs(y)
        if m > mag:
            mag = m
    eps = 1e-12 * mag + 1e-12
    ambiguous = []
    for i in range(6):
        alo, ahi = _float_range(a, i)
        blo, bhi = _float_range(b, i)
        if ahi <= blo + eps:
            if ahi < blo - eps:
                return True
            ambiguous.append(i)
        elif bhi <= alo + eps:
            if bhi < alo - eps:
                return True
            ambiguous.append(i)
    for i in ambiguous:
        alo, ahi = _exact_range(a, i)
        blo, bhi = _exact_range(b, i)
        if (ahi - blo).sign() <= 0 or (bhi - alo).sign() <= 0:
            return True
    return False


def convex_hull(points) -> list[Point]:
    """Exact convex hull (monotone chain), counterclockwise, no collinear points."""
    pts = list(set(points))
    pts.sort(key=lambda p: (float(p.x), float(p.y)))
    # float sort is only a preorder; repair with exact insertion for safety
    pts = _exact_sort(pts)
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p).sign() <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p).sign() <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _exact_sort(pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        i = len(out)
        while i > 0 and p.lex_less(out[i - 1]):
            i -= 1
        out.insert(i, p)
    return out
