"""The five base-tile prototypes, placed tiles, and finite patches.

Base tiles:

* square with sides of half unit length,
* rhomb of unit side length with a 30-degree acute angle,
* three half-triangles (gray, yellow, blue): right triangles with a unit
  hypotenuse, legs 1/2 and sqrt(3)/2, cut from a unit equilateral triangle
  along its altitude.

The three half-triangle kinds share one geometry and differ only in their
substitution behaviour.  Chirality is carried by the pose's reflection flag,
not by extra kinds; the equilateral triangle is not a base tile but the
derived view of two half-triangles mated along their altitude edges.
"""

from __future__ import annotations

import json
from enum import IntEnum

from .exact import HALF, HALF_SQRT3, ONE, QUARTER, RingValue, SQRT3_8, ZERO, from_triple
from .geometry import ConvexPolygon, Isometry, Point, rotate


class TileKind(IntEnum):
    SQUARE = 0
    RHOMB = 1
    HALF_GRAY = 2
    HALF_YELLOW = 3
    HALF_BLUE = 4

    @property
    def token(self) -> str:
        return _TOKENS[self]

    @property
    def is_half(self) -> bool:
        return self >= TileKind.HALF_GRAY

    @staticmethod
    def from_token(token: str) -> "TileKind":
        try:
            return _KIND_BY_TOKEN[token]
        except KeyError:
            raise ValueError(f"unknown tile kind {token!r}") from None


_TOKENS = {
    TileKind.SQUARE: "square",
    TileKind.RHOMB: "rhomb",
    TileKind.HALF_GRAY: "gray",
    TileKind.HALF_YELLOW: "yellow",
    TileKind.HALF_BLUE: "blue",
}
_KIND_BY_TOKEN = {v: k for k, v in _TOKENS.items()}

HALF_KINDS = (TileKind.HALF_GRAY, TileKind.HALF_YELLOW, TileKind.HALF_BLUE)


class Prototype:
    """Canonical pose of a tile kind: first vertex at the origin, first edge
    along +x, counterclockwise."""

    __slots__ = ("kind", "polygon", "vertex_roles", "edge_roles", "area")

    def __init__(self, kind, polygon, vertex_roles, edge_roles):
        self.kind = kind
        self.polygon = polygon
        self.vertex_roles = vertex_roles
        self.edge_roles = edge_roles
        self.area = polygon.area()

    @property
    def vertices(self):
        return self.polygon.vertices


def _pt(x: RingValue, y: RingValue) -> Point:
    return Point(x, y)


_SQUARE_PROTO = Prototype(
    TileKind.SQUARE,
    ConvexPolygon([_pt(ZERO, ZERO), _pt(HALF, ZERO), _pt(HALF, HALF), _pt(ZERO, HALF)]),
    ("corner", "corner", "corner", "corner"),
    ("side", "side", "side", "side"),
)

_RHOMB_PROTO = Prototype(
    TileKind.RHOMB,
    ConvexPolygon([
        _pt(ZERO, ZERO),
        _pt(ONE, ZERO),
        _pt(ONE + HALF_SQRT3, HALF),
        _pt(HALF_SQRT3, HALF),
    ]),
    ("acute", "obtuse", "acute", "obtuse"),
    ("side", "side", "side", "side"),
)

# 60-degree vertex at the origin, right angle at (1/2, 0), 30-degree apex at
# (1/2, sqrt(3)/2).  The altitude (mating edge) joins the right angle to the
# apex; the hypotenuse joins the apex back to the 60-degree vertex.
_HALF_VERTEX_ROLES = ("sixty", "right", "apex")
_HALF_EDGE_ROLES = ("leg", "altitude", "hypotenuse")


def _half_proto(kind: TileKind) -> Prototype:
    return Prototype(
        kind,
        ConvexPolygon([_pt(ZERO, ZERO), _pt(HALF, ZERO), _pt(HALF, HALF_SQRT3)]),
        _HALF_VERTEX_ROLES,
        _HALF_EDGE_ROLES,
    )


_PROTOTYPES = {
    TileKind.SQUARE: _SQUARE_PROTO,
    TileKind.RHOMB: _RHOMB_PROTO,
    TileKind.HALF_GRAY: _half_proto(TileKind.HALF_GRAY),
    TileKind.HALF_YELLOW: _half_proto(TileKind.HALF_YELLOW),
    TileKind.HALF_BLUE: _half_proto(TileKind.HALF_BLUE),
}

PROTO_AREA = {
    TileKind.SQUARE: QUARTER,
    TileKind.RHOMB: HALF,
    TileKind.HALF_GRAY: SQRT3_8,
    TileKind.HALF_YELLOW: SQRT3_8,
    TileKind.HALF_BLUE: SQRT3_8,
}


def prototype(kind: TileKind) -> Prototype:
    return _PROTOTYPES[kind]


class PlacedTile:
    """A prototype under an isometry."""

    __slots__ = ("kind", "pose", "_polygon")

    def __init__(self, kind: TileKind, pose: Isometry):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "pose", pose)
        object.__setattr__(self, "_polygon", None)

    def __setattr__(self, name, value):
        raise AttributeError("PlacedTile is immutable")

    def realize(self) -> ConvexPolygon:
        """Pose-applied prototype, counterclockwise (a reflection reverses the
        stored vertex order to preserve orientation)."""
        poly = self._polygon
        if poly is None:
            proto = _PROTOTYPES[self.kind]
            verts = [self.pose.apply(v) for v in proto.vertices]
            if self.pose.m:
                verts.reverse()
            poly = ConvexPolygon(verts, _validated=True)
            object.__setattr__(self, "_polygon", poly)
        return poly

    def vertex(self, role: str) -> Point:
        proto = _PROTOTYPES[self.kind]
        i = proto.vertex_roles.index(role)
        return self.pose.apply(proto.vertices[i])

    def edges_with_roles(self):
        """Realized edges as (start, end, role) in prototype edge order."""
        proto = _PROTOTYPES[self.kind]
        verts = [self.pose.apply(v) for v in proto.vertices]
        n = len(verts)
        return [(verts[i], verts[(i + 1) % n], proto.edge_roles[i]) for i in range(n)]

    def edge_keys(self):
        """Each edge as (lo, hi, role) with endpoints in canonical coordinate
        order (lexicographic on normalized x then y)."""
        out = []
        for p, q, role in self.edges_with_roles():
            out.append((p, q, role) if p.lex_less(q) else (q, p, role))
        return out

    def altitude_edge(self):
        """For half-triangles: the mating edge as (right-angle end, apex end)."""
        proto = _PROTOTYPES[self.kind]
        return (self.pose.apply(proto.vertices[1]), self.pose.apply(proto.vertices[2]))

    def sort_key(self):
        return (int(self.kind),) + self.pose.key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlacedTile):
            return NotImplemented
        return self.kind == other.kind and self.pose == other.pose

    def __hash__(self) -> int:
        return hash((self.kind, self.pose))

    def __repr__(self) -> str:
        return f"PlacedTile({self.kind.token}, {self.pose!r})"


class Patch:
    """A finite set of placed tiles in canonical order."""

    __slots__ = ("tiles", "generation", "variant_choice", "seed_kind")

    def __init__(self, tiles, generation=0, variant_choice=None, seed_kind=None):
        tiles = sorted(tiles, key=PlacedTile.sort_key)
        object.__setattr__(self, "tiles", tuple(tiles))
        object.__setattr__(self, "generation", generation)
        object.__setattr__(self, "variant_choice", variant_choice)
        object.__setattr__(self, "seed_kind", seed_kind)

    def __setattr__(self, name, value):
        raise AttributeError("Patch is immutable")

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def total_area(self) -> RingValue:
        total = ZERO
        for t in self.tiles:
            total = total + PROTO_AREA[t.kind]
        return total

    # -- lossless JSON ------------------------------------------------

    def to_json_obj(self) -> dict:
        obj = {
            "generation": self.generation,
            "tiles": [
                {
                    "kind": t.kind.token,
                    "k": t.pose.k,
                    "m": int(t.pose.m),
                    "t": [list(t.pose.t.x.triple()), list(t.pose.t.y.triple())],
                }
                for t in self.tiles
            ],
        }
        if self.variant_choice is not None:
            obj["variant_choice"] = list(self.variant_choice)
        if self.seed_kind is not None:
            obj["seed_kind"] = self.seed_kind
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Patch":
        obj = json.loads(text)
        tiles = []
        for rec in obj["tiles"]:
            tx, ty = rec["t"]
            pose = Isometry(rec["k"], bool(rec["m"]),
                            Point(from_triple(tx), from_triple(ty)))
            tiles.append(PlacedTile(TileKind.from_token(rec["kind"]), pose))
        vc = obj.get("variant_choice")
        return Patch(tiles, obj.get("generation", 0),
                     tuple(vc) if vc else None, obj.get("seed_kind"))


def rotated_tile(tile: PlacedTile, iso: Isometry) -> PlacedTile:
    """tile moved by a world isometry (iso applied after the tile's pose)."""
    return PlacedTile(tile.kind, iso.compose(tile.pose))


def scale_pose_translation(pose: Isometry, factor: RingValue) -> Isometry:
    """Pose with its translation scaled by an exact factor; k and m kept."""
    t = pose.t
    return Isometry(pose.k, pose.m, Point(t.x * factor, t.y * factor))
