"""Deterministic SVG rendering of patches.

Coordinates are correctly rounded decimal expansions of exact values (12
fractional digits), so identical patches always produce byte-identical SVG.
"""

from __future__ import annotations

from .exact import RingValue
from .geometry import Point
from .tiles import HALF_KINDS, Patch, PlacedTile, TileKind

DIGITS = 12

DEFAULT_PALETTE = {
    TileKind.SQUARE: "#FFFFFF",
    TileKind.RHOMB: "#D9534F",
    TileKind.HALF_GRAY: "#9E9E9E",
    TileKind.HALF_YELLOW: "#F4C542",
    TileKind.HALF_BLUE: "#4A78C2",
}
MONO_TRIANGLE_FILL = "#9E9E9E"
STROKE = "#333333"


class RenderStyle:
    """Fill colors, stroke width, and the monochrome-triangle switch.

    With monochrome_triangles on, the three half-triangle kinds render
    identically and mated pairs are drawn as single equilateral triangles
    (suppressing the altitude stroke), so the patch shows only three apparent
    shapes.
    """

    def __init__(self, palette=None, monochrome_triangles=False,
                 stroke_width=0.01, margin=0.25, deflate=0):
        self.palette = dict(DEFAULT_PALETTE)
        if palette:
            self.palette.update(palette)
        self.monochrome_triangles = monochrome_triangles
        self.stroke_width = stroke_width
        self.margin = margin
        self.deflate = deflate  # render coordinates scaled by (1+sqrt3)**-deflate


def _fmt(v: RingValue, deflate: int) -> str:
    if deflate:
        v = v.inflate(-deflate)
    return v.decimal(DIGITS)


def _mated_pairs(patch: Patch):
    """Pair half-triangles sharing an altitude edge (apex ends coincident)."""
    by_edge: dict = {}
    for i, t in enumerate(patch.tiles):
        if t.kind in HALF_KINDS:
            foot, apex = t.altitude_edge()
            key = (foot, apex) if foot.lex_less(apex) else (apex, foot)
            by_edge.setdefault((key, apex), []).append(i)
    pairs = []
    lone = set(i for i, t in enumerate(patch.tiles) if t.kind in HALF_KINDS)
    for (_, _), idxs in by_edge.items():
        if len(idxs) == 2:
            pairs.append(tuple(idxs))
            lone.discard(idxs[0])
            lone.discard(idxs[1])
    return pairs, sorted(lone)


def patch_to_svg(patch: Patch, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    d = style.deflate
    polys = []  # (fill color, list of Points)
    if style.monochrome_triangles:
        pairs, lone = _mated_pairs(patch)
        consumed = set()
        for i, j in pairs:
            a, b = patch.tiles[i], patch.tiles[j]
            apex = a.vertex("apex")
            tri = [a.vertex("sixty"), b.vertex("sixty"), apex]
            # counterclockwise: sixty of the unmirrored half goes first
            if a.pose.m:
                tri = [b.vertex("sixty"), a.vertex("sixty"), apex]
            polys.append((MONO_TRIANGLE_FILL, tri))
            consumed.update((i, j))
        for i, t in enumerate(patch.tiles):
            if i in consumed:
                continue
            fill = (MONO_TRIANGLE_FILL if t.kind in HALF_KINDS
                    else style.palette[t.kind])
            polys.append((fill, list(t.realize().vertices)))
    else:
        for t in patch.tiles:
            polys.append((style.palette[t.kind], list(t.realize().vertices)))

    xs = []
    ys = []
    for _, verts in polys:
        for v in verts:
            x = float(v.x) / float(RingValue(1).inflate(d))
            y = float(v.y) / float(RingValue(1).inflate(d))
            xs.append(x)
            ys.append(y)
    if not xs:
        xs = ys = [0.0]
    mg = style.margin
    x0, y0 = min(xs) - mg, min(ys) - mg
    w, h = max(xs) - x0 + mg, max(ys) - y0 + mg
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.6f} {y0:.6f} {w:.6f} {h:.6f}" width="800" height="800">',
        f'<g transform="scale(1,-1) translate(0,{-(2 * y0 + h):.6f})" '
        f'stroke="{STROKE}" stroke-width="{style.stroke_width}" '
        f'stroke-linejoin="round">',
    ]
    for fill, verts in polys:
        pts = " ".join(f"{_fmt(v.x, d)},{_fmt(v.y, d)}" for v in verts)
        lines.append(f'<polygon fill="{fill}" points="{pts}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
