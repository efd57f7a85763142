"""Static SVG picture of Pic_R for Picard rank 2."""

from __future__ import annotations

import math
from fractions import Fraction

from .asymptotics import full_dim_cones, imm_infinity_description
from .cohomology import immaculate_scan
from .exactmath import dot
from .homology import tempting_sets
from .picard import PicardData
from .polyhedra import zonotope

SCALE = 40
MARGIN = 30


def _clip(poly, g, bound):
    """Keep the part of ``poly`` with ``g.x >= bound`` (Sutherland-Hodgman)."""
    out = []
    m = len(poly)
    for k in range(m):
        a, b = poly[k], poly[(k + 1) % m]
        va, vb = dot(g, a) - bound, dot(g, b) - bound
        if va >= 0:
            out.append(a)
        if (va > 0 > vb) or (va < 0 < vb):
            t = va / (va - vb)
            out.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    return out


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def emit_plot(pic: PicardData, box, catalog=None) -> str:
    if pic.r != 2:
        raise ValueError(f"plots need Picard rank 2, this fan has rank {pic.r}")
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    (x0, x1), (y0, y1) = box
    lo = (Fraction(x0) - Fraction(1, 2), Fraction(y0) - Fraction(1, 2))
    hi = (Fraction(x1) + Fraction(1, 2), Fraction(y1) + Fraction(1, 2))
    width = float(hi[0] - lo[0]) * SCALE + 2 * MARGIN
    height = float(hi[1] - lo[1]) * SCALE + 2 * MARGIN

    def sx(p):
        return _fmt((p[0] - lo[0]) * SCALE + MARGIN)

    def sy(p):
        return _fmt((hi[1] - p[1]) * SCALE + MARGIN)

    def pts(poly):
        return " ".join(f"{sx(p)},{sy(p)}" for p in poly)

    view = [lo, (hi[0], lo[1]), hi, (lo[0], hi[1])]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f"<title>{pic.fan}</title>",
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]
    lines.append('<g id="forbidden-cones">')
    for fc in full_dim_cones(pic, catalog):
        poly = view
        for g in fc.cone.facets:
            poly = _clip(poly, g, dot(g, fc.q_real))
            if not poly:
                break
        if poly:
            label = "{" + ",".join(map(str, fc.I)) + "}"
            lines.append(f'<polygon class="cone" data-I="{label}" points="{pts(poly)}" '
                         'fill="#d62728" fill-opacity="0.12" stroke="#d62728" stroke-width="1"/>')
    lines.append("</g>")

    z = zonotope(pic)
    c = z.center
    verts = sorted(z.vertices, key=lambda v: math.atan2(float(v[1] - c[1]), float(v[0] - c[0])))
    lines.append(f'<polygon class="zonotope" points="{pts(verts)}" fill="none" '
                 'stroke="#1f77b4" stroke-width="2"/>')

    lines.append('<g id="immaculate">')
    for L in immaculate_scan(pic, catalog, box):
        p = L.free
        lines.append(f'<circle class="immaculate" cx="{sx(p)}" cy="{sy(p)}" r="4" fill="#2ca02c"/>')
    lines.append("</g>")

    desc = imm_infinity_description(pic, catalog)
    origin = ((lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2)
    reach = min(hi[0] - lo[0], hi[1] - lo[1]) / 2
    arrows = list(desc.points) + [e for arc in desc.arcs for e in arc]
    lines.append('<g id="imm-infinity">')
    for d in arrows:
        v = d.coords
        norm = math.hypot(*v)
        tip = tuple(o + Fraction(reach) * Fraction(a / norm).limit_denominator(10 ** 6) for o, a in zip(origin, v))
        lines.append(f'<line class="imm-infinity" data-direction="{d}" x1="{sx(origin)}" y1="{sy(origin)}" '
                     f'x2="{sx(tip)}" y2="{sy(tip)}" stroke="#9467bd" stroke-width="2" '
                     'marker-end="url(#arrow)"/>')
    lines.append("</g>")
    lines.insert(4, '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
                    'orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#9467bd"/></marker></defs>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
