"""Exact rational cones, forbidden cones and the Thomsen zonotope in Pic_R."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import (GE, EQ, GT, LinearSystem, dot, lp_feasible, nullspace,
                        primitive, rank)
from .picard import DivisorClass, PicardData, class_of

CLOSED, INTERIOR, HALF_OPEN = "closed", "interior", "half_open"


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone ``{x : g.x >= 0 for g in facets}`` in ``Q^ambient``.

    ``facets`` are primitive integer normals in lexicographic order; a
    lower-dimensional cone carries each equation of its span as the pair
    ``+p, -p``.
    """

    ambient: int
    generators: tuple[tuple[Fraction, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    dimension: int
    lineality_dim: int

    def contains(self, x) -> bool:
        return all(dot(g, x) >= 0 for g in self.facets)

    def interior_contains(self, x) -> bool:
        return interior_contains(self, x)

    @property
    def full_dimensional(self) -> bool:
        return self.dimension == self.ambient

    def negated(self) -> "Cone":
        return Cone(self.ambient, tuple(tuple(-a for a in g) for g in self.generators),
                    tuple(sorted(tuple(-a for a in g) for g in self.facets)),
                    self.dimension, self.lineality_dim)


def cone_from_generators(gens: Sequence[Sequence], ambient: int | None = None) -> Cone:
    """Facet description of the cone spanned by ``gens``.

    A facet of a ``k``-dimensional cone contains ``k - 1`` independent
    generators, so each candidate normal is the unique (up to scale)
    functional inside the span vanishing on such a subset; it is kept if
    every generator lies on one side of it.
    """
    gens = [tuple(Fraction(a) for a in g) for g in gens if any(g)]
    if ambient is None:
        if not gens:
            raise ValueError("ambient dimension needed for an empty generator list")
        ambient = len(gens[0])
    k = rank(gens) if gens else 0
    perp = [primitive(p) for p in nullspace(gens, ambient)] if gens else [
        tuple(int(i == j) for j in range(ambient)) for i in range(ambient)]
    facets = set()
    for p in perp:
        facets.add(p)
        facets.add(tuple(-a for a in p))
    if k >= 1:
        for sub in itertools.combinations(gens, k - 1):
            ns = nullspace(list(sub) + [list(p) for p in perp], ambient)
            if len(ns) != 1:
                continue
            g = primitive(ns[0])
            vals = [dot(g, x) for x in gens]
            if all(v >= 0 for v in vals):
                facets.add(g)
            elif all(v <= 0 for v in vals):
                facets.add(tuple(-a for a in g))
    facets = tuple(sorted(facets))
    lin = len(nullspace([list(f) for f in facets], ambient)) if facets else ambient
    return Cone(ambient, tuple(gens), facets, k, lin)


def is_strongly_convex(cone: Cone) -> bool:
    return cone.lineality_dim == 0


def interior_contains(cone: Cone, point) -> bool:
    """Membership in the interior of ``cone`` taken in the ambient space."""
    if len(point) != cone.ambient:
        raise ValueError(f"point has dimension {len(point)}, cone lives in Q^{cone.ambient}")
    if not cone.full_dimensional:
        return False
    return all(dot(g, point) > 0 for g in cone.facets)


def facets_irredundant(cone: Cone) -> bool:
    """Check by exact LP that dropping any facet enlarges the cone."""
    for g in cone.facets:
        rows = [(f, GE, 0) for f in cone.facets if f != g] + [([-a for a in g], GE, 1)]
        if not lp_feasible(LinearSystem.build(cone.ambient, rows)):
            return False
    return True


@dataclass(frozen=True)
class ForbiddenConeData:
    I: tuple[int, ...]
    q_class: DivisorClass
    q_real: tuple[Fraction, ...]
    cone: Cone

    @property
    def full_dim(self) -> bool:
        return self.cone.full_dimensional

    def contains(self, x) -> bool:
        """Membership of a real point in the translated cone ``q_I + C_I``."""
        return self.cone.contains([a - b for a, b in zip(x, self.q_real)])


@functools.lru_cache(maxsize=4096)
def _forbidden_cone(pic: PicardData, I: tuple[int, ...]) -> ForbiddenConeData:
    Iset = set(I)
    gens = [tuple(-a for a in e) if i in Iset else e for i, e in enumerate(pic.E_real)]
    cone = cone_from_generators(gens, pic.r)
    q = class_of(pic, [-int(i in Iset) for i in range(pic.n)])
    return ForbiddenConeData(I, q, tuple(Fraction(a) for a in q.free), cone)


def forbidden_cone(pic: PicardData, I) -> ForbiddenConeData:
    I = tuple(sorted(I))
    if any(i < 0 or i >= pic.n for i in I):
        raise IndexError(f"index set {list(I)} out of range")
    return _forbidden_cone(pic, I)


# ---------------------------------------------------------------------------
# Thomsen zonotope


@dataclass(frozen=True)
class Zonotope:
    """Minkowski sum of the segments ``[-1, 0] * E_i`` with both descriptions.

    ``inequalities`` holds triples ``(g, lo, hi)`` meaning ``lo <= g.x <= hi``.
    """

    segments: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[tuple[tuple[int, ...], Fraction, Fraction], ...]
    vertices: tuple[tuple[Fraction, ...], ...]

    @property
    def ambient(self) -> int:
        return len(self.segments[0])

    @property
    def center(self) -> tuple[Fraction, ...]:
        return tuple(-sum(col) / 2 for col in zip(*self.segments))

    def bounding_box(self):
        out = []
        for k in range(self.ambient):
            lo = sum(min(0, -e[k]) for e in self.segments)
            hi = sum(max(0, -e[k]) for e in self.segments)
            out.append((Fraction(lo), Fraction(hi)))
        return out


def _support(segments, g):
    vals = [-dot(g, e) for e in segments]
    return sum(min(0, v) for v in vals), sum(max(0, v) for v in vals)


@functools.lru_cache(maxsize=256)
def zonotope(pic: PicardData) -> Zonotope:
    segs = pic.E_real
    r = pic.r
    normals = set()
    for sub in itertools.combinations(segs, r - 1):
        ns = nullspace([list(s) for s in sub], r)
        if len(ns) == 1:
            g = primitive(ns[0])
            if g < tuple(-a for a in g):
                g = tuple(-a for a in g)
            normals.add(g)
    ineqs = tuple((g,) + tuple(_support(segs, g)) for g in sorted(normals))

    points = set()
    for mask in itertools.product((0, 1), repeat=len(segs)):
        points.add(tuple(-sum(m * e[k] for m, e in zip(mask, segs)) for k in range(r)))
    verts = []
    for p in sorted(points):
        tight = [g for g, lo, hi in ineqs if dot(g, p) in (lo, hi)]
        if tight and rank(tight) == r:
            verts.append(p)
    return Zonotope(segs, ineqs, tuple(verts))


def membership(z: Zonotope, point, mode: str = CLOSED) -> bool:
    point = tuple(Fraction(a) for a in point)
    if mode == CLOSED:
        return all(lo <= dot(g, point) <= hi for g, lo, hi in z.inequalities)
    if mode == INTERIOR:
        return all(lo < dot(g, point) < hi for g, lo, hi in z.inequalities)
    if mode == HALF_OPEN:
        # point = sum gamma_i E_i with -1 < gamma_i <= 0, decided exactly
        n = len(z.segments)
        rows = []
        for k in range(z.ambient):
            rows.append(([e[k] for e in z.segments], EQ, point[k]))
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append((e, GT, -1))
            rows.append(([-a for a in e], GE, 0))
        return lp_feasible(LinearSystem.build(n, rows)).feasible
    raise ValueError(f"unknown membership mode {mode!r}")


def zonotope_classes(pic: PicardData, mode: str = INTERIOR) -> list[DivisorClass]:
    """Every class whose real image lies in the open or half-open zonotope."""
    if mode not in (INTERIOR, HALF_OPEN):
        raise ValueError("mode must be 'interior' or 'half_open'")
    z = zonotope(pic)
    ranges = [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in z.bounding_box()]
    out = []
    for p in itertools.product(*ranges):
        if membership(z, p, CLOSED) and membership(z, p, mode):
            for t in pic.torsion_elements():
                out.append(pic.make_class(p, t))
    return out


def vertex_check(pic: PicardData, I) -> bool:
    """``q_I`` is a vertex of Z and every vertex of Z lies in ``q_I - C_I``."""
    fc = forbidden_cone(pic, I)
    z = zonotope(pic)
    if fc.q_real not in z.vertices:
        return False
    return all(
        fc.cone.contains([q - x for q, x in zip(fc.q_real, v)]) for v in z.vertices
    )
