"""Asymptotics of immaculate line bundles.

Directions at infinity are points of the projective space of lines through
the origin of Pic_R.  For a tempting ``I`` the boundary set at infinity of
``C_I`` is the image of ``C_I - {0}``; when ``C_I`` is full-dimensional and
strongly convex, ``C_I`` and ``-C_I`` meet only at the origin, so the
relative interior of that set is exactly the image of ``int(C_I) u -int(C_I)``.
A lower-dimensional ``C_I`` contributes nothing (empty interior).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import is_immaculate
from .exactmath import EQ, GE, GT, LinearSystem, dot, lp_feasible, primitive, rank, solve
from .homology import LimitExceeded, TemptingCatalog, tempting_sets
from .picard import DivisorClass, PicardData, class_of
from .polyhedra import (ForbiddenConeData, INTERIOR, forbidden_cone, interior_contains,
                        membership, zonotope, zonotope_classes)

DEFAULT_MAX_CELLS = 200_000


class ConsistencyError(AssertionError):
    """An internal guarantee failed; indicates a bug rather than bad input."""


@dataclass(frozen=True, order=True)
class Direction:
    """Primitive integer vector with first nonzero coordinate positive."""

    coords: tuple[int, ...]

    @classmethod
    def from_vector(cls, v: Sequence) -> "Direction":
        p = primitive(v)
        if not any(p):
            raise ValueError("zero vector has no direction")
        if next(a for a in p if a) < 0:
            p = tuple(-a for a in p)
        return cls(p)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def full_dim_cones(pic: PicardData, catalog: TemptingCatalog) -> list[ForbiddenConeData]:
    cones = [forbidden_cone(pic, I) for I, _ in catalog]
    return [fc for fc in cones if fc.full_dim]


def _covering(cones, v):
    return next((fc.I for fc in cones if interior_contains(fc.cone, v)), None)


@dataclass
class InfinityReport:
    infinite: bool
    witness: Direction | None = None
    certificate: list = field(default_factory=list)  # (signs, v, I, I')
    hyperplanes: list = field(default_factory=list)

    @property
    def decision(self) -> str:
        return "INFINITE" if self.infinite else "FINITE"


def arrangement_hyperplanes(pic: PicardData, catalog: TemptingCatalog) -> list[tuple[int, ...]]:
    """Facet normals of all full-dimensional tempting cones, deduped up to sign."""
    normals = set()
    for fc in full_dim_cones(pic, catalog):
        for g in fc.cone.facets:
            normals.add(Direction.from_vector(g).coords)
    return sorted(normals)


def max_cells() -> int:
    raw = os.environ.get("IMMACULATUM_MAX_CELLS")
    return int(raw) if raw else DEFAULT_MAX_CELLS


def arrangement_cells(r: int, normals: Sequence[Sequence[int]], cap: int | None = None):
    """Nonzero sign-vector cells of a central arrangement with a sample point each.

    Sign vectors are grown one hyperplane at a time and infeasible prefixes
    are pruned; the strict rows are homogeneous, so ``> 0`` becomes ``>= 1``.
    Yields ``(signs, point)`` in lexicographic order of signs ``(+1, 0, -1)``.
    """
    cap = max_cells() if cap is None else cap
    out = []

    def system(signs):
        rows = []
        for s, h in zip(signs, normals):
            if s > 0:
                rows.append((h, GT, 0))
            elif s < 0:
                rows.append(([-a for a in h], GT, 0))
            else:
                rows.append((h, EQ, 0))
        return LinearSystem.build(r, rows)

    def extend(prefix):
        if len(prefix) == len(normals):
            if any(prefix):
                res = lp_feasible(system(prefix))
                out.append((tuple(prefix), res.point))
                if len(out) > cap:
                    raise LimitExceeded(f"arrangement has more than {cap} cells")
            return
        for s in (1, 0, -1):
            cand = prefix + [s]
            if lp_feasible(system(cand)):
                extend(cand)

    extend([])
    return out


def decide_infinite(pic: PicardData, catalog: TemptingCatalog | None = None,
                    cap: int | None = None) -> InfinityReport:
    """Is the set of immaculate classes infinite?

    Interior membership in every ``C_I`` is constant on each cell of the
    arrangement of facet hyperplanes, so one sample per cell decides whether
    the line through it avoids all interiors.  The facet normals of the
    effective cone already span Pic_R, so the all-zero cell is the origin
    and is skipped.
    """
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    cones = full_dim_cones(pic, catalog)
    normals = arrangement_hyperplanes(pic, catalog)
    if rank(normals) != pic.r:
        raise ConsistencyError("facet normals of tempting cones do not span Pic_R")
    cert = []
    for signs, v in arrangement_cells(pic.r, normals, cap):
        I = _covering(cones, v)
        J = _covering(cones, tuple(-a for a in v))
        if I is None and J is None:
            return InfinityReport(True, witness=Direction.from_vector(v), hyperplanes=normals)
        if I is None or J is None:
            raise ConsistencyError(f"cell {signs} covered on one side only")
        cert.append((signs, v, I, J))
    return InfinityReport(False, certificate=cert, hyperplanes=normals)


def verify_report(pic: PicardData, catalog: TemptingCatalog, report: InfinityReport) -> bool:
    cones = {fc.I: fc for fc in full_dim_cones(pic, catalog)}
    if report.infinite:
        return imm_infinity_contains(pic, catalog, report.witness)
    for signs, v, I, J in report.certificate:
        if I not in cones or J not in cones:
            return False
        if not interior_contains(cones[I].cone, v):
            return False
        if not interior_contains(cones[J].cone, [-a for a in v]):
            return False
        for s, h in zip(signs, report.hyperplanes):
            val = dot(h, v)
            if (val > 0) - (val < 0) != s:
                return False
    expected = {signs for signs, _ in arrangement_cells(pic.r, report.hyperplanes)}
    return expected == {c[0] for c in report.certificate}


def imm_infinity_contains(pic: PicardData, catalog: TemptingCatalog | None, w) -> bool:
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    w = w.coords if isinstance(w, Direction) else tuple(w)
    neg = tuple(-a for a in w)
    for fc in full_dim_cones(pic, catalog):
        if interior_contains(fc.cone, w) or interior_contains(fc.cone, neg):
            return False
    return True


# ---------------------------------------------------------------------------
# description of the directions at infinity


def _rp1_key(d: Direction):
    # canonical directions have angle in (-pi/2, pi/2]; order by that angle
    x, y = d.coords
    return Fraction(y, abs(x) + abs(y))


@dataclass
class ImmInfinityDescription:
    rank: int
    cones: list  # (I, facets) of full-dimensional tempting cones
    points: list = field(default_factory=list)  # isolated directions
    arcs: list = field(default_factory=list)  # closed arcs (start, end), counter-clockwise
    everything: bool = False
    samples: list = field(default_factory=list)  # r > 2: one direction per included cell

    @property
    def empty(self) -> bool:
        return not (self.points or self.arcs or self.everything or self.samples)


def imm_infinity_description(pic: PicardData, catalog: TemptingCatalog | None = None,
                             cap: int | None = None) -> ImmInfinityDescription:
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    cones = full_dim_cones(pic, catalog)
    desc = ImmInfinityDescription(pic.r, [(fc.I, fc.cone.facets) for fc in cones])

    def inside(v):
        return imm_infinity_contains(pic, catalog, v)

    if pic.r == 1:
        if inside((1,)):
            desc.points.append(Direction((1,)))
        return desc
    if pic.r > 2:
        for signs, v in arrangement_cells(pic.r, arrangement_hyperplanes(pic, catalog), cap):
            if inside(v):
                d = Direction.from_vector(v)
                if d not in desc.samples:
                    desc.samples.append(d)
        desc.samples.sort()
        return desc

    # r == 2: boundary rays of all cones, as points of RP^1 in angular order
    rays = set()
    for fc in cones:
        for g in fc.cone.facets:
            rays.add(Direction.from_vector((-g[1], g[0])))
    rays = sorted(rays, key=_rp1_key)
    elements = []  # alternating (kind, data, included)
    m = len(rays)
    for k, a in enumerate(rays):
        elements.append(("point", a, inside(a.coords)))
        b = rays[(k + 1) % m]
        if m == 1:
            sample = (-a.coords[1], a.coords[0])
        elif k + 1 < m:
            sample = tuple(x + y for x, y in zip(a.coords, b.coords))
        else:
            sample = tuple(x - y for x, y in zip(a.coords, b.coords))
        elements.append(("arc", (a, b), inside(sample)))
    if all(e[2] for e in elements):
        desc.everything = True
        return desc
    # rotate so that we start right after an excluded element
    start = next(k for k, e in enumerate(elements) if not e[2])
    order = elements[start + 1:] + elements[:start + 1]
    run = []
    for e in order + [("stop", None, False)]:
        if e[2]:
            run.append(e)
            continue
        if run:
            pts = [x[1] for x in run if x[0] == "point"]
            if len(run) == 1:
                desc.points.append(pts[0])
            else:
                desc.arcs.append((pts[0], pts[-1]))
            run = []
    desc.points.sort()
    desc.arcs.sort()
    return desc


# ---------------------------------------------------------------------------
# constructions


def _primes():
    n = 2
    while True:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


def interior_class(pic: PicardData, max_denominator: int = 50) -> DivisorClass:
    """A class whose real image lies in the open zonotope.

    Pick a rational ``m`` with every ``<m, v_i>`` nonintegral; the divisor
    ``sum floor(<m, v_i>) E_i`` then maps to ``-sum frac(<m, v_i>) E_i``.
    """
    fan = pic.fan
    z = zonotope(pic)
    for q in _primes():
        if q > max_denominator:
            break
        grid = range(-(q - 1), q)
        for num in itertools.product(grid, repeat=fan.dim):
            m = [Fraction(a, q) for a in num]
            pairings = [dot(m, v) for v in fan.rays]
            if any(p.denominator == 1 for p in pairings):
                continue
            c = [math.floor(p) for p in pairings]
            L = class_of(pic, c)
            if membership(z, L.free, INTERIOR):
                return L
            raise ConsistencyError(f"floor construction left the open zonotope: {L}")
    found = zonotope_classes(pic, INTERIOR)
    if not found:
        raise ConsistencyError("no class maps to the interior of the zonotope")
    return found[0]


def lattice_step(pic: PicardData, w: Direction) -> tuple[int, ...]:
    """Smallest positive multiple of ``w`` in the free lattice ``Z^r``.

    Free coordinates range over all of ``Z^r`` and ``w`` is primitive, so
    this is ``w`` itself.
    """
    return w.coords


def witness_immaculate_family(pic: PicardData, catalog: TemptingCatalog | None, w,
                              count: int) -> list[DivisorClass]:
    """Classes ``z0 + k s`` for ``k = 1..count`` along a witness line."""
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    if not isinstance(w, Direction):
        w = Direction.from_vector(w)
    if not imm_infinity_contains(pic, catalog, w):
        raise ValueError(f"direction {w} meets the interior of a forbidden cone")
    z0 = interior_class(pic)
    step = pic.make_class(lattice_step(pic, w))
    family = [z0 + k * step for k in range(1, count + 1)]
    for L in family:
        if not is_immaculate(pic, catalog, L):
            raise ConsistencyError(f"class {L} on the witness line is not immaculate")
    return family


@dataclass
class HullCheck:
    hull_dim: int
    degenerate: bool
    points: list
    direction: Direction | None = None


def bw_hull_check(pic: PicardData, c: Sequence[int]) -> HullCheck:
    """Affine dimension of the points ``psi_sigma`` of a piecewise linear ``psi``.

    On each maximal cone ``sigma`` the function is linear, given by the
    unique ``psi_sigma`` with ``<psi_sigma, v_i> = -c_i`` for ``i`` in sigma.
    A degenerate hull gives a direction at infinity (sufficient only).
    """
    fan = pic.fan
    if len(c) != fan.n:
        raise ValueError(f"divisor needs {fan.n} coefficients")
    pts = []
    for sigma in fan.max_cones:
        psi = solve([fan.rays[i] for i in sigma], [-c[i] for i in sigma])
        if psi not in pts:
            pts.append(tuple(psi))
    base = pts[0]
    hull_dim = rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0
    degenerate = hull_dim < fan.dim
    L = class_of(pic, c)
    direction = Direction.from_vector(L.free) if degenerate and any(L.free) else None
    return HullCheck(hull_dim, degenerate, pts, direction)
