"""Cohomology dimensions of line bundles and immaculacy.

For a tempting set ``I`` and a divisor representative ``c`` of ``L``, the
fibre of ``pi_I`` over ``L`` is in bijection with the lattice points ``m`` of
the pattern polytope

    <m, v_i> >= -c_i        (i not in I)
    <m, v_i> <= -c_i - 1    (i in I)

because two preimages differ by a principal divisor ``(<m, v_i>)_i``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .exactmath import GE, UNBOUNDED, LinearSystem, lattice_points
from .fan import StackyFan
from .homology import TemptingCatalog, is_tempting, tempting_sets
from .picard import DivisorClass, PicardData, class_of, divisor_rep


class UnboundedPatternError(ArithmeticError):
    """A pattern polytope turned out unbounded; the fan or ``I`` is invalid."""


def pattern_polytope(pic: PicardData, c: Sequence[int], I) -> LinearSystem:
    Iset = set(I)
    rows = []
    for i, v in enumerate(pic.fan.rays):
        if i in Iset:
            rows.append(([-a for a in v], GE, c[i] + 1))
        else:
            rows.append((v, GE, -c[i]))
    return LinearSystem.build(pic.fan.dim, rows)


def count_pI(pic: PicardData, L: DivisorClass, I, *, rep: Sequence[int] | None = None) -> int:
    """Cardinality of the fibre of ``pi_I`` over ``L`` (``I`` must be tempting)."""
    I = tuple(sorted(I))
    if not is_tempting(pic.fan, I):
        raise ValueError(f"{list(I)} is not tempting")
    c = divisor_rep(pic, L) if rep is None else tuple(rep)
    pts = lattice_points(pattern_polytope(pic, c, I))
    if pts is UNBOUNDED:
        raise UnboundedPatternError(f"pattern polytope for I={list(I)} is unbounded")
    return len(pts)


def cohomology(pic: PicardData, catalog: TemptingCatalog | None, L: DivisorClass) -> tuple[int, ...]:
    """``(h^0, ..., h^d)`` of the line bundle ``L``."""
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    d = pic.fan.dim
    c = divisor_rep(pic, L)
    h = [0] * (d + 1)
    for I, ranks in catalog:
        weights = [(i, ranks[i - 1]) for i in range(d + 1) if ranks[i - 1]]
        if not weights:
            continue
        p = count_pI(pic, L, I, rep=c)
        for i, w in weights:
            h[i] += w * p
    return tuple(h)


def is_immaculate(pic: PicardData, catalog: TemptingCatalog | None, L: DivisorClass) -> bool:
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    c = divisor_rep(pic, L)
    empty_fibres = all(count_pI(pic, L, I, rep=c) == 0 for I, _ in catalog)
    vanishing = not any(cohomology(pic, catalog, L))
    if empty_fibres != vanishing:
        raise ArithmeticError(f"fibre count and cohomology disagree for {L}")
    return empty_fibres


def box_classes(pic: PicardData, box: Sequence[tuple[int, int]]) -> list[DivisorClass]:
    """All classes with free coordinates in ``box``, lexicographic, then torsion."""
    if len(box) != pic.r:
        raise ValueError(f"box needs {pic.r} intervals, got {len(box)}")
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return [pic.make_class(p, t) for p in itertools.product(*ranges) for t in pic.torsion_elements()]


def immaculate_scan(pic: PicardData, catalog: TemptingCatalog | None, box) -> list[DivisorClass]:
    if catalog is None:
        catalog = tempting_sets(pic.fan)
    return [L for L in box_classes(pic, box) if is_immaculate(pic, catalog, L)]


def euler_characteristic(h: Iterable[int]) -> int:
    return sum((-1) ** i * x for i, x in enumerate(h))
