"""Picard group of a stacky fan: divisor classes, real images, Serre duality."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import AbelianPresentation, cokernel
from .fan import StackyFan

RealClass = tuple  # tuple[Fraction, ...], a point of Pic_R in the free basis


@dataclass(frozen=True)
class DivisorClass:
    """Element of Pic: free coordinates plus torsion residues in ``[0, t_j)``."""

    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(a) for a in self.free))
        object.__setattr__(self, "torsion", tuple(int(a) % t for a, t in zip(self.torsion, self.moduli)))

    def _new(self, free, torsion):
        return DivisorClass(tuple(free), tuple(torsion), self.moduli)

    def __add__(self, other: "DivisorClass"):
        return self._new((a + b for a, b in zip(self.free, other.free)),
                         (a + b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self):
        return self._new((-a for a in self.free), (-a for a in self.torsion))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return self._new((k * a for a in self.free), (k * a for a in self.torsion))

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def sort_key(self):
        return self.free + self.torsion

    def __str__(self):
        s = "(" + ",".join(map(str, self.free)) + ")"
        if self.moduli:
            s += "[" + ",".join(f"{a} mod {t}" for a, t in zip(self.torsion, self.moduli)) + "]"
        return s


@dataclass(frozen=True)
class PicardData:
    fan: StackyFan
    n: int
    pairing_matrix: tuple[tuple[int, ...], ...]
    presentation: AbelianPresentation
    E_classes: tuple[DivisorClass, ...]
    E_real: tuple[tuple[Fraction, ...], ...]

    @property
    def r(self) -> int:
        return self.presentation.free_rank

    @property
    def torsion_invariants(self) -> tuple[int, ...]:
        return self.presentation.torsion_invariants

    def make_class(self, free: Sequence[int], torsion: Sequence[int] = ()) -> DivisorClass:
        if len(free) != self.r:
            raise ValueError(f"expected {self.r} free coordinates, got {len(free)}")
        torsion = tuple(torsion) or (0,) * len(self.torsion_invariants)
        if len(torsion) != len(self.torsion_invariants):
            raise ValueError(f"expected {len(self.torsion_invariants)} torsion coordinates")
        return DivisorClass(tuple(free), torsion, self.torsion_invariants)

    def zero(self) -> DivisorClass:
        return self.make_class((0,) * self.r)

    def torsion_elements(self):
        return self.presentation.torsion_elements()


@functools.lru_cache(maxsize=256)
def picard_group(fan: StackyFan) -> PicardData:
    """``Pic = Z^n / M`` where ``M`` is spanned by ``(<m, v_i>)_i`` for ``m`` in the dual lattice."""
    pairing = tuple(tuple(v) for v in fan.rays)  # row i holds <e_j*, v_i>
    pres = cokernel([list(row) for row in pairing], fan.n)
    moduli = pres.torsion_invariants
    E_classes = []
    for i in range(fan.n):
        e = [0] * fan.n
        e[i] = 1
        free, tors = pres.project(e)
        E_classes.append(DivisorClass(free, tors, moduli))
    E_real = tuple(tuple(Fraction(a) for a in c.free) for c in E_classes)
    return PicardData(fan, fan.n, pairing, pres, tuple(E_classes), E_real)


def class_of(pic: PicardData, c: Sequence[int]) -> DivisorClass:
    if len(c) != pic.n:
        raise ValueError(f"divisor needs {pic.n} coefficients, got {len(c)}")
    free, tors = pic.presentation.project([int(x) for x in c])
    return DivisorClass(free, tors, pic.torsion_invariants)


def divisor_rep(pic: PicardData, L: DivisorClass) -> tuple[int, ...]:
    """A torus-invariant divisor ``c`` with ``class_of(c) == L``."""
    return pic.presentation.lift(L.free, L.torsion)


def real_image(pic: PicardData, L: DivisorClass) -> tuple[Fraction, ...]:
    return tuple(Fraction(a) for a in L.free)


def canonical_class(pic: PicardData) -> DivisorClass:
    return class_of(pic, [-1] * pic.n)


def serre_dual(pic: PicardData, L: DivisorClass) -> DivisorClass:
    return canonical_class(pic) - L
