"""Reduced simplicial homology over Q and tempting subsets of rays."""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass

from .exactmath import integer_rank
from .fan import SimplicialComplex, StackyFan, restricted_complex

DEFAULT_MAX_SUBSETS = 2 ** 24


class LimitExceeded(RuntimeError):
    """A configured computation cap (subsets, arrangement cells) was hit."""


@dataclass(frozen=True)
class HomologyRanks:
    ranks: tuple[tuple[int, int], ...]  # (degree, rank) for degrees -1..dim

    def __getitem__(self, i: int) -> int:
        return dict(self.ranks).get(i, 0)

    @property
    def nonzero(self) -> bool:
        return any(r for _, r in self.ranks)

    def as_dict(self) -> dict[int, int]:
        return dict(self.ranks)


def boundary_matrix(cx: SimplicialComplex, i: int) -> list[list[int]]:
    """Matrix of the reduced boundary map from i-faces to (i-1)-faces.

    Degree 0 maps every vertex to the empty face (augmentation).
    """
    rows = cx.faces_of_dim(i - 1)
    cols = cx.faces_of_dim(i)
    index = {f: k for k, f in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for k in range(len(face)):
            M[index[face[:k] + face[k + 1:]]][j] = (-1) ** k
    return M


def chain_ranks(cx: SimplicialComplex) -> dict[int, int]:
    return {i: len(cx.faces_of_dim(i)) for i in range(-1, cx.dimension + 1)}


def reduced_homology_ranks(cx: SimplicialComplex) -> HomologyRanks:
    top = cx.dimension
    sizes = chain_ranks(cx)
    brank = {i: integer_rank(boundary_matrix(cx, i)) for i in range(0, top + 1)}
    brank[-1] = 0
    brank[top + 1] = 0
    ranks = tuple((i, sizes[i] - brank[i] - brank[i + 1]) for i in range(-1, top + 1))
    return HomologyRanks(ranks)


@functools.lru_cache(maxsize=65536)
def restricted_homology(fan: StackyFan, I: frozenset) -> HomologyRanks:
    return reduced_homology_ranks(restricted_complex(fan, I))


def is_tempting(fan: StackyFan, I) -> bool:
    return restricted_homology(fan, frozenset(I)).nonzero


@dataclass(frozen=True)
class TemptingCatalog:
    sets: tuple[tuple[int, ...], ...]
    homology: tuple[HomologyRanks, ...]

    def __iter__(self):
        return iter(zip(self.sets, self.homology))

    def __len__(self):
        return len(self.sets)

    def __contains__(self, I) -> bool:
        return tuple(sorted(I)) in self.sets


def max_subsets() -> int:
    raw = os.environ.get("IMMACULATUM_MAX_SUBSETS")
    return int(raw) if raw else DEFAULT_MAX_SUBSETS


def tempting_sets(fan: StackyFan) -> TemptingCatalog:
    """All tempting index sets, sorted by (size, indices).

    Only subsets containing ray 0 are scanned; complements are derived from
    the complement symmetry and each derived complement is re-checked.
    """
    # the cap is enforced on every call, cached or not
    if 2 ** fan.n > max_subsets():
        raise LimitExceeded(f"2^{fan.n} subsets exceeds the cap of {max_subsets()} "
                            "(set IMMACULATUM_MAX_SUBSETS to raise it)")
    return _tempting_sets(fan)


@functools.lru_cache(maxsize=256)
def _tempting_sets(fan: StackyFan) -> TemptingCatalog:
    n = fan.n
    full = frozenset(range(n))
    found: dict[frozenset, HomologyRanks] = {}
    rest = range(1, n)
    for k in range(n):
        for tail in itertools.combinations(rest, k):
            I = frozenset((0,) + tail)
            h = restricted_homology(fan, I)
            if not h.nonzero:
                continue
            comp = full - I
            hc = restricted_homology(fan, comp)
            if not hc.nonzero:
                raise ArithmeticError(f"complement symmetry fails for {sorted(I)}")
            found[I] = h
            found[comp] = hc
    keys = sorted(found, key=lambda s: (len(s), sorted(s)))
    return TemptingCatalog(tuple(tuple(sorted(s)) for s in keys), tuple(found[s] for s in keys))
