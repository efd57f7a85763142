"""Stacky fans, their simplicial complexes, and a catalog of builtin examples."""

from __future__ import annotations

import functools
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exactmath import determinant, dot, nullspace


class InvalidFanError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid fan")


@dataclass(frozen=True)
class StackyFan:
    """Rank-``dim`` lattice, one (not necessarily primitive) vector per ray,
    and the maximal cones as sorted tuples of 0-based ray indices."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    @classmethod
    def make(cls, dim, rays, max_cones, name=None) -> "StackyFan":
        rays = tuple(tuple(int(x) for x in v) for v in rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in max_cones))
        return cls(int(dim), rays, cones, name)

    @property
    def n(self) -> int:
        return len(self.rays)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "rays": [list(v) for v in self.rays],
               "max_cones": [list(c) for c in self.max_cones]}
        if self.name:
            out["name"] = self.name
        return out

    def __str__(self):
        return self.name or f"fan(dim={self.dim}, n={self.n})"


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: frozenset
    faces: frozenset

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, i: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == i + 1)


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _wall_side(fan: StackyFan, wall: tuple[int, ...], ray: int) -> int:
    """Sign of ``ray`` relative to the hyperplane spanned by ``wall``."""
    normal = nullspace([fan.rays[i] for i in wall], fan.dim)
    if len(normal) != 1:
        return 0
    s = dot(normal[0], fan.rays[ray])
    return (s > 0) - (s < 0)


def validate(fan: StackyFan) -> ValidationReport:
    """Check that ``fan`` is a complete simplicial stacky fan.

    Completeness is certified combinatorially: every wall lies in exactly two
    maximal cones, the two cones sit on opposite sides of it, and the
    wall-adjacency graph is connected.
    """
    bad = []
    d, n = fan.dim, fan.n
    if d < 1:
        bad.append("dimension must be at least 1")
        return ValidationReport(bad)
    for i, v in enumerate(fan.rays):
        if len(v) != d:
            bad.append(f"ray {i} has length {len(v)}, expected {d}")
        elif not any(v):
            bad.append(f"ray {i} is zero")
    if bad:
        return ValidationReport(bad)
    for k, cone in enumerate(fan.max_cones):
        if len(set(cone)) != len(cone):
            bad.append(f"cone {k} {list(cone)} repeats an index")
            continue
        if any(i < 0 or i >= n for i in cone):
            bad.append(f"cone {k} {list(cone)} has an out-of-range index")
            continue
        if len(cone) != d:
            bad.append(f"cone {k} {list(cone)} has {len(cone)} rays, expected {d}")
            continue
        if determinant([fan.rays[i] for i in cone]) == 0:
            bad.append(f"simpliciality: cone {k} {list(cone)} has dependent rays")
    if len(set(fan.max_cones)) != len(fan.max_cones):
        bad.append("duplicate maximal cones")
    for i, j in itertools.combinations(range(n), 2):
        if _positive_multiple(fan.rays[i], fan.rays[j]):
            bad.append(f"distinct rays: rays {i} and {j} span the same ray")
    if bad:
        return ValidationReport(bad)
    if not fan.max_cones:
        return ValidationReport(["no maximal cones"])

    used = set(itertools.chain.from_iterable(fan.max_cones))
    for i in range(n):
        if i not in used:
            bad.append(f"ray {i} lies in no maximal cone")

    walls: dict[tuple[int, ...], list[int]] = {}
    for k, cone in enumerate(fan.max_cones):
        for w in itertools.combinations(cone, d - 1):
            walls.setdefault(w, []).append(k)
    adj = {k: set() for k in range(len(fan.max_cones))}
    for w, cones in sorted(walls.items()):
        if len(cones) != 2:
            bad.append(f"wall condition: wall {list(w)} lies in {len(cones)} maximal cone(s)")
            continue
        a, b = cones
        adj[a].add(b)
        adj[b].add(a)
        ra = next(i for i in fan.max_cones[a] if i not in w)
        rb = next(i for i in fan.max_cones[b] if i not in w)
        if _wall_side(fan, w, ra) * _wall_side(fan, w, rb) != -1:
            bad.append(f"opposite sides: cones {list(fan.max_cones[a])} and "
                       f"{list(fan.max_cones[b])} lie on the same side of wall {list(w)}")
    seen = {0}
    stack = [0]
    while stack:
        k = stack.pop()
        for j in adj[k] - seen:
            seen.add(j)
            stack.append(j)
    if len(seen) != len(fan.max_cones):
        bad.append("connectivity: wall-adjacency graph of maximal cones is disconnected")
    return ValidationReport(bad)


def _positive_multiple(u, v) -> bool:
    # u = t v with t > 0
    if any(a * y != b * x for (a, b), (x, y) in itertools.combinations(zip(u, v), 2)):
        return False
    return dot(u, v) > 0


def ensure_valid(fan: StackyFan) -> StackyFan:
    report = validate(fan)
    if not report.ok:
        raise InvalidFanError(report.violations)
    return fan


@functools.lru_cache(maxsize=256)
def full_complex(fan: StackyFan) -> SimplicialComplex:
    faces = set()
    for cone in fan.max_cones:
        for k in range(len(cone) + 1):
            faces.update(frozenset(s) for s in itertools.combinations(cone, k))
    faces.add(frozenset())
    return SimplicialComplex(frozenset(range(fan.n)), frozenset(faces))


def restricted_complex(fan: StackyFan, I: Iterable[int]) -> SimplicialComplex:
    I = frozenset(I)
    if any(i < 0 or i >= fan.n for i in I):
        raise IndexError(f"index set {sorted(I)} out of range for {fan.n} rays")
    faces = frozenset(f for f in full_complex(fan).faces if f <= I)
    return SimplicialComplex(I, faces)


# ---------------------------------------------------------------------------
# builtin fans


def projective_space(d: int) -> StackyFan:
    if d < 1:
        raise ValueError("projective_space needs d >= 1")
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays.append(tuple([-1] * d))
    cones = list(itertools.combinations(range(d + 1), d))
    return StackyFan.make(d, rays, cones, f"P{d}")


def product(f: StackyFan, g: StackyFan) -> StackyFan:
    rays = [tuple(v) + (0,) * g.dim for v in f.rays]
    rays += [(0,) * f.dim + tuple(v) for v in g.rays]
    cones = [a + tuple(b_i + f.n for b_i in b) for a in f.max_cones for b in g.max_cones]
    return StackyFan.make(f.dim + g.dim, rays, cones, f"{f.name}x{g.name}")


def hirzebruch(a: int) -> StackyFan:
    if a < 0:
        raise ValueError("hirzebruch needs a >= 0")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return StackyFan.make(2, rays, [(0, 1), (1, 2), (2, 3), (3, 0)], f"F{a}")


def stacky_p1(a: int, b: int) -> StackyFan:
    """Weighted projective line whose two divisors have degrees ``a`` and ``b``."""
    if a <= 0 or b <= 0 or math.gcd(a, b) != 1:
        raise ValueError("stacky_p1 needs coprime positive weights")
    name = "P1" if (a, b) == (1, 1) else f"P({a}:{b})"
    return StackyFan.make(1, [(b,), (-a,)], [(0,), (1,)], name)


def torsion_p1() -> StackyFan:
    """Rays 2 and -2 on Z; its Picard group is Z + Z/2."""
    return StackyFan.make(1, [(2,), (-2,)], [(0,), (1,)], "P1[2,-2]")


_CONSTRUCTORS = {
    "projective_space": projective_space,
    "product": product,
    "hirzebruch": hirzebruch,
    "stacky_p1": stacky_p1,
    "torsion_p1": torsion_p1,
}

_ALIASES = {
    "P1": "projective_space(1)",
    "P2": "projective_space(2)",
    "P3": "projective_space(3)",
    "P1xP1": "product(projective_space(1),projective_space(1))",
    "P2xP1": "product(projective_space(2),projective_space(1))",
    "P1xP1xP1": "product(product(projective_space(1),projective_space(1)),projective_space(1))",
    "F0": "hirzebruch(0)",
    "F1": "hirzebruch(1)",
    "F2": "hirzebruch(2)",
    "F1xP1": "product(hirzebruch(1),projective_space(1))",
    "P(2:3)": "stacky_p1(2,3)",
    "P(2:3)xP1": "product(stacky_p1(2,3),projective_space(1))",
}


def builtin(name: str, *params) -> StackyFan:
    """Construct a builtin fan by constructor name and parameters."""
    try:
        ctor = _CONSTRUCTORS[name]
    except KeyError:
        raise ValueError(f"unknown builtin fan {name!r}") from None
    return ctor(*params)


_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_builtin(spec: str) -> StackyFan:
    """Parse an expression such as ``product(stacky_p1(2,3),projective_space(1))``.

    Short aliases like ``P1xP1`` or ``F1`` are also accepted.
    """
    spec = _ALIASES.get(spec.strip(), spec)
    tokens = [m.groups() for m in _TOKEN.finditer(spec) if m.group(0).strip()]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def expect(ch):
        nonlocal pos
        if peek()[2] != ch:
            raise ValueError(f"malformed fan spec {spec!r}: expected {ch!r}")
        pos += 1

    def expr():
        nonlocal pos
        num, ident, _ = peek()
        if num is not None:
            pos += 1
            return int(num)
        if ident is None:
            raise ValueError(f"malformed fan spec {spec!r}")
        pos += 1
        if ident in _ALIASES:
            return parse_builtin(ident)
        args = []
        if peek()[2] == "(":
            pos += 1
            if peek()[2] != ")":
                args.append(expr())
                while peek()[2] == ",":
                    pos += 1
                    args.append(expr())
            expect(")")
        return builtin(ident, *args)

    fan = expr()
    if pos != len(tokens) or not isinstance(fan, StackyFan):
        raise ValueError(f"malformed fan spec {spec!r}")
    return fan


BUILTIN_CATALOG = ("P1", "P2", "P3", "P1xP1", "F1", "F2", "P(2:3)", "P(2:3)xP1", "P2xP1", "P1xP1xP1")


def builtin_catalog() -> list[StackyFan]:
    return [parse_builtin(name) for name in BUILTIN_CATALOG]


def fan_from_json(data: dict) -> StackyFan:
    """Read the JSON fan format; only exact integers are accepted."""
    def is_int(x):
        return isinstance(x, int) and not isinstance(x, bool)

    problems = []
    if not isinstance(data, dict):
        raise InvalidFanError(["fan file must hold a JSON object"])
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            problems.append(f"missing field {key!r}")
    if problems:
        raise InvalidFanError(problems)
    if not is_int(data["dim"]):
        problems.append("'dim' must be an integer")
    for label in ("rays", "max_cones"):
        rows = data[label]
        if not isinstance(rows, list) or not all(
            isinstance(r, list) and all(is_int(x) for x in r) for r in rows
        ):
            problems.append(f"{label!r} must be an array of integer arrays")
    if problems:
        raise InvalidFanError(problems)
    return StackyFan.make(data["dim"], data["rays"], data["max_cones"], data.get("name"))


def load_fan(path) -> StackyFan:
    with open(path) as fh:
        return fan_from_json(json.load(fh, parse_float=_reject_float))


def _reject_float(text):
    raise InvalidFanError([f"non-integer value {text} in fan file"])
