"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and ``fractions.Fraction``
values, so there is no overflow and no rounding anywhere.  Matrices are
lists of row lists.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

IntMatrix = list[list[int]]

GE, GT, EQ = ">=", ">", "="
RELATIONS = (GE, GT, EQ)


# ---------------------------------------------------------------------------
# small helpers


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def determinant(M) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def row_echelon(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, returning (rows, pivot columns)."""
    A = [[Fraction(v) for v in row] for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M) -> int:
    return len(row_echelon(M)[1]) if M else 0


def integer_rank(M: IntMatrix) -> int:
    """Rank of an integer matrix via fraction-free (Bareiss) elimination."""
    A = [list(row) for row in M]
    if not A or not A[0]:
        return 0
    nrows, ncols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            A[i] = [(piv * A[i][j] - a_ic * A[r][j]) // prev for j in range(ncols)]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def nullspace(M, ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} over Q."""
    if not M:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_echelon(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M, b) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    R, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Smith normal form and abelian group presentations


def smith_normal_form(A: IntMatrix, *, with_inverse: bool = False):
    """Smith normal form with deterministic pivoting.

    Returns ``(U, D, V)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with nonnegative entries forming a divisibility chain.
    With ``with_inverse=True`` the inverse of ``U`` is appended.

    The pivot at each stage is the entry of smallest nonzero absolute value
    in the trailing submatrix, ties broken by lowest row then lowest column.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    D = [list(map(int, row)) for row in A]
    U = identity(n)
    Uinv = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= k * row[dst]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_col(dst, src, k):
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    a = abs(D[i][j])
                    if a and (best is None or a < best[0]):
                        best = (a, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, m):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, n)) or any(D[t][j] for j in range(t + 1, m)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            negate_row(t)
        if D[t][t] == 0:
            break
    if with_inverse:
        return U, D, V, Uinv
    return U, D, V


def _row_hnf(P: IntMatrix):
    """Row-style Hermite normal form of a full-row-rank matrix.

    Returns ``(H, G, Ginv)`` with ``H == G @ P`` and ``G`` unimodular.
    """
    r = len(P)
    H = [list(row) for row in P]
    G = identity(r)
    Ginv = identity(r)
    ncols = len(P[0]) if r else 0

    def add_row(dst, src, k):
        H[dst] = [a + k * b for a, b in zip(H[dst], H[src])]
        G[dst] = [a + k * b for a, b in zip(G[dst], G[src])]
        for row in Ginv:
            row[src] -= k * row[dst]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        G[i], G[j] = G[j], G[i]
        for row in Ginv:
            row[i], row[j] = row[j], row[i]

    def negate(i):
        H[i] = [-a for a in H[i]]
        G[i] = [-a for a in G[i]]
        for row in Ginv:
            row[i] = -row[i]

    t = 0
    for c in range(ncols):
        if t == r:
            break
        while True:
            nz = [i for i in range(t, r) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(H[i][c]), i))
            if piv != t:
                swap(t, piv)
            for i in range(t + 1, r):
                if H[i][c]:
                    add_row(i, t, -(H[i][c] // H[t][c]))
            if not any(H[i][c] for i in range(t + 1, r)):
                break
        if not H[t][c]:
            continue
        if H[t][c] < 0:
            negate(t)
        for i in range(t):
            q = H[i][c] // H[t][c]
            if q:
                add_row(i, t, -q)
        t += 1
    return H, G, Ginv


@dataclass(frozen=True)
class AbelianPresentation:
    """A finitely generated abelian group ``Z^n / L`` in normal form.

    ``free_proj`` (r x n) and ``torsion_proj`` map ambient coordinates to
    free coordinates and torsion residues; ``free_lift``/``torsion_lift``
    (n x r, n x s) give a section of the projection.
    """

    ambient_rank: int
    free_rank: int
    torsion_invariants: tuple[int, ...]
    free_proj: tuple[tuple[int, ...], ...]
    torsion_proj: tuple[tuple[int, ...], ...]
    free_lift: tuple[tuple[int, ...], ...]
    torsion_lift: tuple[tuple[int, ...], ...]

    def project(self, x: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if len(x) != self.ambient_rank:
            raise ValueError(f"expected {self.ambient_rank} coordinates, got {len(x)}")
        free = tuple(dot(row, x) for row in self.free_proj)
        tors = tuple(dot(row, x) % t for row, t in zip(self.torsion_proj, self.torsion_invariants))
        return free, tors

    def lift(self, free: Sequence[int], torsion: Sequence[int] = ()) -> tuple[int, ...]:
        torsion = tuple(torsion) or (0,) * len(self.torsion_invariants)
        out = []
        for i in range(self.ambient_rank):
            v = dot(self.free_lift[i], free) if self.free_rank else 0
            if self.torsion_invariants:
                v += dot(self.torsion_lift[i], torsion)
            out.append(v)
        return tuple(out)

    def torsion_elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(t) for t in self.torsion_invariants)))


def cokernel(A: IntMatrix, n: int | None = None) -> AbelianPresentation:
    """Presentation of ``Z^n / colspan(A)`` for an ``n x m`` integer matrix.

    The free coordinates are further normalised so that the images of the
    unit vectors form a row Hermite normal form; this makes the basis
    independent of the elimination path.
    """
    if n is None:
        n = len(A)
    m = len(A[0]) if A else 0
    if m == 0:
        U, D, Uinv = identity(n), [[] for _ in range(n)], identity(n)
    else:
        U, D, _, Uinv = smith_normal_form(A, with_inverse=True)
    diag = [D[k][k] if k < m else 0 for k in range(n)]
    tors_idx = [k for k, d in enumerate(diag) if d >= 2]
    free_idx = [k for k, d in enumerate(diag) if d == 0]

    free_proj = [list(U[k]) for k in free_idx]
    free_lift = [[Uinv[i][k] for k in free_idx] for i in range(n)]
    if free_proj:
        free_proj, _, Ginv = _row_hnf(free_proj)
        free_lift = matmul(free_lift, Ginv)
    torsion_inv = tuple(diag[k] for k in tors_idx)
    torsion_proj = [[a % diag[k] for a in U[k]] for k in tors_idx]
    torsion_lift = [[Uinv[i][k] for k in tors_idx] for i in range(n)]
    return AbelianPresentation(
        ambient_rank=n,
        free_rank=len(free_idx),
        torsion_invariants=torsion_inv,
        free_proj=tuple(map(tuple, free_proj)),
        torsion_proj=tuple(map(tuple, torsion_proj)),
        free_lift=tuple(map(tuple, free_lift)),
        torsion_lift=tuple(map(tuple, torsion_lift)),
    )


# ---------------------------------------------------------------------------
# linear systems and exact LP


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    const: Fraction

    def holds(self, x: Sequence) -> bool:
        v = dot(self.coeffs, x)
        if self.rel == GE:
            return v >= self.const
        if self.rel == GT:
            return v > self.const
        return v == self.const


def constraint(coeffs: Iterable, rel: str, const=0) -> Constraint:
    """Build a constraint ``coeffs . x  rel  const``.

    ``<=`` and ``<`` are accepted and normalised by negation.
    """
    coeffs = tuple(Fraction(c) for c in coeffs)
    const = Fraction(const)
    if rel in ("<=", "<"):
        coeffs = tuple(-c for c in coeffs)
        const = -const
        rel = GE if rel == "<=" else GT
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    return Constraint(coeffs, rel, const)


@dataclass(frozen=True)
class LinearSystem:
    dim: int
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.dim:
                raise ValueError("constraint dimension mismatch")

    @classmethod
    def build(cls, dim: int, rows: Iterable) -> "LinearSystem":
        cons = tuple(r if isinstance(r, Constraint) else constraint(*r) for r in rows)
        return cls(dim, cons)

    def extend(self, rows: Iterable) -> "LinearSystem":
        return LinearSystem.build(self.dim, list(self.constraints) + list(rows))

    def satisfied_by(self, x) -> bool:
        return all(c.holds(x) for c in self.constraints)

    @property
    def is_homogeneous(self) -> bool:
        return all(c.const == 0 for c in self.constraints)


@dataclass
class LPResult:
    """Outcome of :func:`lp_feasible`.

    Exactly one of ``point`` (feasible) or ``certificate`` (infeasible) is set.
    The certificate holds one multiplier per constraint, see
    :func:`check_certificate`.
    """

    feasible: bool
    point: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


def _simplex(A, b, c):
    """Maximise ``c.x`` subject to ``A x = b, x >= 0`` (two-phase, Bland's rule).

    Returns ``(status, x, value)`` where status is one of
    ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
    """
    m = len(A)
    nvar = len(c)
    T = []
    rhs = []
    for row, bi in zip(A, b):
        row = [Fraction(v) for v in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        T.append(row + [Fraction(int(i == len(T))) for i in range(m)])
        rhs.append(bi)
    ncol = nvar + m
    basis = list(range(nvar, ncol))

    def pivot(obj, r, col):
        row = T[r]
        pv = row[col]
        if pv != 1:
            row = [v / pv for v in row]
            T[r] = row
            rhs[r] /= pv
        for i in range(len(T)):
            if i != r:
                f = T[i][col]
                if f:
                    T[i] = [a - f * bb if bb else a for a, bb in zip(T[i], row)]
                    rhs[i] -= f * rhs[r]
        f = obj[0][col]
        if f:
            obj[0] = [a - f * bb if bb else a for a, bb in zip(obj[0], row)]
            obj[1] -= f * rhs[r]
        basis[r] = col

    def run(obj, allowed):
        while True:
            enter = next((j for j in allowed if obj[0][j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            pivot(obj, best[1], enter)

    # phase one: maximise -sum(artificials)
    d = [Fraction(0)] * ncol
    v = Fraction(0)
    for row, bi in zip(T, rhs):
        for j in range(nvar):
            d[j] -= row[j]
        v -= bi
    obj = [d, v]
    run(obj, range(ncol))
    if obj[1] != 0:
        return "infeasible", None, None
    # drive artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(T):
        if basis[r] >= nvar:
            col = next((j for j in range(nvar) if T[r][j] != 0), None)
            if col is None:
                del T[r], rhs[r], basis[r]
                continue
            pivot(obj, r, col)
        r += 1
    for i in range(len(T)):
        T[i] = T[i][:nvar]
    d = [-Fraction(cj) for cj in c]
    v = Fraction(0)
    for i, bcol in enumerate(basis):
        f = d[bcol]
        if f:
            d = [a - f * bb for a, bb in zip(d, T[i])]
            v -= f * rhs[i]
    obj = [d, v]
    if not run(obj, range(nvar)):
        return "unbounded", None, None
    x = [Fraction(0)] * nvar
    for i, bcol in enumerate(basis):
        x[bcol] = rhs[i]
    return "optimal", x, obj[1]


def lp_optimize(sys: LinearSystem, objective: Sequence, maximize: bool = True):
    """Optimise a linear objective over a system of weak constraints.

    Variables are free.  Returns ``(status, point, value)``.
    """
    k = sys.dim
    ineqs = [c for c in sys.constraints if c.rel == GE]
    if any(c.rel == GT for c in sys.constraints):
        raise ValueError("lp_optimize accepts only weak constraints")
    ns = len(ineqs)
    A, b = [], []
    si = 0
    for con in sys.constraints:
        row = list(con.coeffs) + [-a for a in con.coeffs] + [0] * ns
        if con.rel == GE:
            row[2 * k + si] = -1
            si += 1
        A.append(row)
        b.append(con.const)
    sign = 1 if maximize else -1
    c = [sign * Fraction(o) for o in objective] + [-sign * Fraction(o) for o in objective] + [0] * ns
    if not A:
        if any(c):
            return "unbounded", None, None
        return "optimal", tuple(Fraction(0) for _ in range(k)), Fraction(0)
    status, x, val = _simplex(A, b, c)
    if status != "optimal":
        return status, None, None
    point = tuple(x[i] - x[k + i] for i in range(k))
    return status, point, sign * val


def _weak_point(sys: LinearSystem):
    status, x, _ = lp_optimize(sys, [0] * sys.dim)
    return x if status == "optimal" else None


def check_certificate(sys: LinearSystem, cert: Sequence) -> bool:
    """Verify a Farkas/Motzkin infeasibility certificate exactly.

    Multipliers on ``>=``/``>`` rows must be nonnegative; the combination of
    left-hand sides must vanish while the combined right-hand side is
    positive, or zero with a strict row carrying positive weight.
    """
    if len(cert) != len(sys.constraints):
        return False
    combo = [Fraction(0)] * sys.dim
    total = Fraction(0)
    strict_weight = Fraction(0)
    for y, con in zip(cert, sys.constraints):
        if con.rel != EQ and y < 0:
            return False
        for j, a in enumerate(con.coeffs):
            combo[j] += y * a
        total += y * con.const
        if con.rel == GT:
            strict_weight += y
    if any(combo):
        return False
    return total > 0 or (total == 0 and strict_weight > 0)


def _find_certificate(sys: LinearSystem):
    cons = sys.constraints
    q = len(cons)
    rows = []
    for i, con in enumerate(cons):
        if con.rel != EQ:
            e = [0] * q
            e[i] = 1
            rows.append((e, GE, 0))
    for j in range(sys.dim):
        rows.append(([con.coeffs[j] for con in cons], EQ, 0))
    base = LinearSystem.build(q, rows)
    consts = [con.const for con in cons]
    y = _weak_point(base.extend([(consts, GE, 1)]))
    if y is None and any(con.rel == GT for con in cons):
        strict = [int(con.rel == GT) for con in cons]
        y = _weak_point(base.extend([(consts, GE, 0), (strict, GE, 1)]))
    if y is None:
        raise ArithmeticError("no point and no certificate; LP routine is inconsistent")
    return tuple(y)


def lp_feasible(sys: LinearSystem) -> LPResult:
    """Decide feasibility of a system with ``>=``, ``>`` and ``=`` rows.

    A homogeneous system is conic, so each strict row ``a.x > 0`` is replaced
    by ``a.x >= 1``.  Otherwise the strict rows share one slack ``t``
    (``a.x - t >= b``, ``t <= 1``) which is maximised; the system is feasible
    iff the optimum is positive.
    """
    k = sys.dim
    strict = [c for c in sys.constraints if c.rel == GT]
    point = None
    if not strict:
        point = _weak_point(sys)
    elif sys.is_homogeneous:
        weak = LinearSystem(k, tuple(
            Constraint(c.coeffs, GE, Fraction(1)) if c.rel == GT else c for c in sys.constraints
        ))
        point = _weak_point(weak)
    else:
        rows = []
        for c in sys.constraints:
            if c.rel == GT:
                rows.append(Constraint(c.coeffs + (Fraction(-1),), GE, c.const))
            else:
                rows.append(Constraint(c.coeffs + (Fraction(0),), c.rel, c.const))
        rows.append(Constraint((Fraction(0),) * k + (Fraction(-1),), GE, Fraction(-1)))
        status, x, val = lp_optimize(LinearSystem(k + 1, tuple(rows)), [0] * k + [1])
        if status == "optimal" and val > 0:
            point = x[:k]
    if point is not None:
        point = tuple(point)
        assert sys.satisfied_by(point)
        return LPResult(True, point=point)
    return LPResult(False, certificate=_find_certificate(sys))


# ---------------------------------------------------------------------------
# lattice points


class Unbounded:
    """Marker returned by :func:`lattice_points` for unbounded polyhedra."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = Unbounded()


@functools.lru_cache(maxsize=4096)
def _recession_nonzero(dim: int, shape: tuple) -> bool:
    homog = [(coeffs, rel, 0) for coeffs, rel in shape]
    base = LinearSystem.build(dim, homog)
    for j in range(dim):
        for s in (1, -1):
            e = [0] * dim
            e[j] = s
            if lp_feasible(base.extend([(e, GE, 1)])):
                return True
    return False


def is_bounded(sys: LinearSystem) -> bool:
    shape = tuple((c.coeffs, c.rel) for c in sys.constraints)
    return not _recession_nonzero(sys.dim, shape)


def coordinate_bounds(sys: LinearSystem):
    """Exact ``(min, max)`` of each coordinate, or ``None`` if empty."""
    bounds = []
    for j in range(sys.dim):
        e = [0] * sys.dim
        e[j] = 1
        st_lo, _, lo = lp_optimize(sys, e, maximize=False)
        if st_lo == "infeasible":
            return None
        st_hi, _, hi = lp_optimize(sys, e, maximize=True)
        bounds.append((lo if st_lo == "optimal" else None, hi if st_hi == "optimal" else None))
    return bounds


def lattice_points(sys: LinearSystem):
    """All integer points of a polyhedron given by weak constraints.

    Returns :data:`UNBOUNDED` when the recession cone is nonzero.
    """
    if any(c.rel == GT for c in sys.constraints):
        raise ValueError("lattice_points takes only >= and = constraints")
    if not is_bounded(sys):
        return UNBOUNDED
    if sys.dim == 0:
        return [()] if sys.satisfied_by(()) else []
    bounds = coordinate_bounds(sys)
    if bounds is None:
        return []
    ranges = [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in bounds]
    return [p for p in itertools.product(*ranges) if sys.satisfied_by(p)]
