import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from immaculatum.exactmath import (UNBOUNDED, LinearSystem, check_certificate, cokernel,
                                   determinant, integer_rank, lattice_points, lp_feasible,
                                   lp_optimize, matmul, rank, smith_normal_form)


def unimodular(M):
    return abs(determinant(M)) == 1


def check_snf(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert unimodular(U) and unimodular(V)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, a in enumerate(row):
            if i != j:
                assert a == 0
    assert all(a >= 0 for a in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return U, D, V


def test_snf_identity():
    U, D, V = check_snf([[1, 0], [0, 1]])
    assert D == [[1, 0], [0, 1]]


def test_snf_zero():
    _, D, _ = check_snf([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]]


def test_snf_column():
    _, D, _ = check_snf([[2], [3]])
    assert D == [[1], [0]]


def test_snf_known_example():
    _, D, _ = check_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


def test_snf_is_deterministic():
    A = [[4, 6, 2], [3, -1, 7]]
    assert smith_normal_form(A) == smith_normal_form(A)


def test_snf_big_entries():
    A = [[10 ** 30, 3], [7, 10 ** 25 + 1]]
    check_snf(A)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_snf_round_trip(A):
    check_snf(A)


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_cokernel_kills_relations(A):
    pres = cokernel(A)
    n = len(A)
    for j in range(len(A[0])):
        col = [A[i][j] for i in range(n)]
        free, tors = pres.project(col)
        assert not any(free) and not any(tors)
    assert pres.free_rank == n - integer_rank(A)
    for a, b in zip(pres.torsion_invariants, pres.torsion_invariants[1:]):
        assert b % a == 0
    # the lift is a section of the projection
    for e in itertools.product(range(-1, 2), repeat=pres.free_rank):
        for t in pres.torsion_elements():
            assert pres.project(pres.lift(e, t)) == (tuple(e), tuple(t))


def test_cokernel_examples():
    p = cokernel([[2], [3]])
    assert (p.free_rank, p.torsion_invariants) == (1, ())
    p = cokernel([[2], [-2]])
    assert (p.free_rank, p.torsion_invariants) == (1, (2,))
    p = cokernel([], n=3)
    assert (p.free_rank, p.torsion_invariants) == (3, ())


def test_lp_examples():
    s1 = LinearSystem.build(1, [([1], ">", 0), ([-1], ">", 0)])
    res = lp_feasible(s1)
    assert not res and check_certificate(s1, res.certificate)
    sys2 = LinearSystem.build(2, [([1, 0], ">=", 1), ([0, 1], ">=", 1), ([1, 1], "<=", 3)])
    res = lp_feasible(sys2)
    assert res and sys2.satisfied_by(res.point)
    sys3 = LinearSystem.build(2, [([1, 0], ">", 0), ([1, -1], ">", 0)])
    res = lp_feasible(sys3)
    assert res and sys3.satisfied_by(res.point)


def test_lp_empty_system():
    res = lp_feasible(LinearSystem(3))
    assert res.point == (0, 0, 0)


def test_lp_mixed_strict_inhomogeneous():
    s = LinearSystem.build(1, [([1], ">", 0), ([1], "<", 1)])
    res = lp_feasible(s)
    assert res and 0 < res.point[0] < 1
    s = LinearSystem.build(1, [([1], ">", 0), ([1], "<=", 0)])
    res = lp_feasible(s)
    assert not res and check_certificate(s, res.certificate)


def test_lp_optimize():
    s = LinearSystem.build(2, [([1, 0], ">=", 0), ([0, 1], ">=", 0), ([1, 1], "<=", 3)])
    assert lp_optimize(s, [1, 2])[2] == 6
    assert lp_optimize(s, [1, 2], maximize=False)[2] == 0
    assert lp_optimize(LinearSystem.build(1, [([1], ">=", 0)]), [1])[0] == "unbounded"


rows = st.lists(
    st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
              st.sampled_from([">=", ">", "=", "<="]),
              st.integers(-4, 4)),
    min_size=1, max_size=5)


@given(rows)
@settings(max_examples=200, deadline=None)
def test_lp_point_or_certificate(raw):
    s = LinearSystem.build(2, raw)
    res = lp_feasible(s)
    if res:
        assert s.satisfied_by(res.point)
        assert res.certificate is None
    else:
        assert res.point is None
        assert check_certificate(s, res.certificate)


def box_scan(s, radius):
    return sorted(p for p in itertools.product(range(-radius, radius + 1), repeat=s.dim) if s.satisfied_by(p))


def test_lattice_points_examples():
    sq = LinearSystem.build(2, [([1, 0], ">=", 0), ([0, 1], ">=", 0), ([-1, 0], ">=", -1), ([0, -1], ">=", -1)])
    assert len(lattice_points(sq)) == 4
    assert lattice_points(LinearSystem.build(1, [([1], ">=", -2), ([-1], ">=", 0)])) == [(-2,), (-1,), (0,)]
    assert lattice_points(LinearSystem.build(1, [([1], ">=", 0)])) is UNBOUNDED


bounded_rows = st.lists(
    st.tuples(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
              st.sampled_from([">=", "="]),
              st.integers(-30, 30)),
    min_size=0, max_size=4)


@given(bounded_rows, st.integers(0, 50))
@settings(max_examples=60, deadline=None)
def test_lattice_points_match_box_scan(raw, radius):
    box = [([1, 0], ">=", -radius), ([-1, 0], ">=", -radius), ([0, 1], ">=", -radius), ([0, -1], ">=", -radius)]
    s = LinearSystem.build(2, raw + box)
    assert sorted(lattice_points(s)) == box_scan(s, 50)


def test_lattice_points_unbounded_even_if_thin():
    s = LinearSystem.build(2, [([1, -1], "=", 0)])
    assert lattice_points(s) is UNBOUNDED


def test_rank_helpers():
    assert rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([[2, 4, 6], [1, 2, 3], [0, 0, 1]]) == 2
