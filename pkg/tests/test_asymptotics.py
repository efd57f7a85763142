from fractions import Fraction

import pytest

from immaculatum.asymptotics import (Direction, arrangement_cells, bw_hull_check,
                                     decide_infinite, imm_infinity_contains,
                                     imm_infinity_description, interior_class, verify_report,
                                     witness_immaculate_family)
from immaculatum.homology import LimitExceeded
from immaculatum.polyhedra import INTERIOR, membership, zonotope

from conftest import BUILTINS, fan_id, setup


def test_direction_canonical():
    assert Direction.from_vector((-2, 4)) == Direction((1, -2))
    assert Direction.from_vector((0, -3, 6)) == Direction((0, 1, -2))
    assert Direction.from_vector((Fraction(1, 2), Fraction(1, 3))) == Direction((3, 2))
    with pytest.raises(ValueError):
        Direction.from_vector((0, 0))


def test_decide_examples():
    _, pic, cat = setup("P1")
    rep = decide_infinite(pic, cat)
    assert not rep.infinite and verify_report(pic, cat, rep)
    _, pic, cat = setup("P1xP1")
    rep = decide_infinite(pic, cat)
    assert rep.infinite and rep.witness in (Direction((1, 0)), Direction((0, 1)))
    _, pic, cat = setup("F1")
    rep = decide_infinite(pic, cat)
    assert rep.infinite
    assert imm_infinity_description(pic, cat).points == [rep.witness]


def test_contains_examples():
    _, pic, cat = setup("P1xP1")
    assert imm_infinity_contains(pic, cat, Direction((1, 0)))
    assert not imm_infinity_contains(pic, cat, Direction((1, 1)))
    _, pic, cat = setup("P1")
    assert not imm_infinity_contains(pic, cat, Direction((1,)))


def test_descriptions():
    _, pic, cat = setup("P1xP1")
    d = imm_infinity_description(pic, cat)
    assert d.points == [Direction((0, 1)), Direction((1, 0))] and not d.arcs
    _, pic, cat = setup("P2")
    assert imm_infinity_description(pic, cat).empty


def test_f2_description_points_are_members():
    _, pic, cat = setup("F2")
    d = imm_infinity_description(pic, cat)
    assert not d.everything
    for p in d.points:
        assert imm_infinity_contains(pic, cat, p)


def test_cells_of_coordinate_arrangement():
    cells = arrangement_cells(2, [(0, 1), (1, 0)])
    assert len(cells) == 8
    signs = {c[0] for c in cells}
    assert (0, 0) not in signs
    for s, v in cells:
        assert (v[0] > 0) - (v[0] < 0) == s[1]
        assert (v[1] > 0) - (v[1] < 0) == s[0]


def test_cell_cap():
    with pytest.raises(LimitExceeded):
        arrangement_cells(2, [(0, 1), (1, 0), (1, 1)], cap=3)


@pytest.mark.parametrize("fan", BUILTINS, ids=fan_id)
def test_reports_verify_and_match_description(fan):
    _, pic, cat = setup(fan)
    rep = decide_infinite(pic, cat)
    assert verify_report(pic, cat, rep)
    desc = imm_infinity_description(pic, cat)
    assert rep.infinite == (not desc.empty)
    if rep.infinite:
        assert imm_infinity_contains(pic, cat, rep.witness)
    # sign invariance
    for d in desc.points + desc.samples:
        neg = tuple(-a for a in d.coords)
        assert Direction.from_vector(neg) == d
        assert imm_infinity_contains(pic, cat, neg)


@pytest.mark.parametrize("fan", BUILTINS, ids=fan_id)
def test_interior_class(fan):
    _, pic, _ = setup(fan)
    L = interior_class(pic)
    assert membership(zonotope(pic), L.free, INTERIOR)


def test_interior_class_examples():
    _, pic, _ = setup("P1")
    assert interior_class(pic).free == (-1,)
    _, pic, _ = setup("P1xP1")
    assert interior_class(pic).free == (-1, -1)
    _, pic, _ = setup("P2")
    assert -3 < interior_class(pic).free[0] < 0


def test_witness_family_p1xp1():
    _, pic, cat = setup("P1xP1")
    fam = witness_immaculate_family(pic, cat, Direction((0, 1)), 3)
    assert [L.free for L in fam] == [(-1, 0), (-1, 1), (-1, 2)]


def test_witness_family_rejects_bad_direction():
    _, pic, cat = setup("P1xP1")
    with pytest.raises(ValueError):
        witness_immaculate_family(pic, cat, Direction((1, 1)), 3)


def test_witness_family_p23xp1_direction():
    _, pic, cat = setup("P(2:3)xP1")
    fam = witness_immaculate_family(pic, cat, Direction((0, 1)), 5)
    firsts = {L.free[0] for L in fam}
    assert len(firsts) == 1
    steps = {tuple(b - a for a, b in zip(x.free, y.free)) for x, y in zip(fam, fam[1:])}
    assert steps == {(0, 1)}


def test_bw_examples():
    _, pic, _ = setup("P1xP1")
    h = bw_hull_check(pic, (0, 0, 0, 0))
    assert h.hull_dim == 0 and h.degenerate and h.direction is None
    h = bw_hull_check(pic, (0, 0, 1, 0))
    assert h.degenerate and h.direction == Direction((0, 1))
    assert imm_infinity_contains(pic, None, h.direction)
    _, pic, _ = setup("P2")
    h = bw_hull_check(pic, (1, 0, 0))
    assert h.hull_dim == 2 and not h.degenerate


@pytest.mark.parametrize("fan", BUILTINS, ids=fan_id)
def test_bw_degenerate_implies_imm_infinity(fan, rng):
    _, pic, cat = setup(fan)
    for _ in range(60):
        c = [rng.randint(-3, 3) for _ in range(fan.n)]
        h = bw_hull_check(pic, c)
        # adding a global linear function does not change the hull dimension
        m = [rng.randint(-2, 2) for _ in range(fan.dim)]
        c2 = [ci + sum(a * b for a, b in zip(m, v)) for ci, v in zip(c, fan.rays)]
        assert bw_hull_check(pic, c2).hull_dim == h.hull_dim
        assert bw_hull_check(pic, [-x for x in c]).hull_dim == h.hull_dim
        if h.direction is not None:
            assert imm_infinity_contains(pic, cat, h.direction)
