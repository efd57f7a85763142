import pytest

from immaculatum.cohomology import (UnboundedPatternError, box_classes, cohomology, count_pI,
                                    euler_characteristic, immaculate_scan, is_immaculate,
                                    pattern_polytope)
from immaculatum.fan import parse_builtin, torsion_p1
from immaculatum.picard import class_of, divisor_rep, serre_dual
from immaculatum.polyhedra import forbidden_cone

from conftest import ALL_FANS, BUILTINS, fan_id, oracle_count, setup


def test_count_pI_p1():
    fan, pic, _ = setup("P1")
    assert count_pI(pic, pic.make_class((2,)), ()) == 3
    assert count_pI(pic, pic.make_class((-2,)), (0, 1)) == 1
    for I in [(), (0, 1)]:
        assert count_pI(pic, pic.make_class((-1,)), I) == 0


def test_count_pI_rejects_non_tempting():
    _, pic, _ = setup("P2")
    with pytest.raises(ValueError):
        count_pI(pic, pic.zero(), (0,))


def test_cohomology_examples():
    _, pic, cat = setup("P1")
    assert cohomology(pic, cat, pic.make_class((2,))) == (3, 0)
    assert cohomology(pic, cat, pic.make_class((-2,))) == (0, 1)
    _, pic, cat = setup("P2")
    assert cohomology(pic, cat, pic.make_class((-3,))) == (0, 0, 1)
    # h^0(O(k)) on P2 is (k+1)(k+2)/2
    for k in range(6):
        assert cohomology(pic, cat, pic.make_class((k,)))[0] == (k + 1) * (k + 2) // 2


def test_euler_characteristic():
    assert euler_characteristic((3, 0)) == 3
    assert euler_characteristic((0, 1)) == -1
    assert euler_characteristic((0, 0, 1)) == 1


def test_immaculate_examples():
    _, pic, cat = setup("P1")
    assert is_immaculate(pic, cat, pic.make_class((-1,)))
    assert not is_immaculate(pic, cat, pic.zero())
    fan, pic, cat = setup("P(2:3)xP1")
    assert is_immaculate(pic, cat, class_of(pic, (-1, 1, 5, 0)))


def test_scans():
    _, pic, cat = setup("P1")
    assert [L.free for L in immaculate_scan(pic, cat, [(-10, 10)])] == [(-1,)]
    _, pic, cat = setup("P2")
    assert [L.free for L in immaculate_scan(pic, cat, [(-10, 10)])] == [(-2,), (-1,)]


def test_unbounded_pattern_is_structural_error(monkeypatch):
    import sys
    mod = sys.modules["immaculatum.cohomology"]
    from immaculatum.exactmath import UNBOUNDED, lattice_points

    _, pic, cat = setup("P1xP1")
    # {0, 2} spans a cone, so it is not tempting and its pattern polytope has a recession ray
    assert (0, 2) not in cat
    assert lattice_points(pattern_polytope(pic, (0, 0, 0, 0), (0, 2))) is UNBOUNDED
    monkeypatch.setattr(mod, "is_tempting", lambda fan, I: True)
    with pytest.raises(UnboundedPatternError, match=r"\[0, 2\]"):
        count_pI(pic, pic.zero(), (0, 2))


@pytest.mark.parametrize("fan", ALL_FANS, ids=fan_id)
def test_representative_independence(fan, rng):
    _, pic, cat = setup(fan)
    for _ in range(3):
        L = pic.make_class([rng.randint(-3, 3) for _ in range(pic.r)],
                           [rng.randrange(t) for t in pic.torsion_invariants])
        c = divisor_rep(pic, L)
        counts = {I: count_pI(pic, L, I) for I, _ in cat}
        for _ in range(10):
            m = [rng.randint(-5, 5) for _ in range(fan.dim)]
            c2 = [ci + sum(a * b for a, b in zip(m, v)) for ci, v in zip(c, fan.rays)]
            assert class_of(pic, c2) == L
            for I in counts:
                assert count_pI(pic, L, I, rep=c2) == counts[I]


@pytest.mark.parametrize("spec", ["P1", "P2", "P1xP1", "F1", "P(2:3)", torsion_p1()], ids=str)
def test_oracle_equivalence(spec, rng):
    fan, pic, cat = setup(spec)
    for _ in range(6):
        L = pic.make_class([rng.randint(-4, 4) for _ in range(pic.r)],
                           [rng.randrange(t) for t in pic.torsion_invariants])
        c = divisor_rep(pic, L)
        for I, _ in cat:
            assert count_pI(pic, L, I) == oracle_count(fan, c, I), (L, I)


@pytest.mark.parametrize("fan", BUILTINS, ids=fan_id)
def test_serre_duality(fan, rng):
    _, pic, cat = setup(fan)
    for _ in range(30):
        L = pic.make_class([rng.randint(-6, 6) for _ in range(pic.r)])
        h = cohomology(pic, cat, L)
        hd = cohomology(pic, cat, serre_dual(pic, L))
        assert h == hd[::-1]


def _convolve(h1, h2):
    out = [0] * (len(h1) + len(h2) - 1)
    for i, a in enumerate(h1):
        for j, b in enumerate(h2):
            out[i + j] += a * b
    return tuple(out)


@pytest.mark.parametrize("left,right", [("P1", "P1"), ("P(2:3)", "P1"), ("P2", "P1"), ("F1", "P1")])
def test_kunneth(left, right, rng):
    f1, p1, c1 = setup(left)
    f2, p2, c2 = setup(right)
    fp, pp, cp = setup(f"product({_expr(left)},{_expr(right)})")
    for _ in range(15):
        a = [rng.randint(-3, 3) for _ in range(f1.n)]
        b = [rng.randint(-3, 3) for _ in range(f2.n)]
        h1 = cohomology(p1, c1, class_of(p1, a))
        h2 = cohomology(p2, c2, class_of(p2, b))
        assert cohomology(pp, cp, class_of(pp, a + b)) == _convolve(h1, h2)


def _expr(alias):
    return {"P1": "projective_space(1)", "P2": "projective_space(2)",
            "P(2:3)": "stacky_p1(2,3)", "F1": "hirzebruch(1)"}[alias]


@pytest.mark.parametrize("fan", BUILTINS, ids=fan_id)
def test_outside_forbidden_cones_is_immaculate(fan):
    _, pic, cat = setup(fan)
    cones = [forbidden_cone(pic, I) for I, _ in cat]
    radius = 4 if pic.r < 3 else 2
    for L in box_classes(pic, [(-radius, radius)] * pic.r):
        if not any(fc.contains(L.free) for fc in cones):
            assert is_immaculate(pic, cat, L)
