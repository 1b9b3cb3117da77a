import random
from fractions import Fraction

import pytest

from wallcross.curves import (
    FrameChange,
    PointedCurve,
    Surface,
    WitnessKind,
    all_exponents,
    apply_frame,
    compose,
    contact_ge,
    curve_from_json,
    curve_to_json,
    local_geometry,
    make_witness,
    normalize_frame,
    validate,
)
from wallcross.polynomials import Polynomial


def _p2(d, terms, point):
    return PointedCurve(Surface.P2, d, tuple(Fraction(c) for c in point), Polynomial(3, terms))


def _rand_frame(surface, rng):
    while True:
        if surface is Surface.P2:
            m = tuple(
                tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3)
            )
            try:
                return FrameChange(surface, m)
            except ValueError:
                continue
        mx = tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2))
        my = tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2))
        try:
            return FrameChange(surface, mx, my, swap=bool(rng.getrandbits(1)))
        except ValueError:
            continue


def test_validate_violations():
    good = make_witness(WitnessKind.P2_FLEX, 3)
    assert validate(good) is None
    assert "degree" in validate(_p2(2, {(0, 2, 0): 1, (1, 0, 1): 1}, (0, 0, 1)))
    assert "lie on" in validate(_p2(3, {(3, 0, 0): 1, (0, 3, 0): 1}, (1, 0, 0)))
    assert "homogeneous" in validate(_p2(3, {(1, 0, 0): 1}, (0, 0, 1)))
    assert "zero vector" in validate(_p2(3, {(0, 3, 0): 1, (1, 0, 2): 1}, (0, 0, 0)))
    bad_q = PointedCurve(
        Surface.QUADRIC,
        3,
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
        Polynomial(4, {(1, 2, 0, 3): 1}),
    )
    assert "second factor" in validate(bad_q)
    bad_bideg = PointedCurve(
        Surface.QUADRIC,
        3,
        (Fraction(0), Fraction(1), Fraction(0), Fraction(1)),
        Polynomial(4, {(1, 1, 0, 3): 1}),
    )
    assert "bidegree" in validate(bad_bideg)


def test_all_exponents_counts():
    for d in (3, 4, 5):
        assert len(all_exponents(Surface.P2, d)) == (d + 1) * (d + 2) // 2
        assert len(all_exponents(Surface.QUADRIC, d)) == (d + 1) ** 2
    for exp in all_exponents(Surface.QUADRIC, 3):
        assert exp[0] + exp[1] == 3 and exp[2] + exp[3] == 3


def test_witnesses_validate():
    for kind in WitnessKind:
        d = 4 if kind is WitnessKind.P2_HYPERFLEX else 3
        w = make_witness(kind, d)
        assert validate(w) is None
    with pytest.raises(ValueError):
        make_witness(WitnessKind.P2_HYPERFLEX, 3)
    with pytest.raises(ValueError):
        make_witness(WitnessKind.P2_FLEX, 2)


def test_frame_inverse_round_trip():
    rng = random.Random(2)
    for kind in (WitnessKind.P2_S, WitnessKind.QUADRIC_S):
        c = make_witness(kind, 3)
        for _ in range(10):
            g = _rand_frame(c.surface, rng)
            moved = apply_frame(c, g)
            assert validate(moved) is None
            back = apply_frame(moved, g.inverse())
            assert back.point == c.point
            assert back.equation == c.equation


def test_compose_matches_sequential_action():
    rng = random.Random(8)
    for kind in (WitnessKind.P2_FLEX, WitnessKind.QUADRIC_X0):
        c = make_witness(kind, 3)
        for _ in range(10):
            g1 = _rand_frame(c.surface, rng)
            g2 = _rand_frame(c.surface, rng)
            a = apply_frame(apply_frame(c, g1), g2)
            b = apply_frame(c, compose(g2, g1))
            assert a.point == b.point
            assert a.equation == b.equation


def test_local_geometry_smooth_and_singular():
    # nodal cubic x0*x1*x2 - x1^3 - ... keep it simple: x2*(x0^2 - x1^2) + x1^3
    nodal = _p2(3, {(2, 0, 1): 1, (0, 2, 1): -1, (0, 3, 0): 1}, (0, 0, 1))
    geo = local_geometry(nodal)
    assert not geo.smooth_at_p
    assert geo.multiplicity == 2
    flex = make_witness(WitnessKind.P2_FLEX, 3)
    geo = local_geometry(flex)
    assert geo.smooth_at_p and geo.multiplicity == 1
    assert geo.tangent == (1, 0, 0)
    cusp = make_witness(WitnessKind.P2_CUSPIDAL_X0, 4)
    assert local_geometry(cusp).multiplicity == 1  # p is the smooth flex


def test_quadric_ruling_contacts():
    tangent = make_witness(WitnessKind.QUADRIC_RULING_TANGENT, 3)
    geo = local_geometry(tangent)
    assert geo.smooth_at_p
    c0, c1 = geo.ruling_contacts
    assert contact_ge(c0, 2) or contact_ge(c1, 2)
    assert not (contact_ge(c0, 2) and contact_ge(c1, 2))
    generic = PointedCurve(
        Surface.QUADRIC,
        3,
        (Fraction(0), Fraction(1), Fraction(0), Fraction(1)),
        Polynomial(4, {(1, 2, 0, 3): 1, (0, 3, 1, 2): 1, (3, 0, 3, 0): 1}),
    )
    assert local_geometry(generic).ruling_contacts == (1, 1)


def test_normalize_frame_postconditions_plane():
    rng = random.Random(13)
    base = make_witness(WitnessKind.P2_FLEX, 4)
    for _ in range(8):
        c = apply_frame(base, _rand_frame(Surface.P2, rng))
        g, moved = normalize_frame(c)
        assert moved.point == (0, 0, 1)
        grad = tuple(
            moved.equation.partial_derivative(i).evaluate(moved.point)
            for i in range(3)
        )
        assert grad[1] == 0 and grad[2] == 0 and grad[0] != 0
        # the returned frame does exactly that move
        again = apply_frame(c, g)
        assert again.point == moved.point
        assert again.equation == moved.equation


def test_normalize_frame_postconditions_quadric():
    rng = random.Random(17)
    base = make_witness(WitnessKind.QUADRIC_RULING_TANGENT, 3)
    for _ in range(8):
        c = apply_frame(base, _rand_frame(Surface.QUADRIC, rng))
        g, moved = normalize_frame(c)
        assert moved.point == (0, 1, 0, 1)
        cx, cy = local_geometry(moved).ruling_contacts
        assert contact_ge(cy, 2)
        assert not contact_ge(cx, 2)


def test_multiplicity_is_frame_invariant():
    rng = random.Random(29)
    nodal = _p2(3, {(2, 0, 1): 1, (0, 2, 1): -1, (0, 3, 0): 1}, (0, 0, 1))
    for _ in range(10):
        moved = apply_frame(nodal, _rand_frame(Surface.P2, rng))
        assert local_geometry(moved).multiplicity == 2


def test_json_round_trip():
    for kind in WitnessKind:
        d = 4 if kind is WitnessKind.P2_HYPERFLEX else 3
        w = make_witness(kind, d)
        doc = curve_to_json(w)
        back = curve_from_json(doc)
        assert back.surface is w.surface
        assert back.degree == w.degree
        assert back.point == w.point
        assert back.equation == w.equation


def test_json_rejections():
    doc = curve_to_json(make_witness(WitnessKind.P2_FLEX, 3))
    for mutate in [
        lambda d: d.pop("surface"),
        lambda d: d.update(surface="p3"),
        lambda d: d.update(extra=1),
        lambda d: d["terms"][0].update(coeff="2/4"),
        lambda d: d["terms"][0].update(coeff="0"),
        lambda d: d["terms"].append(dict(d["terms"][0])),
        lambda d: d.update(point=["1", "1", "0"]),
        lambda d: d["terms"][0].update(exp=[1, 1, 0]),
        lambda d: d["terms"][0].update(exp=[1, -1, 3]),
    ]:
        bad = curve_to_json(make_witness(WitnessKind.P2_FLEX, 3))
        mutate(bad)
        with pytest.raises(ValueError):
            curve_from_json(bad)
