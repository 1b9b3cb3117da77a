import random
from fractions import Fraction

import pytest

from wallcross.criterion import (
    OneParamSubgroup,
    destabilizer_search,
    interval_mu_claim,
    mu_min,
    mu_term,
    stability_verdict,
    stabilizer_dimension,
    torus_verdict,
)
from wallcross.curves import (
    PointedCurve,
    Surface,
    WitnessKind,
    all_exponents,
    apply_frame,
    make_witness,
    normalize_frame,
)
from wallcross.polynomials import Polynomial


def _p2(d, terms, point):
    return PointedCurve(
        Surface.P2, d, tuple(Fraction(c) for c in point), Polynomial(3, terms)
    )


def test_subgroup_encoding_and_validation():
    lam = OneParamSubgroup(Surface.QUADRIC, (1, 2))
    assert lam.literal_weights() == (-1, 1, -2, 2)
    lam3 = OneParamSubgroup(Surface.P2, (5, -1, -4))
    assert lam3.literal_weights() == (5, -1, -4)
    with pytest.raises(ValueError):
        OneParamSubgroup(Surface.P2, (1, 1, 1))
    with pytest.raises(ValueError):
        OneParamSubgroup(Surface.P2, (1, -1))
    with pytest.raises(ValueError):
        OneParamSubgroup(Surface.QUADRIC, (1, 2, 3))
    assert OneParamSubgroup(Surface.P2, (0, 0, 0)).is_trivial()
    prim = OneParamSubgroup(Surface.P2, (Fraction(1), Fraction(-1, 5), Fraction(-4, 5)))
    assert prim.primitive().weights == (5, -1, -4)


def test_mu_min_plane_example():
    # x1^3 + x0*x2^2 at (0,0,1); weights (-1,0,1): the point carries weight
    # t, the worst monomial is x0*x2^2 with weight 1, so mu = t - 1
    c = make_witness(WitnessKind.P2_FLEX, 3)
    lam = OneParamSubgroup(Surface.P2, (-1, 0, 1))
    for t in (Fraction(3, 4), 1, Fraction(5, 2)):
        value, (label, exp) = mu_min(c, lam, t)
        assert value == Fraction(t) - 1
        assert label == 2 and exp == (1, 0, 2)


def test_mu_min_quadric_example():
    c = make_witness(WitnessKind.QUADRIC_X0, 3)
    lam = OneParamSubgroup(Surface.QUADRIC, (1, 1))
    value, (label, exp) = mu_min(c, lam, Fraction(5, 3))
    assert value == 2 * Fraction(5, 3) - 4
    assert label == (1, 1) and exp == (0, 3, 1, 2)


def test_mu_min_minimizes_over_point_labels():
    # marked point supported on two coordinates: the smaller point weight wins
    c = _p2(3, {(1, 0, 2): 1, (0, 1, 2): -1}, (1, 1, 0))
    lam = OneParamSubgroup(Surface.P2, (2, -1, -1))
    value, (label, exp) = mu_min(c, lam, 1)
    assert label == 1  # weight -1 beats weight 2
    assert value == -1 - 0  # worst monomial weight is 0 at (1,0,2)


def test_mu_scales_linearly():
    rng = random.Random(51)
    c = make_witness(WitnessKind.P2_NONFLEX, 4)
    for _ in range(20):
        w0, w1 = rng.randint(-4, 4), rng.randint(-4, 4)
        lam = OneParamSubgroup(Surface.P2, (w0, w1, -w0 - w1))
        if lam.is_trivial():
            continue
        k = rng.randint(2, 5)
        scaled = OneParamSubgroup(Surface.P2, tuple(k * w for w in lam.weights))
        t = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        assert mu_min(c, scaled, t)[0] == k * mu_min(c, lam, t)[0]


def _box_sign(curve, t, radius):
    """Brute-force torus sign over integer subgroups in a box."""
    best = None
    for r0 in range(-radius, radius + 1):
        for r1 in range(-radius, radius + 1):
            if r0 == 0 and r1 == 0:
                continue
            if curve.surface is Surface.P2:
                lam = OneParamSubgroup(curve.surface, (r0, r1, -r0 - r1))
            else:
                lam = OneParamSubgroup(curve.surface, (r0, r1))
            v = mu_min(curve, lam, t)[0]
            best = v if best is None else max(best, v)
    if best > 0:
        return 1
    return 0 if best == 0 else -1


def _random_curve(surface, d, rng, nterms=5):
    exps = [e for e in all_exponents(surface, d)]
    base = (0, 0, d) if surface is Surface.P2 else (0, d, 0, d)
    exps.remove(base)  # keep the marked point on the curve
    support = rng.sample(exps, min(nterms, len(exps)))
    terms = {e: rng.choice([-2, -1, 1, 2, 3]) for e in support}
    point = (0, 0, 1) if surface is Surface.P2 else (0, 1, 0, 1)
    return PointedCurve(
        surface, d, tuple(Fraction(c) for c in point), Polynomial(surface.nvars, terms)
    )


def test_torus_verdict_matches_box_enumeration():
    rng = random.Random(99)
    for surface in (Surface.P2, Surface.QUADRIC):
        for _ in range(40):
            c = _random_curve(surface, 3, rng, nterms=rng.randint(2, 6))
            t = Fraction(rng.randint(1, 12), rng.randint(1, 6))
            sign, lam = torus_verdict(c, t)
            assert sign == _box_sign(c, t, 5), (c, t)
            if sign >= 0:
                v = mu_min(c, lam, t)[0]
                assert (v > 0) if sign == 1 else (v == 0)
                ws = lam.weights
                assert all(w.denominator == 1 for w in ws)


def test_torus_verdict_deterministic_certificate():
    c = make_witness(WitnessKind.P2_CUSPIDAL_X0, 4)
    g, moved = normalize_frame(c)
    t = Fraction(7, 4) - Fraction(1, 100)
    s1 = torus_verdict(moved, t)
    s2 = torus_verdict(moved, t)
    assert s1[0] == 1
    assert s1[1].weights == s2[1].weights == (5, -1, -4)


def test_destabilizer_search_cuspidal_below_wall():
    c = make_witness(WitnessKind.P2_CUSPIDAL_X0, 4)
    found = destabilizer_search(c, Fraction(7, 4) - Fraction(1, 100))
    assert found is not None
    frame, lam, mu = found
    assert lam.weights == (5, -1, -4)
    assert mu > 0
    moved = apply_frame(c, frame)
    assert mu_min(moved, lam, Fraction(7, 4) - Fraction(1, 100))[0] == mu


def test_destabilizer_search_adapted_frame_for_s():
    # p = (1,1,1) sits on the conic; only the adapted frame exposes the
    # destabilizing torus, the identity frame does not
    c = make_witness(WitnessKind.P2_S, 4)
    t = Fraction(15, 8)
    found = destabilizer_search(c, t, budget=10)
    assert found is not None
    frame, lam, mu = found
    assert mu == Fraction(4 - 2) - t  # d - 2 - t on the worst label
    moved = apply_frame(c, frame)
    assert mu_min(moved, lam, t)[0] == mu


def test_destabilizer_search_budget_exhausts():
    c = make_witness(WitnessKind.P2_NONFLEX, 4)
    assert destabilizer_search(c, Fraction(15, 8), budget=6) is None


def test_interval_claim_flex_family():
    d = 5
    lam = OneParamSubgroup(Surface.P2, (-5, 1, 4))
    excluded = {(0, 0, d), (0, 1, d - 1), (0, 2, d - 2)}
    exps = [e for e in all_exponents(Surface.P2, d) if e not in excluded]
    wall, edge = Fraction(4 * d - 9, 4), Fraction(d - 2)
    check = interval_mu_claim(
        Surface.P2, lam, [2], exps, ("open", wall, edge), strictness=">0"
    )
    assert check.passed
    eq = {(lb, e) for lb, e, _ in check.equalities}
    assert eq == {(2, (1, 0, d - 1)), (2, (0, 3, d - 3))}

    # negative control: at the wall itself the same claim fails with the
    # two equality monomials as counterexamples
    pointwise = interval_mu_claim(
        Surface.P2, lam, [2], exps, ("point", wall), strictness=">0"
    )
    assert not pointwise.passed
    bad = {e for _, e, _, _ in pointwise.counterexamples}
    assert bad == {(1, 0, d - 1), (0, 3, d - 3)}
    for _, _, _, v in pointwise.counterexamples:
        assert v == 0


def test_interval_claim_rejects_bad_specs():
    lam = OneParamSubgroup(Surface.P2, (-1, 0, 1))
    with pytest.raises(ValueError):
        interval_mu_claim(Surface.P2, lam, [2], [(1, 0, 2)], ("open", 2, 1))
    with pytest.raises(ValueError):
        interval_mu_claim(Surface.P2, lam, [2], [(1, 0, 2)], ("point", 1), "!=0")


def test_verdict_matrix_plane():
    wall, edge = Fraction(7, 4), Fraction(2)
    interior = Fraction(15, 8)
    expect = {
        (WitnessKind.P2_S, wall): "Unstable",
        (WitnessKind.P2_S, interior): "Unstable",
        (WitnessKind.P2_S, edge): "StrictlySemistable",
        (WitnessKind.P2_CUSPIDAL_X0, wall): "StrictlySemistable",
        (WitnessKind.P2_CUSPIDAL_X0, interior): "Unstable",
        (WitnessKind.P2_HYPERFLEX, wall): "Unstable",
        (WitnessKind.P2_FLEX, wall): "StrictlySemistable",
        (WitnessKind.P2_FLEX, interior): "Unstable",
        (WitnessKind.P2_FLEX, edge): "Unstable",
        (WitnessKind.P2_NONFLEX, wall): "Stable",
        (WitnessKind.P2_NONFLEX, interior): "Stable",
        (WitnessKind.P2_NONFLEX, edge): "StrictlySemistable",
    }
    for (kind, t), want in expect.items():
        v = stability_verdict(make_witness(kind, 4), t)
        assert v.status == want, f"{kind.value} at {t}: {v.status}"
        if want == "Unstable":
            assert v.certificate is not None and v.certificate["mu"] > 0
        if want == "StrictlySemistable":
            assert v.certificate is not None and v.certificate["mu"] == 0


def test_verdict_matrix_quadric():
    wall, edge = Fraction(5, 3), Fraction(2)
    interior = Fraction(11, 6)
    expect = {
        (WitnessKind.QUADRIC_S, wall): "Unstable",
        (WitnessKind.QUADRIC_S, interior): "Unstable",
        (WitnessKind.QUADRIC_S, edge): "StrictlySemistable",
        (WitnessKind.QUADRIC_X0, wall): "StrictlySemistable",
        (WitnessKind.QUADRIC_X0, interior): "Unstable",
        (WitnessKind.QUADRIC_RULING_TANGENT, interior): "Unstable",
    }
    for (kind, t), want in expect.items():
        v = stability_verdict(make_witness(kind, 3), t)
        assert v.status == want, f"{kind.value} at {t}: {v.status}"


def test_verdict_across_the_wall():
    c = make_witness(WitnessKind.QUADRIC_X0, 3)
    eps = Fraction(1, 100)
    below = stability_verdict(c, Fraction(5, 3) - eps)
    above = stability_verdict(c, Fraction(5, 3) + eps)
    assert below.status == "Unstable" and above.status == "Unstable"
    # opposite directions destabilize on the two sides
    wb = below.certificate["lambda"].weights
    wa = above.certificate["lambda"].weights
    assert wb == tuple(-w for w in wa)


def test_verdict_outside_range_and_bad_slope():
    c = make_witness(WitnessKind.P2_NONFLEX, 4)
    v = stability_verdict(c, Fraction(1, 2), budget=5)
    assert any("analyzed range" in n for n in v.notes)
    v0 = stability_verdict(c, 0)
    assert v0.status == "Unknown"


def test_verdict_undecided_membership():
    K = 10 ** 13
    hidden = _p2(
        3,
        {(2, 0, 1): 1, (1, 2, 0): -1, (1, 0, 2): K, (0, 2, 1): -K},
        (1, 1, 1),
    )
    v = stability_verdict(hidden, Fraction(7, 8), budget=10)
    assert v.undecided
    assert v.status == "Unknown"


def test_verdict_citations_present():
    v = stability_verdict(make_witness(WitnessKind.P2_NONFLEX, 4), Fraction(15, 8))
    assert v.citations == ["4.3-flex", "4.3-singular", "4.3-S"]
    v = stability_verdict(make_witness(WitnessKind.QUADRIC_X0, 3), Fraction(5, 3))
    assert v.citations == ["5.4-H01wall", "5.4-perturbed"]


def test_stabilizer_dimensions():
    cusp = make_witness(WitnessKind.P2_CUSPIDAL_X0, 4)
    dim, gen = stabilizer_dimension(cusp)
    assert dim == 1
    assert gen.weights == (4, 1, -5)

    qx0 = make_witness(WitnessKind.QUADRIC_X0, 3)
    dim, gen = stabilizer_dimension(qx0)
    assert dim == 1
    assert gen.literal_weights() == (-1, 1, -2, 2)

    generic = _p2(
        4,
        {(0, 1, 3): 1, (2, 0, 2): 1, (4, 0, 0): 1, (0, 4, 0): 1},
        (0, 0, 1),
    )
    assert stabilizer_dimension(generic) == (0, None)

    offcenter = _p2(3, {(1, 0, 2): 1, (0, 2, 1): -1}, (1, 1, 1))
    with pytest.raises(ValueError):
        stabilizer_dimension(offcenter)


def test_mu_term_matches_mu_min_on_support():
    c = make_witness(WitnessKind.QUADRIC_S, 3)
    lam = OneParamSubgroup(Surface.QUADRIC, (1, 1))
    t = Fraction(11, 6)
    value, (label, exp) = mu_min(c, lam, t)
    assert value == mu_term(Surface.QUADRIC, lam, t, label, exp)
    labels = [(l, m) for l in range(2) for m in range(2) if c.point[l] != 0 and c.point[2 + m] != 0]
    assert value == min(
        mu_term(Surface.QUADRIC, lam, t, lb, e)
        for lb in labels
        for e in [max(c.equation.terms, key=lambda e: sum(w * x for w, x in zip(lam.literal_weights(), e)))]
    )
